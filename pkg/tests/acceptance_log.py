"""Pass/fail lines collected by the acceptance suite, printed at the end of the run."""

ACCEPTANCE = []


def record(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE.append(line)
    print(line)
    return ok
