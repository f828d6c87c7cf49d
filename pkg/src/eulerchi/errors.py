"""Exception hierarchy.

Every error raised by the package derives from :class:`EulerChiError` and
carries an ``exit_code`` used by the command line front end:

* ``2`` -- input and usage errors (bad files, bad arguments, violated
  preconditions of a library call);
* ``3`` -- engine errors, i.e. the computation itself could not be carried
  out (no general position found, degenerate branch locus, inseparability in
  positive characteristic, ...).
"""


class EulerChiError(Exception):
    exit_code = 2


class InputError(EulerChiError):
    exit_code = 2


class EngineError(EulerChiError):
    exit_code = 3


# -- fields ---------------------------------------------------------------

class DivisionByZero(InputError, ZeroDivisionError):
    pass


class FieldMismatch(InputError):
    pass


class NotPrime(InputError):
    pass


class NotADivisor(InputError):
    pass


class BadFieldSpec(InputError):
    pass


# -- polynomials ----------------------------------------------------------

class AmbientMismatch(InputError):
    pass


class UnknownVariable(InputError):
    pass


class VariableClash(InputError):
    pass


class SingularMatrix(InputError):
    pass


class ZeroPolynomial(InputError):
    pass


# -- ideals ---------------------------------------------------------------

class NotHomogeneous(InputError):
    pass


class NotZeroDimensional(InputError):
    pass


class UnitIdeal(InputError):
    pass


# -- parsing / cli --------------------------------------------------------

class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class UndeclaredVariable(ParseError):
    pass


class InvalidArrangement(InputError):
    pass


class SequenceTooShort(InputError):
    pass


class InvalidGrid(InputError):
    pass


# -- engine ---------------------------------------------------------------

class RetriesExhausted(EngineError):
    pass


class DegenerateBranchLocus(EngineError):
    pass


class InseparableEliminant(EngineError):
    pass


class ConeIdentityViolation(EngineError):
    pass


class BudgetExceeded(EngineError):
    pass


def exit_code_for(exc):
    """Exit code for an exception escaping a CLI run (1 for foreign errors)."""
    if isinstance(exc, EulerChiError):
        return exc.exit_code
    return 1
