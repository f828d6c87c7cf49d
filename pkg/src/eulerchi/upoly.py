"""Dense univariate polynomials over a field (coefficient lists, low degree first).

Used for base cases of the recursion (distinct-root counts), for squarefree
parts in Seidenberg's radical construction and for small helpers.
"""

from . import errors


def trim(a, field):
    a = list(a)
    while a and field.is_zero(a[-1]):
        a.pop()
    return a


def degree(a):
    return len(a) - 1


def add(a, b, field):
    n = max(len(a), len(b))
    z = field.zero
    out = [field.add(a[i] if i < len(a) else z, b[i] if i < len(b) else z) for i in range(n)]
    return trim(out, field)


def sub(a, b, field):
    n = max(len(a), len(b))
    z = field.zero
    out = [field.sub(a[i] if i < len(a) else z, b[i] if i < len(b) else z) for i in range(n)]
    return trim(out, field)


def scale(a, c, field):
    return trim([field.mul(x, c) for x in a], field)


def mul(a, b, field):
    if not a or not b:
        return []
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if field.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = field.add(out[i + j], field.mul(x, y))
    return trim(out, field)


def divmod_(a, b, field):
    b = trim(b, field)
    if not b:
        raise errors.DivisionByZero("polynomial division by zero")
    a = trim(a, field)
    db = len(b) - 1
    inv = field.inv(b[-1])
    if len(a) <= db:
        return [], a
    q = [field.zero] * (len(a) - db)
    r = list(a)
    for i in range(len(a) - 1, db - 1, -1):
        c = field.mul(r[i], inv)
        if field.is_zero(c):
            continue
        q[i - db] = c
        for j in range(db + 1):
            r[i - db + j] = field.sub(r[i - db + j], field.mul(c, b[j]))
    return trim(q, field), trim(r[:db], field)


def monic(a, field):
    a = trim(a, field)
    if not a:
        return a
    return scale(a, field.inv(a[-1]), field)


def gcd(a, b, field):
    a, b = trim(a, field), monic(b, field)
    while b:
        # monic remainders keep rational coefficients small
        a, b = b, monic(divmod_(a, b, field)[1], field)
    return monic(a, field)


def derivative(a, field):
    return trim([field.mul(field.convert(i), a[i]) for i in range(1, len(a))], field)


def pth_root(a, field):
    """Inverse Frobenius on a polynomial whose exponents are multiples of p."""
    p = field.characteristic
    k = getattr(field, "degree", 1)
    out = []
    for i in range(0, len(a), p):
        c = a[i]
        # c^(p^(k-1)) is the p-th root of c in F_{p^k}
        out.append(field.pow(c, p ** (k - 1)) if k > 1 else c)
    return trim(out, field)


def squarefree_part(a, field):
    """Product of the distinct monic irreducible factors of a.

    Works over Q and over the finite fields (which are perfect).
    """
    a = monic(a, field)
    if len(a) <= 2:
        return a
    d = derivative(a, field)
    if not d:
        # a is a p-th power
        return squarefree_part(pth_root(a, field), field)
    g = gcd(a, d, field)
    w = monic(divmod_(a, g, field)[0], field)
    if field.characteristic == 0:
        return w
    # w holds the factors of multiplicity prime to p; the rest of g is a p-th power
    while True:
        h = gcd(g, w, field)
        if len(h) <= 1:
            break
        g = divmod_(g, h, field)[0]
    if len(g) <= 1:
        return w
    return mul(w, squarefree_part(pth_root(g, field), field), field)


def distinct_root_count(a, field):
    """Number of distinct roots over an algebraic closure."""
    a = trim(a, field)
    if not a:
        raise errors.ZeroPolynomial("zero polynomial has infinitely many roots")
    return degree(squarefree_part(a, field))


def evaluate(a, x, field):
    acc = field.zero
    for c in reversed(a):
        acc = field.add(field.mul(acc, x), c)
    return acc


def powmod(base, e, m, field):
    result = [field.one]
    base = divmod_(base, m, field)[1]
    while e:
        if e & 1:
            result = divmod_(mul(result, base, field), m, field)[1]
        base = divmod_(mul(base, base, field), m, field)[1]
        e >>= 1
    return result
