"""Multivariate polynomial gcd by recursive subresultant remainder sequences.

Polynomials are viewed as univariate in their last occurring variable with
coefficients in the remaining variables; contents are handled recursively.
"""

from math import gcd as igcd, isqrt, lcm

from gmpy2 import mpq

from . import errors
from .multipoly import GREVLEX, Poly


def _split(f, v):
    """Coefficients of f as a polynomial in variable index v: dict degree -> Poly."""
    ring = f.ring
    out = {}
    for e, c in f.terms.items():
        k = e[v]
        ne = e[:v] + (0,) + e[v + 1:]
        out.setdefault(k, {})[ne] = c
    return {k: Poly(ring, t) for k, t in out.items()}


def _join(coeffs, v, ring):
    terms = {}
    for k, c in coeffs.items():
        for e, a in c.terms.items():
            terms[e[:v] + (k,) + e[v + 1:]] = a
    return Poly(ring, terms)


def _main_var(f, g):
    used = set(f.support_vars()) | set(g.support_vars())
    return max(used) if used else None


def _normalize(f):
    if not f:
        return f
    return f.monic(GREVLEX)


def _content(f, v):
    c = None
    for k, a in sorted(_split(f, v).items()):
        c = a if c is None else gcd(c, a)
        if c.is_constant():
            return f.ring.one()
    return c if c is not None else f.ring.zero()


def _lc(coeffs):
    return coeffs[max(coeffs)]


def _prem(A, B, v):
    """Pseudo-remainder of A by B in variable v (dict form)."""
    db = max(B)
    lb = B[db]
    R = dict(A)
    da = max(R)
    delta = da - db + 1
    while R and max(R) >= db:
        dr = max(R)
        lr = R[dr]
        shift = dr - db
        # R = lb * R - lr * x^shift * B
        newR = {k: c * lb for k, c in R.items()}
        for k, c in B.items():
            t = newR.get(k + shift)
            prod = c * lr
            newR[k + shift] = -prod if t is None else t - prod
        R = {k: c for k, c in newR.items() if c}
        delta -= 1
    if delta > 0 and R:
        m = lb ** delta
        R = {k: c * m for k, c in R.items()}
    return R


def _icontent(f):
    g = 0
    for c in f.terms.values():
        g = igcd(g, int(c))
    return g


def _integral(f):
    """Scale a polynomial over Q to a primitive one with integer coefficients."""
    den = 1
    for c in f.terms.values():
        den = lcm(den, int(c.denominator))
    g = 0
    for c in f.terms.values():
        g = igcd(g, int(c.numerator * (den // c.denominator)))
    scale = mpq(den, g)
    return Poly(f.ring, {e: c * scale for e, c in f.terms.items()})


def _maxnorm(f):
    return max(abs(int(c)) for c in f.terms.values())


def _divides(h, f):
    from .groebner import exact_div
    try:
        exact_div(f, h)
    except errors.InputError:
        return False
    return True


def _heu(f, g, vs):
    """Heuristic gcd over Z: evaluate, recurse, lift from the xi-adic digits.

    Inputs and output have integer coefficients, and the output carries the
    integer content.  Returns None when the candidates fail trial division.
    """
    if not vs:
        return f.ring.const(igcd(int(f.constant_term()), int(g.constant_term())))
    v = vs[-1]
    if f.degree_in(v) <= 0 and g.degree_in(v) <= 0:
        return _heu(f, g, vs[:-1])
    cf, cg = _icontent(f), _icontent(g)
    c = igcd(cf, cg)
    f = f.scale(mpq(1, cf))
    g = g.scale(mpq(1, cg))
    nf, ng = _maxnorm(f), _maxnorm(g)
    bound = 2 * min(nf, ng) + 29
    xi = max(min(bound, 99 * isqrt(bound)), 2 * min(nf, ng) + 4)
    for _ in range(6):
        ff, gg = f.subs(v, xi), g.subs(v, xi)
        if ff and gg:
            h = _heu(ff, gg, vs[:-1])
            if h is not None:
                H = _lift(h, xi, v)
                if H:
                    H = H.scale(mpq(1, _icontent(H)))
                    if _divides(H, f) and _divides(H, g):
                        return H.scale(mpq(c))
        xi = 73794 * xi * isqrt(isqrt(xi)) // 27011
    return None


def _lift(h, xi, v):
    """Read the v-coefficients of a polynomial off its value at v = xi."""
    ring = h.ring
    half = xi // 2
    out = {}
    i = 0
    while h:
        digit = {}
        for e, c in h.terms.items():
            r = int(c) % xi
            if r > half:
                r -= xi
            if r:
                digit[e] = r
        for e, r in digit.items():
            out[e[:v] + (i,) + e[v + 1:]] = mpq(r)
        h = Poly(ring, {e: mpq(int(c) - digit.get(e, 0), 1) / xi
                        for e, c in h.terms.items() if int(c) != digit.get(e, 0)})
        i += 1
        if i > 10000:
            return None
    return Poly(ring, out)


def gcd(f, g):
    """Monic (grevlex) gcd of two polynomials of the same ring."""
    from .groebner import exact_div
    if not f:
        return _normalize(g)
    if not g:
        return _normalize(f)
    if f.is_constant() or g.is_constant():
        return f.ring.one()
    if f.ring.field.characteristic == 0:
        vs = sorted(set(f.support_vars()) | set(g.support_vars()))
        h = _heu(_integral(f), _integral(g), vs)
        if h is not None:
            return _normalize(h)
    v = _main_var(f, g)
    fv = f.degree_in(v)
    gv = g.degree_in(v)
    if fv == 0:
        return gcd(f, _content(g, v))
    if gv == 0:
        return gcd(_content(f, v), g)
    cf = _content(f, v)
    cg = _content(g, v)
    c = gcd(cf, cg)
    pf = exact_div(f, cf) if not cf.is_constant() else f
    pg = exact_div(g, cg) if not cg.is_constant() else g
    A, B = _split(pf, v), _split(pg, v)
    if max(A) < max(B):
        A, B = B, A
    one = f.ring.one()
    gg = one
    h = one
    while True:
        delta = max(A) - max(B)
        R = _prem(A, B, v)
        if not R:
            break
        if max(R) == 0:
            return _normalize(c)
        A = B
        div = gg * h ** delta
        B = {k: exact_div(a, div) for k, a in R.items()}
        gg = _lc(A)
        if delta == 0:
            pass
        elif delta == 1:
            h = gg
        else:
            h = exact_div(gg ** delta, h ** (delta - 1))
    r = _join(B, v, f.ring)
    cr = _content(r, v)
    if not cr.is_constant():
        r = exact_div(r, cr)
    return _normalize(r * c)


def gcd_list(polys):
    out = None
    for f in polys:
        out = f if out is None else gcd(out, f)
        if out is not None and out and out.is_constant():
            return out.ring.one()
    return _normalize(out) if out is not None else None


def squarefree_principal(f):
    """Squarefree part of f in characteristic 0: f / gcd(f, all partials)."""
    from .groebner import exact_div
    if f.is_constant():
        return _normalize(f)
    partials = [f.diff(i) for i in f.support_vars()]
    g = gcd_list([f] + [d for d in partials if d])
    return _normalize(exact_div(f, g))


def bareiss_det(M):
    """Determinant of a square matrix of polynomials, fraction free."""
    from .groebner import exact_div
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    ring = M[0][0].ring
    A = [list(r) for r in M]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if not A[k][k]:
            swap = next((r for r in range(k + 1, n) if A[r][k]), None)
            if swap is None:
                return ring.zero()
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        p = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * p - A[i][k] * A[k][j]
                A[i][j] = exact_div(num, prev) if not prev.is_constant() else num * _inv_const(prev)
            A[i][k] = ring.zero()
        prev = p
    d = A[n - 1][n - 1]
    return -d if sign < 0 else d


def _inv_const(c):
    f = c.ring.field
    return c.ring.const(f.inv(c.constant_term()))


def principal_subresultants(f, g, v):
    """psc_0, ..., psc_{deg g} of f and g as polynomials in variable index v.

    psc_j is the determinant of the Sylvester submatrix for degree j; it
    vanishes at a point exactly when the specialised gcd has degree > j,
    provided the leading coefficient of f does not vanish there.
    """
    m = f.degree_in(v)
    n = g.degree_in(v)
    fc = _split(f, v)
    gc = _split(g, v)
    zero = f.ring.zero()
    out = []
    for j in range(n + 1):
        size = m + n - 2 * j
        rows = []
        for s in range(n - j - 1, -1, -1):
            rows.append([fc.get(m + n - j - 1 - col - s, zero) for col in range(size)])
        for s in range(m - j - 1, -1, -1):
            rows.append([gc.get(m + n - j - 1 - col - s, zero) for col in range(size)])
        if j == n:
            # only the rows of g remain: psc_n = lc(g)^(m - n)
            out.append(gc[n] ** (m - n))
            continue
        out.append(bareiss_det(rows))
    return out
