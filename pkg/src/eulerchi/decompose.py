"""Radicals, equidimensional decomposition and zero-dimensional point counts.

No factorisation is used anywhere: radicals come from squarefree parts of
eliminants (Seidenberg) and, in positive dimension, from the same
construction over the function field of a maximal independent set.
Components are equidimensional radical ideals, not primes.
"""

from . import errors, upoly
from .groebner import (
    GREVLEX, Ideal, _series_data, dimension, exact_div, hilbert_numerator,
    independent_sets, intersect, quotient, saturate,
)
from .mgcd import gcd as mgcd, gcd_list
from .multipoly import Poly, PolyRing, block


# -- zero-dimensional -------------------------------------------------------

def _standard_count(I):
    """dim_k k[x]/I for a zero-dimensional I (0 for the unit ideal)."""
    n = I.ring.nvars
    if I.gb().is_unit():
        return 0
    q, D = _series_data(hilbert_numerator(I.gb().leading_exps()), n)
    if D != 0:
        raise errors.NotZeroDimensional("ideal is not zero-dimensional")
    return sum(q)


def minimal_polynomial(I, v):
    """Monic generator of I cap k[v] for zero-dimensional I, as a coefficient list.

    Found as the first linear dependency among normal forms of 1, v, v^2, ...
    """
    ring = I.ring
    field = ring.field
    G = I.gb()
    i = ring.index(v)
    x = ring.gen(i)
    pivots = {}      # pivot monomial -> (vector, combination)
    cur = ring.one()
    k = 0
    while True:
        vec = dict(G.normal_form(cur).terms)
        comb = {k: field.one}
        # eliminate against known pivots
        changed = True
        while changed:
            changed = False
            for m in list(vec):
                if m in pivots and m in vec:
                    pv, pc = pivots[m]
                    c = vec[m]
                    for mm, a in pv.items():
                        nv = field.sub(vec.get(mm, field.zero), field.mul(c, a))
                        if nv:
                            vec[mm] = nv
                        else:
                            vec.pop(mm, None)
                    for kk, a in pc.items():
                        nv = field.sub(comb.get(kk, field.zero), field.mul(c, a))
                        if nv:
                            comb[kk] = nv
                        else:
                            comb.pop(kk, None)
                    changed = True
        if not vec:
            deg = max(comb)
            coeffs = [comb.get(j, field.zero) for j in range(deg + 1)]
            return upoly.monic(coeffs, field)
        m = min(vec, key=GREVLEX.key)
        inv = field.inv(vec[m])
        vec = {mm: field.mul(a, inv) for mm, a in vec.items()}
        comb = {kk: field.mul(a, inv) for kk, a in comb.items()}
        # keep pivot rows reduced with respect to the new pivot
        for pm, (pv, pc) in list(pivots.items()):
            c = pv.get(m)
            if c:
                for mm, a in vec.items():
                    nv = field.sub(pv.get(mm, field.zero), field.mul(c, a))
                    if nv:
                        pv[mm] = nv
                    else:
                        pv.pop(mm, None)
                for kk, a in comb.items():
                    nv = field.sub(pc.get(kk, field.zero), field.mul(c, a))
                    if nv:
                        pc[kk] = nv
                    else:
                        pc.pop(kk, None)
        pivots[m] = (vec, comb)
        k += 1
        cur = G.normal_form(cur * x)


def radical_zero_dim(I):
    """Seidenberg: I plus the squarefree parts of all univariate eliminants."""
    ring = I.ring
    if I.is_unit():
        return I
    if dimension(I) != 0:
        raise errors.NotZeroDimensional("radical_zero_dim needs a zero-dimensional ideal")
    field = ring.field
    extra = []
    for i in range(ring.nvars):
        mp = minimal_polynomial(I, i)
        sf = upoly.squarefree_part(mp, field)
        if len(sf) < len(mp):
            extra.append(Poly.from_univariate(sf, ring, i))
    if not extra:
        return I
    return Ideal(ring, I.reduced_gens() + extra)


def standard_monomials(G):
    """Monomials outside the leading-term ideal of a zero-dimensional basis."""
    leads = G.leading_exps()
    n = G.ring.nvars
    zero = (0,) * n
    out = []
    todo = [zero]
    seen = {zero}
    while todo:
        e = todo.pop()
        if any(all(a <= b for a, b in zip(L, e)) for L in leads):
            continue
        out.append(e)
        for i in range(n):
            nxt = e[:i] + (e[i] + 1,) + e[i + 1:]
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    out.sort(key=GREVLEX.key, reverse=True)
    return out


def count_points_zero_dim(I):
    """Number of distinct points of V(I) over an algebraic closure.

    The Seidenberg elements q_i span the nilradical of A = k[x]/I as an
    ideal, so the count is dim A minus the rank of {q_i * b} over the
    standard monomials b.  No basis of the radical is needed.
    """
    from .groebner import _Echelon
    if I.is_unit():
        return 0
    if dimension(I) > 0:
        raise errors.NotZeroDimensional("count_points_zero_dim needs a zero-dimensional ideal")
    ring = I.ring
    field = ring.field
    G = I.gb()
    basis = standard_monomials(G)
    extra = []
    for i in range(ring.nvars):
        mp = minimal_polynomial(I, i)
        sf = upoly.squarefree_part(mp, field)
        if len(sf) < len(mp):
            extra.append(G.normal_form(Poly.from_univariate(sf, ring, i)))
    if not extra:
        return len(basis)
    ech = _Echelon(field)
    gens = ring.gens()
    for q in extra:
        vecs = {}
        for b in basis:       # increasing, so b / x_k comes first
            if not any(b):
                v = q
            else:
                k = next(k for k in range(ring.nvars) if b[k])
                prev = b[:k] + (b[k] - 1,) + b[k + 1:]
                v = G.normal_form(vecs[prev] * gens[k])
            vecs[b] = v
            vec = {GREVLEX.key(e): c for e, c in v.terms.items()}
            if vec and not ech.reduce(vec, {}):
                ech.insert(vec, {})
    return len(basis) - len(ech.rows)


# -- positive dimension -----------------------------------------------------

def pth_root_poly(f):
    """Inverse Frobenius of a polynomial in p-th powers over a finite field."""
    ring = f.ring
    field = ring.field
    p = field.characteristic
    k = getattr(field, "degree", 1)
    out = {}
    for e, c in f.terms.items():
        if any(x % p for x in e):
            raise errors.InseparableEliminant("polynomial is not a p-th power")
        out[tuple(x // p for x in e)] = field.pow(c, p ** (k - 1)) if k > 1 else c
    return Poly(ring, out)


def squarefree_poly(f):
    """Squarefree part of a multivariate polynomial over Q or a finite field."""
    from .mgcd import _normalize
    if f.is_constant():
        return _normalize(f)
    if len(f.support_vars()) == 1:
        v = f.support_vars()[0]
        sf = upoly.squarefree_part(f.to_univariate(v), f.ring.field)
        return _normalize(Poly.from_univariate(sf, f.ring, v))
    partials = [d for d in (f.diff(i) for i in f.support_vars()) if d]
    if not partials:
        return squarefree_poly(pth_root_poly(f))
    g = gcd_list([f] + partials)
    w = _normalize(exact_div(f, g))
    if f.ring.field.characteristic == 0:
        return w
    while True:
        h = mgcd(g, w)
        if h.is_constant():
            break
        g = exact_div(g, h)
    if g.is_constant():
        return w
    return _normalize(w * squarefree_poly(pth_root_poly(g)))


def _squarefree_over_params(f, y):
    """Squarefree part of f over k(u)[y], u = all other variables of f.

    Returns the primitive part with respect to y.  In characteristic p a
    factor inseparable over k(u) raises InseparableEliminant.
    """
    char = f.ring.field.characteristic
    d = f.diff(y)
    if not d:
        raise errors.InseparableEliminant("eliminant has zero derivative")
    g = mgcd(f, d)
    w = exact_div(f, g)
    # drop content in the parameters
    if char and g.degree_in(y) > 0:
        rest = g
        while True:
            h = mgcd(rest, w)
            if h.degree_in(y) <= 0:
                break
            rest = exact_div(rest, h)
        if rest.degree_in(y) > 0:
            raise errors.InseparableEliminant("eliminant has an inseparable factor")
    return _primitive_in(w, y)


def _primitive_in(f, y):
    from .mgcd import _content, _normalize
    i = f.ring.index(y)
    c = _content(f, i)
    if not c.is_constant():
        f = exact_div(f, c)
    return _normalize(f)


def _param_order(ring, u):
    """Variables reordered as (y block, u block) and the block order."""
    ys = [i for i in range(ring.nvars) if i not in u]
    names = [ring.vars[i] for i in ys] + [ring.vars[i] for i in u]
    return PolyRing(ring.field, names), block(len(ys)), len(ys)


def _lead_coeff_lcm(G, ny, ring_orig):
    """lcm of the leading coefficients (in k[u]) of a block(y, u) basis."""
    h = None
    big = G.ring
    for g in G.polys:
        ly = g.leading_exp(G.order)[:ny]
        coeff = Poly(big, {e: c for e, c in g.terms.items() if e[:ny] == ly})
        coeff = Poly(big, {(0,) * ny + e[ny:]: c for e, c in coeff.terms.items()})
        if coeff.is_constant():
            continue
        if h is None:
            h = coeff
        else:
            h = exact_div(h * coeff, mgcd(h, coeff))
    if h is None:
        return ring_orig.one()
    return h.embed(ring_orig)


def radical(I):
    """The radical of I."""
    ring = I.ring
    if I.is_zero() or I.is_unit():
        return I
    if len(I.gens) == 1:
        return Ideal(ring, [squarefree_poly(I.gens[0])])
    if len(I.reduced_gens()) == 1:
        return Ideal(ring, [squarefree_poly(I.reduced_gens()[0])])
    d = dimension(I)
    if d == 0:
        return radical_zero_dim(I)
    return _radical_positive(I, d)


def _radical_positive(I, d):
    ring = I.ring
    u = next(independent_sets(I, d))
    ys = [i for i in range(ring.nvars) if i not in u]
    extra = []
    for j in ys:
        p_j = _eliminant_over_params(I, u, j)
        q = _squarefree_over_params(p_j, ring.vars[j])
        if not I.contains(q):
            extra.append(q)
    big, order, ny = _param_order(ring, u)
    G0 = Ideal(big, [g.embed(big) for g in I.gens]).gb(order)
    h0 = _lead_coeff_lcm(G0, ny, ring)
    I1 = Ideal(ring, I.reduced_gens() + extra) if extra else I
    if extra:
        G1 = Ideal(big, [g.embed(big) for g in I1.gens]).gb(order)
        h1 = _lead_coeff_lcm(G1, ny, ring)
    else:
        h1 = h0
    top = saturate(I1, h1) if not h1.is_constant() else I1
    if h0.is_constant():
        return _reduced(top)
    rest = I + h0
    if rest.is_unit():
        return _reduced(top)
    low = radical(rest)
    return _reduced(intersect(top, low))


def _reduced(I):
    return Ideal(I.ring, I.reduced_gens())


def _eliminant_over_params(I, u, j):
    """An element of I cap k[u, y_j] of least positive y_j-degree."""
    ring = I.ring
    others = [i for i in range(ring.nvars) if i not in u and i != j]
    names = [ring.vars[i] for i in others] + [ring.vars[j]] + [ring.vars[i] for i in u]
    big = PolyRing(ring.field, names)
    # any element of I cap k[u, y_j] of positive y_j-degree will do, so
    # the cheaper elimination order is enough
    order = block(len(others)) if others else GREVLEX
    G = Ideal(big, [g.embed(big) for g in I.gens]).gb(order)
    no = len(others)
    best = None
    for g in G.polys:
        if any(e[:no] != (0,) * no for e in g.terms):
            continue
        dy = max(e[no] for e in g.terms)
        if dy == 0:
            continue
        if best is None or dy < best[0]:
            best = (dy, g)
    if best is None:
        raise errors.EngineError("no eliminant found for a dependent variable")
    return best[1].embed(ring)


# -- equidimensional decomposition ------------------------------------------

def _truly_independent(R, u):
    ring = R.ring
    big, order, ny = _param_order(ring, u)
    G = Ideal(big, [g.embed(big) for g in R.gens]).gb(order)
    for g in G.polys:
        if all(e[:ny] == (0,) * ny for e in g.terms):
            return None
    return G, ny


def components(I):
    """Equidimensional radical components, by decreasing dimension."""
    if I.is_unit():
        raise errors.UnitIdeal("the unit ideal has no components")
    R = radical(I)
    out = _equidim(R)
    out.sort(key=lambda C: (-dimension(C), C.canonical_text()))
    return out


def _equidim(R):
    from itertools import combinations
    ring = R.ring
    if R.is_zero():
        return [R]
    d = dimension(R)
    if d <= 0 or len(R.reduced_gens()) == 1:
        return [R]
    contractions = []
    for u in combinations(range(ring.nvars), d):
        data = _truly_independent(R, u)
        if data is None:
            continue
        G, ny = data
        h = _lead_coeff_lcm(G, ny, ring)
        if h.is_constant():
            return [R]
        contractions.append(saturate(R, h))
    E = contractions[0]
    for C in contractions[1:]:
        if E.contains_ideal(C):
            E = C
        elif not C.contains_ideal(E):
            E = intersect(E, C)
    E = _reduced(E)
    if E == R:
        return [R]
    lower = _reduced(quotient(R, E))
    if lower.is_unit():
        return [E]
    return [E] + _equidim(lower)
