"""Seeded randomized suites for the exact kernel.

Each suite draws ``n`` cases from its own seeded generator and returns the
list of failing case descriptions (empty on success).  They are run at small
size by the module tests and at full size by the acceptance suite.
"""

import itertools
import random

from eulerchi.decompose import count_points_zero_dim, radical
from eulerchi.fields import QQ, PrimeField, build_extension, mpq
from eulerchi.groebner import Ideal, dimension, eliminate, intersect
from eulerchi.multipoly import GREVLEX, PolyRing

PRIMES = [2, 3, 5, 7, 11, 13, 31, 101]


def _field(rng, allow_q=True):
    if allow_q and rng.random() < 0.4:
        return QQ
    return PrimeField(rng.choice(PRIMES[2:]))


def _poly(R, rng, terms=3, deg=2, coeff=4):
    f = R.zero()
    while f.is_zero():
        for _ in range(rng.randint(1, terms)):
            e = [0] * R.nvars
            for _ in range(rng.randint(0, deg)):
                e[rng.randrange(R.nvars)] += 1
            f = f + R.monomial(tuple(e), rng.randint(-coeff, coeff) or 1)
    return f


def _ring(rng, nvars, allow_q=True):
    return PolyRing(_field(rng, allow_q), "xyz"[:nvars])


# -- fields ------------------------------------------------------------------------

def field_axioms(n=1000, seed=1):
    rng = random.Random(seed)
    fields = [QQ, PrimeField(2), PrimeField(13), PrimeField(10007),
              build_extension(5, 2, 0), build_extension(2, 4, 1), build_extension(3, 3, 2)]

    def sample(F):
        if F is QQ:
            return mpq(rng.randint(-99, 99), rng.randint(1, 30))
        if isinstance(F, PrimeField):
            return rng.randrange(F.p)
        return F.random_element(rng)

    bad = []
    for i in range(n):
        F = fields[i % len(fields)]
        a, b, c = sample(F), sample(F), sample(F)
        ok = (F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
              and F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
              and F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
              and F.add(a, F.neg(a)) == F.zero)
        if ok and not F.is_zero(a):
            ok = F.mul(a, F.inv(a)) == F.one
        if not ok:
            bad.append((F.spec, a, b, c))
    return bad


# -- Groebner bases ------------------------------------------------------------------

def _spoly(f, g, order=GREVLEX):
    ef, eg = f.leading_exp(order), g.leading_exp(order)
    lcm = tuple(max(a, b) for a, b in zip(ef, eg))
    R = f.ring
    mf = R.monomial(tuple(a - b for a, b in zip(lcm, ef)))
    mg = R.monomial(tuple(a - b for a, b in zip(lcm, eg)))
    return mf * f.scale(R.field.inv(f.leading_coeff(order))) - mg * g.scale(R.field.inv(g.leading_coeff(order)))


def gb_spolys(n=1000, seed=2):
    rng = random.Random(seed)
    bad = []
    for i in range(n):
        R = _ring(rng, rng.choice([2, 2, 3]))
        gens = [_poly(R, rng, terms=4, deg=3) for _ in range(rng.randint(1, 3))]
        I = Ideal(R, gens)
        G = I.gb()
        ok = all(G.normal_form(g).is_zero() for g in gens)
        for f, g in itertools.combinations(G.polys, 2):
            if not G.normal_form(_spoly(f, g)).is_zero():
                ok = False
                break
        if not ok:
            bad.append((R.field.spec, [str(g) for g in gens]))
    return bad


def eliminate_intersect(n=1000, seed=3):
    rng = random.Random(seed)
    bad = []
    for i in range(n):
        R = _ring(rng, 2 if i % 2 else 3)
        if i % 2:
            I = Ideal(R, [_poly(R, rng) for _ in range(rng.randint(1, 2))])
            J = Ideal(R, [_poly(R, rng) for _ in range(rng.randint(1, 2))])
            K = intersect(I, J)
            ok = all(I.contains(k) and J.contains(k) for k in K.gens)
            ok = ok and all(K.contains(f * g) for f in I.gens for g in J.gens)
            if not ok:
                bad.append(("intersect", R.field.spec, [str(g) for g in I.gens], [str(g) for g in J.gens]))
        else:
            gens = [_poly(R, rng) for _ in range(rng.randint(1, 2))]
            # one generator free of x, which must survive elimination of x
            sub = PolyRing(R.field, R.vars[1:])
            free = _poly(sub, rng)
            I = Ideal(R, gens + [free.embed(R)])
            E = eliminate(I, R.vars[1:])
            ok = all(I.contains(e.embed(R)) for e in E.gens)
            ok = ok and E.contains(free.embed(E.ring))
            if not ok:
                bad.append(("eliminate", R.field.spec, [str(g) for g in I.gens]))
    return bad


# -- radicals and point counts -----------------------------------------------------------

def radical_idempotence(n=1000, seed=4):
    rng = random.Random(seed)
    bad = []
    for i in range(n):
        R = _ring(rng, 2)
        a = _poly(R, rng, terms=2, deg=1)
        b = _poly(R, rng, terms=3, deg=2)
        gens = [a ** rng.randint(1, 3) * b, _poly(R, rng, terms=2, deg=2) ** rng.randint(1, 2)]
        I = Ideal(R, gens[: rng.randint(1, 2)])
        if I.is_unit():
            continue
        r1 = radical(I)
        r2 = radical(r1)
        ok = r1 == r2 and all(r1.contains(g) for g in I.gens)
        if not ok:
            bad.append((R.field.spec, [str(g) for g in I.gens]))
    return bad


def count_points_brute_force(n=1000, seed=5):
    """Ideals whose zeros all lie in F_p^k, so F_p-enumeration sees every point."""
    rng = random.Random(seed)
    bad = []
    for i in range(n):
        p = rng.choice([5, 7, 11, 13])
        k = rng.choice([1, 2, 2, 3])
        R = PolyRing(PrimeField(p), "xyz"[:k])
        gens = []
        for v in range(k):
            roots = rng.sample(range(p), rng.randint(1, 3))
            f = R.one()
            for r in roots:
                f = f * (R.gen(v) - r)
            gens.append(f ** rng.choice([1, 1, 2]))
        gens.extend(_poly(R, rng) for _ in range(rng.randint(0, 2)))
        I = Ideal(R, gens)
        if I.is_unit():
            want = 0
        else:
            want = sum(1 for pt in itertools.product(range(p), repeat=k)
                       if all(g.evaluate(pt) == 0 for g in gens))
        got = 0 if I.is_unit() else count_points_zero_dim(I)
        if got != want or (not I.is_unit() and dimension(I) != 0):
            bad.append((p, [str(g) for g in gens], got, want))
    return bad


SUITES = {
    "field axioms": field_axioms,
    "S-polynomials reduce to zero": gb_spolys,
    "eliminate/intersect membership": eliminate_intersect,
    "radical idempotence": radical_idempotence,
    "zero-dimensional point counts": count_points_brute_force,
}
