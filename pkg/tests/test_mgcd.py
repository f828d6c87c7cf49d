import random

import sympy
from hypothesis import given, strategies as st

from eulerchi import upoly
from eulerchi.fields import QQ, PrimeField, mpq
from eulerchi.groebner import exact_div
from eulerchi.mgcd import bareiss_det, gcd, principal_subresultants, squarefree_principal
from eulerchi.multipoly import PolyRing

X, Y, Z = sympy.symbols("x y z")


def to_sympy(f):
    return sympy.sympify(str(f).replace("^", "**"), locals={"x": X, "y": Y, "z": Z})


def rand_poly(R, rng, terms=4, deg=3):
    f = R.zero()
    while f.is_zero():
        for _ in range(rng.randint(1, terms)):
            e = [0] * R.nvars
            for _ in range(rng.randint(0, deg)):
                e[rng.randrange(R.nvars)] += 1
            f = f + R.monomial(tuple(e), rng.randint(-5, 5) or 1)
    return f


def same_up_to_unit(a, b):
    q = sympy.cancel(a / b)
    return q.is_number and q != 0


@given(st.integers(0, 10**6))
def test_gcd_matches_sympy(seed):
    rng = random.Random(seed)
    R = PolyRing(QQ, "xyz"[: rng.choice([2, 3])])
    common = rand_poly(R, rng, terms=3, deg=2)
    f = common * rand_poly(R, rng)
    g = common * rand_poly(R, rng)
    h = gcd(f, g)
    assert f.ring == h.ring
    assert same_up_to_unit(to_sympy(h), sympy.gcd(to_sympy(f), to_sympy(g)))


@given(st.integers(0, 10**6))
def test_gcd_mod_p_divides_both(seed):
    rng = random.Random(seed)
    R = PolyRing(PrimeField(7), "xy")
    common = rand_poly(R, rng, terms=2, deg=2)
    f = common * rand_poly(R, rng)
    g = common * rand_poly(R, rng)
    h = gcd(f, g)
    assert exact_div(f, h) * h == f and exact_div(g, h) * h == g
    # the planted factor divides the gcd
    assert gcd(h, common).total_degree() == common.total_degree()

def test_gcd_examples():
    R = PolyRing(QQ, "xy")
    assert gcd(R.parse("x^2-y^2"), R.parse("x^2+2*x*y+y^2")) == R.parse("x+y")
    assert gcd(R.parse("x"), R.parse("y")) == R.one()
    assert gcd(R.zero(), R.parse("2*x")) == R.parse("x")


def test_squarefree_principal():
    R = PolyRing(QQ, "xy")
    assert squarefree_principal(R.parse("(x-y)^2*(x+1)^3")) == R.parse("(x-y)*(x+1)")


@given(st.integers(0, 10**6))
def test_psc0_is_resultant(seed):
    rng = random.Random(seed)
    R = PolyRing(QQ, "xy")
    f = rand_poly(R, rng, terms=3, deg=3)
    g = rand_poly(R, rng, terms=3, deg=2)
    if f.degree_in(1) < 1 or g.degree_in(1) < 1:
        return
    if f.degree_in(1) < g.degree_in(1):
        f, g = g, f
    psc = principal_subresultants(f, g, 1)
    res = sympy.resultant(to_sympy(f), to_sympy(g), Y)
    assert sympy.expand(to_sympy(psc[0]) - res) == 0


def test_bareiss_det():
    R = PolyRing(QQ, "xy")
    M = [[R.parse("x"), R.parse("y")], [R.parse("1"), R.parse("x")]]
    assert bareiss_det(M) == R.parse("x^2-y")


# -- univariate helpers ---------------------------------------------------------

def test_upoly_squarefree_q():
    # (x-1)^2 (x+2), low degree first
    a = [mpq(2), mpq(-3), mpq(0), mpq(1)]
    assert upoly.squarefree_part(a, QQ) == [-2, 1, 1]
    assert upoly.distinct_root_count(a, QQ) == 2


def test_upoly_squarefree_char_p():
    F = PrimeField(3)
    # x^3 - 1 = (x - 1)^3 over F_3
    assert upoly.squarefree_part([2, 0, 0, 1], F) == [2, 1]
    # x^7 - x^4 = x^4 (x - 1)^3
    assert upoly.squarefree_part([0, 0, 0, 0, 2, 0, 0, 1], F) == [0, 2, 1]


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=4), st.lists(st.integers(1, 3), min_size=4, max_size=4))
def test_upoly_distinct_roots(roots, mults):
    a = [mpq(1)]
    for r, m in zip(roots, mults):
        for _ in range(m):
            a = upoly.mul(a, [mpq(-r), mpq(1)], QQ)
    assert upoly.distinct_root_count(a, QQ) == len(set(roots))
