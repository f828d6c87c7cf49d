import random

import pytest
import sympy
from hypothesis import given, strategies as st

from eulerchi import errors
from eulerchi.fields import QQ, PrimeField, mpq
from eulerchi.groebner import (HilbertPoly, Ideal, degree, dimension, eliminate, hilbert_polynomial,
                               homogenize_ideal, intersect, normal_form, quotient, radical_membership,
                               saturate)
from eulerchi.multipoly import GREVLEX, LEX, PolyRing

import kernel_suites
from corpus import case_ideal, ideal, ring


def polys(R, *texts):
    return [R.parse(t) for t in texts]


def basis_set(G):
    return {str(g) for g in G.polys}


# -- examples -------------------------------------------------------------------------

def test_normal_form_examples():
    R = ring("xy")
    G = Ideal(R, polys(R, "x")).gb()
    assert normal_form(R.parse("x^2"), G).is_zero()
    assert normal_form(R.parse("y"), G) == R.parse("y")
    G2 = Ideal(R, polys(R, "x^2+y^2-1", "y")).gb()
    assert normal_form(R.parse("x^2+y^2-1"), G2).is_zero()


def test_buchberger_examples():
    R = ring("xy")
    assert Ideal(R, polys(R, "x^2", "x")).gb().polys == [R.parse("x")]
    G = Ideal(R, polys(R, "x^2+y^2-1", "y")).gb()
    assert set(G.polys) == set(polys(R, "y", "x^2-1"))
    U = Ideal(R, [R.one()]).gb()
    assert U.is_unit() and U.polys == [R.one()]


def test_radical_membership_examples():
    R = ring("xy")
    assert radical_membership(R.parse("x"), Ideal(R, polys(R, "x^2")))
    assert not radical_membership(R.parse("y"), Ideal(R, polys(R, "x")))
    assert radical_membership(R.parse("x+y"), Ideal(R, polys(R, "(x+y)^3", "x-y")))


def test_eliminate_conic_with_line():
    I = ideal("xy", ["x^2+y^2-1", "y"])
    E = eliminate(I, ["x"])
    assert E.ring.vars == ("x",)
    assert E.reduced_gens() == [E.ring.parse("x^2-1")]
    assert radical_membership(E.ring.parse("x^2-1"), E)
    assert not radical_membership(E.ring.parse("x-1"), E)


def test_eliminate_twisted_cubic():
    I = ideal("xyz", ["y-x^2", "z-x^3"])
    for order in (None, LEX):
        E = eliminate(I, ["y", "z"], order)
        assert E.contains(E.ring.parse("y^3-z^2"))


def test_eliminate_to_zero():
    E = eliminate(ideal("xy", ["x"]), ["y"])
    assert E.is_zero()


def test_intersect_examples():
    R = ring("xy")
    X, Y = Ideal(R, polys(R, "x")), Ideal(R, polys(R, "y"))
    assert intersect(X, Y) == Ideal(R, polys(R, "x*y"))
    assert intersect(X, X) == X
    A, B = Ideal(R, polys(R, "x^2+y^2-1")), Ideal(R, polys(R, "x^2+y^2"))
    assert intersect(A, B) == Ideal(R, polys(R, "(x^2+y^2-1)*(x^2+y^2)"))
    # the general path, not the principal shortcut
    C = Ideal(R, polys(R, "x", "y-1"))
    D = Ideal(R, polys(R, "x-1", "y"))
    K = intersect(C, D)
    assert all(C.contains(k) and D.contains(k) for k in K.gens)
    assert K.contains(R.parse("x*(x-1)")) and K.contains(R.parse("x+y-1"))


def test_saturate_and_quotient_examples():
    R = ring("xy")
    assert saturate(Ideal(R, polys(R, "x*y")), R.parse("y")) == Ideal(R, polys(R, "x"))
    assert saturate(Ideal(R, polys(R, "x^2")), R.parse("x")).is_unit()
    R3 = ring("xyz")
    Q = quotient(Ideal(R3, polys(R3, "x*y", "x*z")), Ideal(R3, polys(R3, "x")))
    assert Q == Ideal(R3, polys(R3, "y", "z"))
    with pytest.raises(errors.ZeroPolynomial):
        saturate(Ideal(R, polys(R, "x")), R.zero())


def test_homogenize_ideal_examples():
    H = homogenize_ideal(ideal("xy", ["x^2+y^2-1"]), "x0")
    assert H == Ideal(H.ring, [H.ring.parse("x^2+y^2-x0^2")])
    H2 = homogenize_ideal(ideal("xy", ["x*y"]), "x0")
    assert not any(g.degree_in("x0") for g in H2.gens)
    H3 = homogenize_ideal(ideal("xy", ["y-x^2", "y"]), "x0")
    assert H3.contains(H3.ring.parse("x^2")) and H3.contains(H3.ring.parse("y"))
    naive = Ideal(H3.ring, [H3.ring.parse("x0*y-x^2"), H3.ring.parse("y")])
    assert naive.contains(H3.ring.parse("x^2"))


def test_dimension_examples():
    assert dimension(Ideal(ring("xyz"), [])) == 3
    assert dimension(ideal("xy", ["x^2+y^2-1"])) == 1
    assert dimension(ideal("xy", ["x^2-1", "y^3-y"])) == 0
    assert dimension(ideal("xy", ["1"])) == -1


def test_hilbert_examples():
    P0 = hilbert_polynomial(Ideal(ring(["x0", "x1", "x2"]), []))
    assert P0 == HilbertPoly([1, mpq(3, 2), mpq(1, 2)])  # (t+2)(t+1)/2
    cone = ideal("xyz", ["x^2+y^2+z^2"])
    assert hilbert_polynomial(cone) == HilbertPoly([1, 2])
    # both conics homogenized in k[x, y, z]
    assert hilbert_polynomial(ideal("xyz", ["x^2+y^2"])) == HilbertPoly([1, 2])
    assert hilbert_polynomial(homogenize_ideal(ideal("xy", ["x^2+y^2-1"]), "z")) == HilbertPoly([1, 2])
    # in k[x, y] alone, x^2 + y^2 is two points of P^1
    assert hilbert_polynomial(ideal("xy", ["x^2+y^2"])) == HilbertPoly([2])
    assert degree(cone) == 2
    assert degree(case_ideal("fermat_cubic")) == 3
    with pytest.raises(errors.NotHomogeneous):
        hilbert_polynomial(ideal("xy", ["x^2+y^2-1"]))


def test_hilbert_against_monomial_count():
    I = ideal("xyz", ["x^2*y", "y*z^3", "x*z"])
    H = hilbert_polynomial(I)
    G = I.gb()
    for t in range(6, 10):
        monos = [e for e in _monomials(3, t) if not any(all(a >= b for a, b in zip(e, l))
                                                         for l in G.leading_exps())]
        assert H(t) == len(monos)


def _monomials(n, t):
    if n == 1:
        yield (t,)
        return
    for i in range(t + 1):
        for rest in _monomials(n - 1, t - i):
            yield (i,) + rest


def test_groebner_cache_and_equality():
    R = ring("xy")
    a = Ideal(R, polys(R, "x^2-y", "x*y-1"))
    b = Ideal(R, polys(R, "2*x*y-2", "x^2-y", "x^3-x*y"))
    assert a == b and hash(a) == hash(b)


# -- invariants ------------------------------------------------------------------------------

def test_dimension_invariant_under_linear_change():
    A = [[1, 2, 0], [0, 1, -1], [3, 0, 1]]
    for name in ("sphere", "intersection", "umbrella"):
        I = case_ideal(name)
        J = Ideal(I.ring, [g.apply_linear(A) for g in I.gens])
        assert dimension(J) == dimension(I)


def test_degree_invariant_under_linear_change():
    A = [[1, 1, 0], [0, 1, 2], [1, 0, 1]]
    for name in ("fermat_cubic", "sphere", "umbrella", "union"):
        I = case_ideal(name)
        J = Ideal(I.ring, [g.apply_linear(A) for g in I.gens])
        assert degree(J) == degree(I)


def _to_sympy(f, syms):
    return sum(sympy.Rational(int(mpq(c).numerator), int(mpq(c).denominator))
               * sympy.Mul(*[s ** k for s, k in zip(syms, e)]) for e, c in f.terms.items())


@pytest.mark.parametrize("order,sorder", [(GREVLEX, "grevlex"), (LEX, "lex")])
@given(seed=st.integers(0, 10 ** 9))
def test_reduced_basis_matches_sympy(order, sorder, seed):
    rng = random.Random(seed)
    R = PolyRing(QQ, ["x", "y", "z"][: rng.choice([2, 3])])
    gens = [kernel_suites._poly(R, rng, terms=3, deg=2) for _ in range(rng.randint(1, 3))]
    syms = sympy.symbols(R.vars)
    G = Ideal(R, gens).gb(order)
    want = sympy.groebner([_to_sympy(g, syms) for g in gens], *syms, order=sorder, domain="QQ")
    ours = [sympy.Poly(_to_sympy(g, syms), *syms, domain="QQ") for g in G.polys]
    theirs = [sympy.Poly(g, *syms, domain="QQ") for g in want.exprs]
    theirs = [p.quo_ground(p.LC(order=sorder)) for p in theirs]
    assert sorted(map(str, ours)) == sorted(map(str, theirs))


@given(seed=st.integers(0, 10 ** 9))
def test_basis_unchanged_by_generator_permutation_and_scaling(seed):
    rng = random.Random(seed)
    R = PolyRing(PrimeField(31), ["x", "y", "z"])
    gens = [kernel_suites._poly(R, rng) for _ in range(3)]
    shuffled = [g.scale(rng.randint(1, 30)) for g in gens]
    rng.shuffle(shuffled)
    assert Ideal(R, gens).gb().polys == Ideal(R, shuffled).gb().polys


def test_kernel_suites_small():
    for name, suite in kernel_suites.SUITES.items():
        assert suite(100, seed=42) == [], name
