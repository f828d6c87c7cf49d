"""Finite-field side: F_p(V), mixed-grid point counts and witness sequences.

A mixed grid for a prime p and a chain d_1 | d_2 | ... | d_n is the set of
points (a_1, ..., a_n) of F_{p^m}^n, m = d_n, with a_i in the subfield
F_{p^(d_i)}.  The counts are compared with the mixed evaluation

    a_0 + a_1 p^(d_1) + a_2 p^(d_1) p^(d_2) + ... + a_n p^(d_1) ... p^(d_n)

of F_p(V) = a_0 + a_1 L + ... + a_n L^n.
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from math import lcm, prod

from . import errors, upoly
from .engine import MotivePoly, ProjectionConfig, motive, motive_with_witnesses
from .fields import PrimeField, build_extension, in_subfield, is_prime
from .groebner import Ideal

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 2 ** 22


class MixedGrid:
    """p together with a divisibility chain of extension degrees."""

    __slots__ = ("p", "ds", "m")

    def __init__(self, p, ds):
        if not is_prime(p):
            raise errors.NotPrime(f"{p} is not prime")
        ds = tuple(int(d) for d in ds)
        if not ds or any(d < 1 for d in ds):
            raise errors.InvalidGrid("extension degrees must be positive")
        for a, b in zip(ds, ds[1:]):
            if b % a:
                raise errors.InvalidGrid(f"{ds} is not a divisibility chain")
        self.p = p
        self.ds = ds
        self.m = ds[-1]

    @property
    def size(self):
        return prod(self.p ** d for d in self.ds)

    def check_budget(self, budget=DEFAULT_BUDGET):
        if self.size > budget:
            raise errors.BudgetExceeded(
                f"grid {self.ds} over F_{self.p} has {self.size} points, budget {budget}")

    def to_dict(self):
        return {"p": self.p, "ds": list(self.ds)}

    def __eq__(self, other):
        return isinstance(other, MixedGrid) and (self.p, self.ds) == (other.p, other.ds)

    def __hash__(self):
        return hash((self.p, self.ds))

    def __repr__(self):
        return f"MixedGrid({self.p}, {self.ds})"


class CountReport:
    __slots__ = ("count", "grid", "predicted")

    def __init__(self, count, grid, predicted):
        self.count = count
        self.grid = grid
        self.predicted = predicted

    @property
    def match(self):
        return self.count == self.predicted

    def to_dict(self):
        return {"count": self.count, "predicted": self.predicted, "match": self.match,
                **self.grid.to_dict()}

    def __repr__(self):
        return f"CountReport(count={self.count}, predicted={self.predicted}, grid={self.grid!r})"


# -- reduction mod p ----------------------------------------------------------

def reduce_mod_p(I, p):
    """Image of a Q-ideal in F_p[x] after clearing denominators.

    Returns (ideal, reason); reason is None unless p divides a clearing
    denominator, in which case the prime is bad outright.
    """
    field = PrimeField(p)
    if I.ring.field.characteristic:
        if I.ring.field == field:
            return I, None
        raise errors.FieldMismatch(f"cannot reduce an ideal over {I.ring.field} mod {p}")
    ring = I.ring.with_field(field)
    gens, reason = [], None
    for g in I.gens:
        den = lcm(*(int(c.denominator) for c in g.terms.values())) if g.terms else 1
        if den % p == 0:
            reason = f"{p} divides the denominator {den}"
        terms = {}
        for e, c in g.terms.items():
            r = int(c.numerator) * (den // int(c.denominator)) % p
            if r:
                terms[e] = r
        gens.append(ring.from_dict(terms))
    return Ideal(ring, gens), reason


def _int_coeffs(coeffs):
    den = lcm(*(int(c.denominator) for c in coeffs)) if coeffs else 1
    return [int(c.numerator) * (den // int(c.denominator)) for c in coeffs]


def screen_prime(I, witnesses, p):
    """Reasons the reduction mod p may change F, or [] if none was found.

    Checked: all partial derivatives vanishing mod p, a change of the
    leading monomials of the reduced basis (an unlucky prime), univariate
    root counts whose squarefree parts stop being squarefree (or drop
    degree) mod p, and fibre counts of degree g covers with p | g, where
    the fibre derivative loses its leading term.
    """
    Fp = PrimeField(p)
    reasons = []
    Ip, reason = reduce_mod_p(I, p)
    if reason:
        reasons.append(reason)
    gens = [g for g in Ip.gens if g]
    if gens and all(not g.diff(v) for g in gens for v in range(Ip.ring.nvars)):
        reasons.append("inseparable: every partial derivative vanishes")
    if sorted(I.gb().leading_exps()) != sorted(Ip.gb().leading_exps()):
        reasons.append("unlucky prime: the leading monomials of the basis change")
    seen = set()
    for kind, data in witnesses:
        if (kind, data) in seen:
            continue
        seen.add((kind, data))
        if kind == "fibre-degree":
            if data % p == 0:
                reasons.append(f"{p} divides the fibre degree {data}")
        elif kind == "squarefree" and len(data) > 1:
            ints = _int_coeffs(data)
            if ints[-1] % p == 0:
                reasons.append(f"a root count polynomial drops degree mod {p}")
                continue
            a = upoly.trim([c % p for c in ints], Fp)
            if upoly.degree(upoly.gcd(a, upoly.derivative(a, Fp), Fp)) > 0:
                reasons.append(f"a root count polynomial acquires a repeated root mod {p}")
    return reasons


# -- F_p(V) and mixed evaluation ------------------------------------------------

def motive_mod_p(I, cfg=None):
    """F_p(V): the recursion run with F_p coefficients."""
    if not isinstance(I.ring.field, PrimeField):
        raise errors.InputError("motive_mod_p needs an ideal over a prime field")
    return motive(I, cfg)


def eval_mixed(f, p, ds):
    if not isinstance(f, MotivePoly):
        f = MotivePoly(f)
    coeffs = f.coeffs
    if len(ds) < len(coeffs) - 1:
        raise errors.SequenceTooShort(f"{len(ds)} degrees for a polynomial of degree {f.degree}")
    total, weight = 0, 1
    for i, a in enumerate(coeffs):
        if i:
            weight *= p ** ds[i - 1]
        total += a * weight
    return total


# -- enumeration ------------------------------------------------------------------

class _Tables:
    """F_{p^m} with elements coded as integers (base-p digits of the coefficients)."""

    __slots__ = ("p", "m", "q", "field", "exp", "log", "add")

    def __init__(self, p, m):
        self.p, self.m, self.q = p, m, p ** m
        self.field = PrimeField(p) if m == 1 else build_extension(p, m, 0)
        q = self.q
        exp = [1]
        # discrete log tables from the first primitive element
        for g in range(2, q):
            x = self._elem(g)
            exp, cur = [1], x
            while len(exp) < q - 1 and self._code(cur) != 1:
                exp.append(self._code(cur))
                cur = cur * x if m > 1 else cur * g % p
            if len(exp) == q - 1:
                break
        self.exp = exp + exp
        self.log = [0] * q
        for k, c in enumerate(exp):
            self.log[c] = k
        self.add = None
        if q <= 1024:
            self.add = [[self._digit_add(a, b) for b in range(q)] for a in range(q)]

    def _elem(self, c):
        if self.m == 1:
            return c
        digits = []
        for _ in range(self.m):
            digits.append(c % self.p)
            c //= self.p
        return self.field.from_coeffs(digits)

    def _code(self, e):
        if self.m == 1:
            return e
        return sum(c * self.p ** i for i, c in enumerate(e.coeffs))

    def _digit_add(self, a, b):
        p = self.p
        out, w = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * w
            a //= p
            b //= p
            w *= p
        return out

    def subfield(self, d):
        """Codes of the elements of F_{p^d}, selected by the Frobenius test."""
        if self.m == 1:
            return list(range(self.p))
        return [c for c in range(self.q) if in_subfield(self._elem(c), d)]

    def compile(self, poly):
        """poly as a list of (coefficient code, exponents)."""
        out = []
        for e, c in poly.terms.items():
            out.append((int(c) % self.p, e))
        return out


def _evaluator(tables, compiled):
    exp, lg, add, q1 = tables.exp, tables.log, tables.add, tables.q - 1
    plus = (lambda a, b: add[a][b]) if add is not None else tables._digit_add

    def value(point):
        total = 0
        for c, e in compiled:
            k = lg[c]
            zero = False
            for x, j in zip(point, e):
                if j:
                    if x == 0:
                        zero = True
                        break
                    k += lg[x] * j
            if zero:
                continue
            total = plus(total, exp[k % q1])
        return total
    return value


def enumerate_points(I, grid, budget=DEFAULT_BUDGET, workers=1):
    """Exhaustive count of the zeros of I on the mixed grid."""
    grid.check_budget(budget)
    if I.ring.field.characteristic == 0:
        I, _ = reduce_mod_p(I, grid.p)
    if not isinstance(I.ring.field, PrimeField) or I.ring.field.p != grid.p:
        raise errors.FieldMismatch(f"ideal over {I.ring.field} counted on a grid over F_{grid.p}")
    n = I.ring.nvars
    if len(grid.ds) != n:
        raise errors.InvalidGrid(f"{len(grid.ds)} degrees for {n} variables")
    tables = _Tables(grid.p, grid.m)
    coords = [tables.subfield(d) for d in grid.ds]
    evals = [_evaluator(tables, tables.compile(g)) for g in I.gens if g]

    def count(first):
        hits = 0
        for rest in itertools.product(*coords[1:]):
            point = (first,) + rest
            if all(f(point) == 0 for f in evals):
                hits += 1
        return hits

    if n == 0:
        return 0 if I.is_unit() else 1
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return sum(pool.map(count, coords[0]))
    return sum(count(a) for a in coords[0])


def enumerate_points_native(I, p, m):
    """Count over F_{p^m}^n with field elements and Poly.evaluate (slow, for checks)."""
    field = PrimeField(p) if m == 1 else build_extension(p, m, 0)
    if I.ring.field.characteristic == 0:
        I, _ = reduce_mod_p(I, p)
    ring = I.ring.with_field(field)
    gens = [ring.from_dict({e: field.convert(int(c)) for e, c in g.terms.items()})
            for g in I.gens if g]
    elems = list(field.elements())
    hits = 0
    for point in itertools.product(elems, repeat=ring.nvars):
        if all(field.is_zero(g.evaluate(point)) for g in gens):
            hits += 1
    return hits


def count_report(I, grid, F=None, cfg=None, budget=DEFAULT_BUDGET):
    if F is None:
        F = motive_mod_p(I, cfg)
    return CountReport(enumerate_points(I, grid, budget), grid, eval_mixed(F, grid.p, grid.ds))


def divisibility_chains(n, Dmax):
    """Chains d_1 | ... | d_n with d_n <= Dmax, in lexicographic order."""
    def grow(prefix):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        last = prefix[-1] if prefix else 1
        for d in range(last, Dmax + 1):
            if d % last == 0:
                yield from grow(prefix + [d])
    if Dmax < 1:
        return
    yield from grow([])


def find_witness_sequence(I, Dmax, cfg=None, budget=DEFAULT_BUDGET, F=None):
    """First grid (lexicographic, d_i <= Dmax) whose count matches F_p(V), else None."""
    if F is None:
        F = motive_mod_p(I, cfg)
    p = I.ring.field.p
    n = I.ring.nvars
    for ds in divisibility_chains(n, Dmax):
        if len(ds) < F.degree:
            continue
        grid = MixedGrid(p, ds)
        if grid.size > budget:
            continue
        if enumerate_points(I, grid, budget) == eval_mixed(F, p, ds):
            return grid
    return None


def moreover_spot_check(I, grid, F, budget=DEFAULT_BUDGET):
    """Double the last degree of a witness and compare again (None if over budget)."""
    bigger = MixedGrid(grid.p, grid.ds[:-1] + (2 * grid.ds[-1],))
    if bigger.size > budget:
        return None
    return CountReport(enumerate_points(I, bigger, budget), bigger, eval_mixed(F, grid.p, bigger.ds))


class PrimeVerdict:
    __slots__ = ("p", "motive", "match", "witness", "bad", "reasons", "moreover")

    def __init__(self, p, motive=None, match=None, witness=None, bad=False, reasons=(), moreover=None):
        self.p = p
        self.motive = motive
        self.match = match
        self.witness = witness
        self.bad = bad
        self.reasons = list(reasons)
        self.moreover = moreover

    def to_dict(self):
        return {
            "p": self.p,
            "motive": None if self.motive is None else self.motive.tolist(),
            "match": self.match,
            "witness": None if self.witness is None else list(self.witness.ds),
            "bad": self.bad,
            "reasons": self.reasons,
            "moreover": None if self.moreover is None else self.moreover.match,
        }

    def __repr__(self):
        return f"PrimeVerdict({self.to_dict()})"


def almost_all_primes_check(I, primes, Dmax=2, cfg=None, budget=DEFAULT_BUDGET):
    """Compare F over Q with F_p for each prime; failures become verdicts."""
    cfg = cfg or ProjectionConfig()
    primes = list(primes)
    if not primes:
        return []
    F, witnesses = motive_with_witnesses(I, cfg)
    out = []
    for p in primes:
        reasons = screen_prime(I, witnesses, p)
        if reasons:
            log.info("prime %d flagged: %s", p, "; ".join(reasons))
            out.append(PrimeVerdict(p, bad=True, reasons=reasons))
            continue
        Ip, _ = reduce_mod_p(I, p)
        try:
            Fp = motive_mod_p(Ip, cfg)
        except errors.EngineError as exc:
            out.append(PrimeVerdict(p, bad=True, reasons=[type(exc).__name__ + ": " + str(exc)]))
            continue
        witness = find_witness_sequence(Ip, Dmax, cfg, budget, Fp)
        more = moreover_spot_check(Ip, witness, Fp, budget) if witness else None
        out.append(PrimeVerdict(p, Fp, Fp == F, witness, moreover=more))
    return out


__all__ = [
    "MixedGrid", "CountReport", "PrimeVerdict", "DEFAULT_BUDGET", "reduce_mod_p",
    "screen_prime", "motive_mod_p", "eval_mixed", "enumerate_points",
    "enumerate_points_native", "count_report", "divisibility_chains",
    "find_witness_sequence", "moreover_spot_check", "almost_all_primes_check",
]
