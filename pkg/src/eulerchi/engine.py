"""Euler characteristic and the polynomial invariant F(V) in Z[L].

Both invariants are computed by the branched-cover recursion: a reduced
equidimensional V of dimension d and degree g, in general position with
respect to the projection to the first d coordinates, satisfies

    F(V) = g L^d - g F(K) + F(V cap pi^-1 V(K))

where K is the elimination ideal of the Jacobian minors (it contains the
branch locus).  The Euler characteristic obeys the same identity with
L = 1.  Reducible sets are split by inclusion-exclusion, cones are split by
a coordinate hyperplane.
"""

import hashlib
import logging
import random
import threading
from itertools import combinations, permutations

from . import errors, upoly
from .decompose import components, count_points_zero_dim, radical
from .groebner import (
    Ideal, degree, dimension, eliminate, exact_div, homogenize_ideal, intersect,
    is_homogeneous_ideal, radical_membership,
)
from .mgcd import gcd_list, principal_subresultants
from .multipoly import Poly, PolyRing, invert_matrix, is_singular


class MotivePoly:
    """An element of Z[L], coefficients low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = [int(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def L_power(cls, d, c=1):
        return cls([0] * d + [c])

    @classmethod
    def const(cls, c):
        return cls([c])

    def _other(self, other):
        if isinstance(other, MotivePoly):
            return other
        if isinstance(other, int):
            return MotivePoly([other])
        if isinstance(other, (list, tuple)):
            return MotivePoly(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return MotivePoly([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return MotivePoly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return MotivePoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return MotivePoly(out)

    __rmul__ = __mul__

    def __call__(self, L):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * L + c
        return acc

    def divmod_L_minus_1(self):
        """Quotient and remainder of division by (L - 1)."""
        a = list(self.coeffs)
        if len(a) <= 1:
            return MotivePoly(), (a[0] if a else 0)
        q = [0] * (len(a) - 1)
        acc = 0
        for i in range(len(a) - 1, 0, -1):
            acc = acc + a[i]
            q[i - 1] = acc
        return MotivePoly(q), acc + a[0]

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def leading_coefficient(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self):
        return not self.coeffs

    def tolist(self):
        return list(self.coeffs)

    def __eq__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("L" if i == 1 else f"L^{i}")
            a = abs(c)
            body = str(a) if not mono else (mono if a == 1 else f"{a}*{mono}")
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out

    def __repr__(self):
        return f"MotivePoly({self})"


class ProjectionConfig:
    """Seed, coefficient bound and retry budget for coordinate changes."""

    __slots__ = ("seed", "bound", "retries", "accelerate")

    def __init__(self, seed=0, bound=10, retries=20, accelerate=True):
        if bound < 1 or retries < 1:
            raise errors.InputError("bound and retries must be positive")
        self.seed = int(seed)
        self.bound = int(bound)
        self.retries = int(retries)
        # fibre counting for low-dimensional hypersurfaces
        self.accelerate = bool(accelerate)

    def key(self):
        return (self.seed, self.bound, self.retries, self.accelerate)

    def __repr__(self):
        return (f"ProjectionConfig(seed={self.seed}, bound={self.bound}, "
                f"retries={self.retries}, accelerate={self.accelerate})")


class VarietyReport:
    __slots__ = ("dimension", "degree", "euler", "motive", "trace", "seed")

    def __init__(self, dimension, degree, euler, motive, trace, seed=0):
        self.dimension = dimension
        self.degree = degree
        self.euler = euler
        self.motive = motive
        self.trace = trace
        self.seed = seed

    def to_dict(self):
        return {
            "dimension": self.dimension,
            "degree": self.degree,
            "euler": self.euler,
            "motive": self.motive.tolist(),
            "trace": [list(t) for t in self.trace],
            "seed": self.seed,
        }

    def __repr__(self):
        return (f"VarietyReport(dim={self.dimension}, deg={self.degree}, "
                f"euler={self.euler}, motive={self.motive})")


def fingerprint(I):
    return hashlib.sha256(I.canonical_text().encode()).hexdigest()[:16]


def _raw_fingerprint(I):
    text = f"{I.ring!r}:" + ";".join(g.to_str() for g in I.gens)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


# -- general position -------------------------------------------------------

def _top_forms(G):
    out = []
    for g in G:
        d = g.total_degree()
        out.append(Poly(g.ring, {e: c for e, c in g.terms.items() if sum(e) == d}))
    return out


def _gp_by_dimension(I, d):
    """dim(I_h + (x_0, x_1..x_d)) <= 0, via the top-degree forms of the basis."""
    ring = I.ring
    n = ring.nvars
    if d >= n:
        return True
    rest = PolyRing(ring.field, ring.vars[d:])
    mapping = [None] * d + list(range(n - d))
    forms = []
    for f in _top_forms(I.gb().polys):
        g = Poly(ring, {e: c for e, c in f.terms.items() if not any(e[:d])})
        if g:
            forms.append(g.embed(rest, mapping))
    J = Ideal(rest, forms)
    return dimension(J) <= 0


def _gp_by_radical(I, d):
    """x_{d+1}..x_n all lie in sqrt(I_h + (x_0, x_1..x_d))."""
    ring = I.ring
    n = ring.nvars
    if d >= n:
        return True
    x0 = ring.fresh_name("x0")
    H = homogenize_ideal(I, x0)
    S = H.ring
    J = H + [S.gen(i) for i in range(d + 1)]
    return all(radical_membership(S.gen(i), J) for i in range(d + 1, n + 1))


def is_general_position(I, d=None, method="dimension"):
    """General position of V(I) for the projection to the first d coordinates."""
    if I.is_unit():
        raise errors.UnitIdeal("the empty set has no projection")
    if d is None:
        d = dimension(I)
    if method == "dimension":
        return _gp_by_dimension(I, d)
    if method == "radical":
        return _gp_by_radical(I, d)
    a, b = _gp_by_dimension(I, d), _gp_by_radical(I, d)
    if a != b:
        raise errors.EngineError("general position tests disagree")
    return a


def _rng_for(cfg, I, salt=""):
    h = hashlib.sha256(f"{cfg.seed}:{salt}:{I.canonical_text()}".encode()).digest()
    return random.Random(int.from_bytes(h[:8], "big"))


def _apply(I, A):
    return Ideal(I.ring, [g.apply_linear(A) for g in I.reduced_gens()])


def _candidate_matrices(n, d, cfg, rng):
    """Coordinate changes to try, sparse ones first.

    Permutations, then unipotent shears moving the projection direction,
    then dense random integer matrices with entries in [-B, B].
    """
    B = cfg.bound
    ident = tuple(range(n))
    perms = [pm for pm in permutations(range(n)) if pm != ident]
    rng.shuffle(perms)
    for pm in perms:
        yield [[1 if j == pm[i] else 0 for j in range(n)] for i in range(n)]
    for r in range(cfg.retries):
        # small entries first: they keep coefficients short
        b = min(B, 1 + r // 2)
        A = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for i in range(d):
            for j in range(d, n):
                A[i][j] = rng.choice([c for c in range(-b, b + 1) if c])
        yield A
    for _ in range(cfg.retries):
        yield [[rng.randint(-B, B) for _ in range(n)] for _ in range(n)]


def randomize_coordinates(I, cfg, d=None):
    """Return (J, A): I after an invertible change x -> A x in general position."""
    ring = I.ring
    n = ring.nvars
    if d is None:
        d = dimension(I)
    rng = _rng_for(cfg, I, "gp")
    for A in _candidate_matrices(n, d, cfg, rng):
        if is_singular([[ring.field.convert(a) for a in row] for row in A], ring.field):
            continue
        J = _apply(I, A)
        if _gp_by_dimension(J, d):
            return J, A
    raise errors.RetriesExhausted(f"no general-position coordinates found after {cfg.retries} attempts")


# -- branch locus -------------------------------------------------------------

def _det(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = None
    for j in range(n):
        if not M[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else M[0][0].ring.zero()


def jacobian_minors(gens, cols, size):
    rows = [[f.diff(v) for v in cols] for f in gens]
    out = []
    for rsel in combinations(range(len(rows)), size):
        for csel in combinations(range(len(cols)), size):
            M = [[rows[r][c] for c in csel] for r in rsel]
            m = _det(M)
            if m:
                out.append(m)
    return out


def branch_data(I, d):
    """(J, K): Jacobian-minor ideal and its elimination to the first d variables."""
    ring = I.ring
    n = ring.nvars
    gens = I.reduced_gens()
    J = Ideal(ring, jacobian_minors(gens, list(range(d, n)), n - d))
    K = eliminate(I + J, ring.vars[:d])
    if K.is_zero():
        raise errors.DegenerateBranchLocus("the branch locus is dense in the base")
    return J, K


# -- the recursion --------------------------------------------------------------

log = logging.getLogger(__name__)

_MEMO = {}
_MEMO_LOCK = threading.Lock()


def clear_cache():
    with _MEMO_LOCK:
        _MEMO.clear()


class _Recursion:
    """One run of the recursion in mode 'chi' or 'motive'."""

    __slots__ = ("mode", "cfg", "trace", "witnesses")

    def __init__(self, mode, cfg):
        self.mode = mode
        self.cfg = cfg
        self.trace = []
        # data whose reduction mod p decides whether a prime is good
        self.witnesses = []

    def value(self, c, d=0):
        if self.mode == "chi":
            return c
        return MotivePoly.L_power(d, c)

    def run(self, I):
        split = self._gcd_split(I)
        if split is not None:
            H, Q = split
            return self.run(H) + self.run(Q) - self.run(H + Q.gens)
        key = (self.mode, self.cfg.key(), I.ring.field.spec, I.ring.vars, I.canonical_text())
        hit = _MEMO.get(key)
        if hit is not None:
            self.trace.append((fingerprint(I), "cached"))
            self.witnesses.extend(hit[1])
            return hit[0]
        start = len(self.witnesses)
        result = self._compute(I)
        with _MEMO_LOCK:
            entry = _MEMO.setdefault(key, (result, tuple(self.witnesses[start:])))
        return entry[0]

    def _gcd_split(self, I):
        """V(h q_1, ..., h q_r) = V(h) u V(q_1, ..., q_r), found without a basis."""
        gens = [g for g in I.gens if g]
        if I.ring.nvars < 2 or len(gens) < 2 or any(g.is_constant() for g in gens):
            return None
        h = gcd_list(gens)
        if h.is_constant():
            return None
        ring = I.ring
        self.trace.append((_raw_fingerprint(I), "gcd-split"))
        log.debug("gcd-split %s", h)
        return Ideal(ring, [h]), Ideal(ring, [exact_div(g, h) for g in gens])

    def _log(self, I, label):
        self.trace.append((fingerprint(I), label))
        log.debug("%s %s %s", label, I.ring.vars, [str(g) for g in I.gens][:4])

    def _compute(self, I):
        ring = I.ring
        n = ring.nvars
        if I.is_unit():
            self._log(I, "empty")
            return self.value(0)
        if I.is_zero():
            self._log(I, "affine-space")
            return self.value(1, n)
        used = sorted({v for g in I.reduced_gens() for v in g.support_vars()})
        if len(used) < n:
            # V is a cylinder V' x C^k, and F(V' x C^k) = F(V') L^k
            self._log(I, f"cylinder:{n - len(used)}")
            sub = ring.subring(used)
            mapping = [None] * n
            for j, i in enumerate(used):
                mapping[i] = j
            base = self.run(Ideal(sub, [g.embed(sub, mapping) for g in I.reduced_gens()]))
            return base if self.mode == "chi" else base * MotivePoly.L_power(n - len(used))
        if n == 1:
            self._log(I, "univariate")
            f = I.reduced_gens()[0]
            u = f.to_univariate(0)
            self.witnesses.append(("squarefree", tuple(upoly.squarefree_part(u, ring.field))))
            return self.value(upoly.distinct_root_count(u, ring.field))
        if dimension(I) == 0:
            # counting needs no radical basis; a zero-dimensional cone is a point
            self._log(I, "points")
            return self.value(count_points_zero_dim(I))
        J1 = radical(I)
        if is_homogeneous_ideal(J1):
            self._log(J1, "cone")
            if self.mode == "chi":
                return 1
            return self._cone_split(J1)
        comps = components(J1)
        if len(comps) > 1:
            self._log(J1, f"decompose:{len(comps)}")
            C1 = comps[0]
            J2 = comps[1]
            for C in comps[2:]:
                J2 = intersect(J2, C)
            return self.run(C1) + self.run(J2) - self.run(C1 + J2)
        J1 = comps[0]
        d = dimension(J1)
        g = degree(J1)
        if g == 1:
            self._log(J1, "linear")
            return self.value(1, d)
        if d == 0:
            self._log(J1, "points")
            return self.value(g)
        if not _gp_by_dimension(J1, d):
            J1, _ = randomize_coordinates(J1, self.cfg, d)
            self._log(J1, "randomize")
        gens = J1.reduced_gens()
        if self.cfg.accelerate and len(gens) == 1 and n == d + 1 and d <= 2:
            hit = self._fibered(gens[0], g, d)
            if hit is not None:
                return hit
        self._log(J1, "branch")
        _, K = branch_data(J1, d)
        # both terms only see V(K), so the reduced structure is enough
        K = radical(K)
        FK = self.run(K)
        FI = self.run(J1 + [k.embed(ring) for k in K.reduced_gens()])
        return self.value(g, d) - g * FK + FI

    def _fibered(self, f, g, d):
        """F of a hypersurface V(f) in general position, by fibre counts.

        With f monic in the last variable, the fibre over a point has
        g - k distinct points exactly on Z_k minus Z_(k+1), where Z_k is cut
        out by the principal subresultants psc_0..psc_(k-1) of f and f'.
        Summing gives F(V) = g L^d - sum_{k>=1} F(Z_k).  For d <= 2 this is
        the branch formula with the curve over the branch locus counted
        through its finite map onto that locus.
        """
        ring = f.ring
        n = ring.nvars
        char = ring.field.characteristic
        if f.degree_in(n - 1) != g or (char and char < g):
            return None
        if [e for e in f.terms if e[n - 1] == g] != [(0,) * (n - 1) + (g,)]:
            return None
        self._log(Ideal(ring, [f]), "fibered")
        self.witnesses.append(("fibre-degree", g))
        base = PolyRing(ring.field, ring.vars[:n - 1])
        mapping = list(range(n - 1)) + [None]
        psc = principal_subresultants(f, f.diff(n - 1), n - 1)
        total = self.value(g, d)
        for k in range(1, g):
            Z = Ideal(base, [p.embed(base, mapping) for p in psc[:k]])
            if Z.is_unit():
                break
            total = total - self.run(Z)
        return total

    def _cone_split(self, J1):
        ring = J1.ring
        rest = PolyRing(ring.field, ring.vars[1:])
        gens = J1.reduced_gens()
        one = Ideal(rest, [g.dehomogenize(ring.vars[0], 1) for g in gens])
        zero = Ideal(rest, [g.dehomogenize(ring.vars[0], 0) for g in gens])
        return MotivePoly([-1, 1]) * self.run(one) + self.run(zero)


def _check_field(I):
    if getattr(I.ring.field, "degree", 1) != 1:
        raise errors.InputError("the recursion runs over Q or a prime field")


def euler_characteristic(I, cfg=None):
    """Euler characteristic of V(I)."""
    _check_field(I)
    return _Recursion("chi", cfg or ProjectionConfig()).run(I)


def motive(I, cfg=None):
    """The polynomial F(V(I)) in Z[L]."""
    _check_field(I)
    return _Recursion("motive", cfg or ProjectionConfig()).run(I)


def motive_with_witnesses(I, cfg=None):
    """F(V(I)) together with the data a prime reduction has to preserve.

    The witnesses are ("squarefree", coeffs) for every univariate root count
    and ("fibre-degree", g) for every fibre count of a degree g cover.
    """
    _check_field(I)
    rec = _Recursion("motive", cfg or ProjectionConfig())
    F = rec.run(I)
    return F, list(rec.witnesses)


def report(I, cfg=None):
    """Dimension, degree, Euler characteristic, F and the recursion trace."""
    cfg = cfg or ProjectionConfig()
    _check_field(I)
    rec = _Recursion("motive", cfg)
    F = rec.run(I)
    if I.is_unit():
        d, g = -1, 0
    else:
        R = radical(I)
        d, g = dimension(R), _top_degree(R)
    return VarietyReport(d, g, F(1), F, rec.trace, cfg.seed)


def _top_degree(R):
    """Degree of the top-dimensional part (the leading coefficient of F)."""
    comps = components(R)
    top = dimension(comps[0])
    return sum(degree(C) for C in comps if dimension(C) == top)


# -- projective -----------------------------------------------------------------

def _check_homogeneous(I_h):
    if not is_homogeneous_ideal(I_h):
        raise errors.NotHomogeneous("projective invariants need a homogeneous ideal")


def _chart_split(I_h):
    ring = I_h.ring
    rest = PolyRing(ring.field, ring.vars[1:])
    gens = I_h.reduced_gens()
    one = Ideal(rest, [g.dehomogenize(ring.vars[0], 1) for g in gens])
    zero = Ideal(rest, [g.dehomogenize(ring.vars[0], 0) for g in gens])
    return one, zero


def projective_euler(I_h, cfg=None):
    """chi of the projective set V(I_h) in P^(n-1), n = number of variables."""
    cfg = cfg or ProjectionConfig()
    _check_homogeneous(I_h)
    ring = I_h.ring
    if ring.nvars == 1:
        # P^0: the point survives unless x0 is forced to vanish
        return 0 if radical_membership(ring.gen(0), I_h) else 1
    one, zero = _chart_split(I_h)
    return euler_characteristic(one, cfg) + projective_euler(zero, cfg)


def projective_motive(I_h, cfg=None, check=True):
    """F of the projective set V(I_h), with the cone identity as a check."""
    cfg = cfg or ProjectionConfig()
    _check_homogeneous(I_h)
    value = _projective_motive(I_h, cfg)
    if not check:
        return value
    cone = None
    for attempt in range(max(1, cfg.retries)):
        # a violation means some projection was not generic: move the seed
        trial = cfg if attempt == 0 else ProjectionConfig(
            cfg.seed + attempt, cfg.bound, cfg.retries, cfg.accelerate)
        if attempt:
            value = _projective_motive(I_h, trial)
        cone = motive(I_h, trial)
        q, r = (cone - 1).divmod_L_minus_1()
        if r == 0 and q == value:
            return value
        log.warning("cone identity failed with seed %d", trial.seed)
    raise errors.ConeIdentityViolation(f"cone motive {cone} is not (L-1)*({value}) + 1")


def _projective_motive(I_h, cfg):
    ring = I_h.ring
    if ring.nvars == 1:
        return MotivePoly([0 if radical_membership(ring.gen(0), I_h) else 1])
    one, zero = _chart_split(I_h)
    return motive(one, cfg) + _projective_motive(zero, cfg)


__all__ = [
    "MotivePoly", "ProjectionConfig", "VarietyReport", "is_general_position",
    "randomize_coordinates", "branch_data", "euler_characteristic", "motive",
    "projective_euler", "projective_motive", "report", "motive_with_witnesses", "clear_cache", "invert_matrix",
]
