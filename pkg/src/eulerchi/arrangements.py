"""Hyperplane arrangements over Q and their characteristic polynomials.

An arrangement is a finite set of affine hyperplanes a.x + b = 0 in C^n.
Its flats (nonempty intersections of subsets) are stored as canonical
row-reduced systems, which makes equality of subspaces a tuple comparison.
The characteristic polynomial sum_X mu(X) L^dim(X) gives an independent
route to F of the union: F(A) = L^n - chi(A, L).
"""

import logging

from . import errors
from .engine import MotivePoly, ProjectionConfig, motive
from .fields import QQ, mpq
from .groebner import Ideal
from .multipoly import PolyRing

log = logging.getLogger(__name__)


def _rref(rows, n):
    """Reduced row echelon form of augmented rows (length n + 1).

    Returns the tuple of nonzero rows, or None when the system is
    inconsistent (a row 0 = c with c != 0).
    """
    rows = [list(r) for r in rows]
    out = []
    col = 0
    while rows and col < n:
        piv = next((r for r in rows if r[col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows.remove(piv)
        c = piv[col]
        piv = [x / c for x in piv]
        for r in rows + out:
            f = r[col]
            if f:
                for j in range(col, n + 1):
                    r[j] -= f * piv[j]
        out.append(piv)
        col += 1
    if any(r[n] != 0 for r in rows):
        return None
    out.sort(key=lambda r: next(j for j in range(n) if r[j] != 0))
    return tuple(tuple(r) for r in out)


class Arrangement:
    """Affine hyperplanes given by degree one polynomials over Q."""

    __slots__ = ("ring", "forms", "rows")

    def __init__(self, ring, forms):
        if ring.field != QQ:
            raise errors.InvalidArrangement("arrangements are defined over Q")
        n = ring.nvars
        forms = list(forms)
        rows, seen = [], set()
        for f in forms:
            if f.ring != ring:
                raise errors.AmbientMismatch("form from a different ring")
            if f.total_degree() != 1:
                raise errors.InvalidArrangement(f"{f} is not of degree 1")
            row = [mpq(0)] * (n + 1)
            for e, c in f.terms.items():
                if sum(e) == 0:
                    row[n] = -mpq(c)
                else:
                    row[e.index(1)] = mpq(c)
            key = _rref([row], n)
            if key in seen:
                raise errors.InvalidArrangement(f"{f} repeats a hyperplane")
            seen.add(key)
            rows.append(key[0])
        self.ring = ring
        self.forms = forms
        self.rows = rows

    @classmethod
    def parse(cls, variables, texts):
        ring = PolyRing(QQ, variables)
        return cls(ring, [ring.parse(t) for t in texts])

    @property
    def n(self):
        return self.ring.nvars

    def __len__(self):
        return len(self.forms)

    def delete(self, i):
        return Arrangement(self.ring, self.forms[:i] + self.forms[i + 1:])

    def restrict(self, i):
        """The arrangement induced on hyperplane i in coordinates without its pivot."""
        n = self.n
        row = self.rows[i]
        piv = next(j for j in range(n) if row[j] != 0)
        keep = [j for j in range(n) if j != piv]
        sub = PolyRing(QQ, [self.ring.vars[j] for j in keep])
        forms, seen = [], set()
        for k, other in enumerate(self.rows):
            if k == i:
                continue
            # substitute x_piv = row[n] - sum_{j != piv} row[j] x_j (row is monic at piv)
            c = other[piv]
            new = [other[j] - c * row[j] for j in keep] + [other[n] - c * row[n]]
            if all(x == 0 for x in new[:-1]):
                continue  # parallel to H (empty) or impossible equal hyperplane
            key = _rref([new], n - 1)
            if key in seen:
                continue
            seen.add(key)
            terms = {}
            for pos, j in enumerate(keep):
                if new[pos] != 0:
                    e = [0] * (n - 1)
                    e[pos] = 1
                    terms[tuple(e)] = new[pos]
            if new[-1] != 0:
                terms[(0,) * (n - 1)] = -new[-1]
            forms.append(sub.from_dict(terms))
        return Arrangement(sub, forms)

    def product(self):
        p = self.ring.one()
        for f in self.forms:
            p = p * f
        return p

    def __repr__(self):
        return f"Arrangement({self.ring.vars}, [{', '.join(str(f) for f in self.forms)}])"


class Flat:
    __slots__ = ("system", "dim", "hyperplanes")

    def __init__(self, system, dim, hyperplanes):
        self.system = system
        self.dim = dim
        self.hyperplanes = hyperplanes

    def __repr__(self):
        return f"Flat(dim={self.dim}, hyperplanes={sorted(self.hyperplanes)})"


class IntersectionLattice:
    """Flats ordered by reverse inclusion; flats[0] is the ambient space."""

    __slots__ = ("arrangement", "flats", "_mobius")

    def __init__(self, arrangement, flats):
        self.arrangement = arrangement
        self.flats = flats
        self._mobius = None

    def __len__(self):
        return len(self.flats)

    def leq(self, a, b):
        """flats[a] <= flats[b], i.e. flats[b] is contained in flats[a]."""
        return self.flats[a].hyperplanes <= self.flats[b].hyperplanes

    def mobius(self):
        if self._mobius is None:
            mu = {}
            order = sorted(range(len(self.flats)), key=lambda i: -self.flats[i].dim)
            for x in order:
                if not self.flats[x].hyperplanes:
                    mu[x] = 1
                    continue
                mu[x] = -sum(mu[y] for y in mu if self.leq(y, x))
            self._mobius = mu
        return dict(self._mobius)

    def check_mobius(self):
        mu = self.mobius()
        for x in range(len(self.flats)):
            s = sum(mu[y] for y in mu if self.leq(y, x))
            if s != (1 if x == 0 else 0):
                return False
        return True


def intersection_lattice(A):
    n = A.n
    ambient = Flat((), n, frozenset())
    flats = [ambient]
    index = {(): 0}
    frontier = [()]
    while frontier:
        nxt = []
        for system in frontier:
            for row in A.rows:
                key = _rref(list(system) + [row], n)
                if key is None or key in index:
                    continue
                index[key] = len(flats)
                flats.append(Flat(key, n - len(key), None))
                nxt.append(key)
        frontier = nxt
    # every hyperplane containing the flat, so the flat is their intersection
    for f in flats[1:]:
        f.hyperplanes = frozenset(
            i for i, row in enumerate(A.rows) if _rref(list(f.system) + [row], n) == f.system)
    return IntersectionLattice(A, flats)


def characteristic_polynomial(A):
    """chi(A, L) = sum over flats X of mu(X) L^dim(X)."""
    lat = intersection_lattice(A)
    total = MotivePoly()
    for x, m in lat.mobius().items():
        total = total + MotivePoly.L_power(lat.flats[x].dim, m)
    return total


def deletion_restriction_check(A, i):
    """(chi(A), chi(A') - chi(A'')) for deletion and restriction at hyperplane i."""
    if not 0 <= i < len(A):
        raise errors.InputError(f"no hyperplane with index {i}")
    lhs = characteristic_polynomial(A)
    rhs = characteristic_polynomial(A.delete(i)) - characteristic_polynomial(A.restrict(i))
    return lhs, rhs


def arrangement_motive_identity(A, cfg=None):
    """(F from the engine on the product of the forms, L^n - chi(A, L))."""
    cfg = cfg or ProjectionConfig()
    engine_side = motive(Ideal(A.ring, [A.product()]), cfg)
    lattice_side = MotivePoly.L_power(A.n) - characteristic_polynomial(A)
    return engine_side, lattice_side


__all__ = [
    "Arrangement", "Flat", "IntersectionLattice", "intersection_lattice",
    "characteristic_polynomial", "deletion_restriction_check", "arrangement_motive_identity",
]
