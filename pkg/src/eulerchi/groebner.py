"""Reduced Groebner bases and the ideal toolbox built on them.

The kernel works on *term lists*: lists of ``(key, exp, coeff)`` triples
sorted by ascending key (descending monomial), where ``key`` is the linear
order key from :mod:`multipoly`.  Buchberger uses the sugar strategy and the
Gebauer--Moeller installation of the coprime and chain criteria.
"""

import threading
from heapq import heapify, heappop, heappush
from itertools import combinations
from math import factorial
from operator import add, le, sub

from gmpy2 import mpq

from . import errors
from .multipoly import GREVLEX, Poly, PolyRing, block


# -- kernel ---------------------------------------------------------------

def _to_terms(poly, keyfn):
    return sorted(((keyfn(e), e, c) for e, c in poly.terms.items()), key=lambda t: t[0])


def _make_monic(terms, field, p):
    lc = terms[0][2]
    if p:
        if lc == 1:
            return terms
        inv = pow(lc, -1, p)
        return [(k, e, c * inv % p) for k, e, c in terms]
    if lc == 1:
        return terms
    inv = field.inv(lc)
    return [(k, e, c * inv) for k, e, c in terms]


def _reduce(terms, basis, p):
    """Normal form of a term list modulo monic term lists ``basis``."""
    if not terms or not basis:
        return list(terms)
    acc = {e: c for _, e, c in terms}
    heap = [(k, e) for k, e, _ in terms]
    heapify(heap)
    leads = [(g[0][1], g[0][0], g) for g in basis]
    out = []
    pop = acc.pop
    get = acc.get
    while heap:
        k, e = heappop(heap)
        c = pop(e, None)
        if c is None:
            continue
        for lm, lk, g in leads:
            if all(map(le, lm, e)):
                m = tuple(map(sub, e, lm))
                mk = tuple(map(sub, k, lk))
                if p:
                    for gk, ge, gc in g[1:]:
                        ne = tuple(map(add, ge, m))
                        v = get(ne)
                        if v is None:
                            acc[ne] = -c * gc % p
                            heappush(heap, (tuple(map(add, gk, mk)), ne))
                        else:
                            v = (v - c * gc) % p
                            if v:
                                acc[ne] = v
                            else:
                                del acc[ne]
                else:
                    for gk, ge, gc in g[1:]:
                        ne = tuple(map(add, ge, m))
                        v = get(ne)
                        if v is None:
                            acc[ne] = -(c * gc)
                            heappush(heap, (tuple(map(add, gk, mk)), ne))
                        else:
                            v = v - c * gc
                            if v:
                                acc[ne] = v
                            else:
                                del acc[ne]
                break
        else:
            out.append((k, e, c))
    return out


def _spoly(f, g, keyfn, p):
    """S-polynomial of two monic term lists (as a term list)."""
    lf, lg = f[0][1], g[0][1]
    lcm = tuple(map(max, lf, lg))
    mf = tuple(map(sub, lcm, lf))
    mg = tuple(map(sub, lcm, lg))
    kf = keyfn(mf)
    kg = keyfn(mg)
    acc = {}
    keys = {}
    for k, e, c in f[1:]:
        ne = tuple(map(add, e, mf))
        acc[ne] = c
        keys[ne] = tuple(map(add, k, kf))
    for k, e, c in g[1:]:
        ne = tuple(map(add, e, mg))
        v = acc.get(ne)
        if v is None:
            acc[ne] = (-c) % p if p else -c
            keys[ne] = tuple(map(add, k, kg))
        else:
            v = (v - c) % p if p else v - c
            if v:
                acc[ne] = v
            else:
                del acc[ne]
    out = [(keys[e], e, c) for e, c in acc.items()]
    out.sort(key=lambda t: t[0])
    return out


def _buchberger(polys, keyfn, field, p, graded=True):
    """Reduced Groebner basis of term lists; returns list of monic term lists.

    Pairs are selected by sugar for graded orders and by smallest lcm
    (the normal strategy) otherwise.
    """
    store = []           # all basis elements ever added
    sugar = []
    active = []          # indices into store
    pairs = []           # (rank, tie, i, j, lcm)

    def lm(i):
        return store[i][0][1]

    def install(h, s):
        h = _make_monic(h, field, p)
        store.append(h)
        sugar.append(s)
        t = len(store) - 1
        lh = h[0][1]
        # Gebauer-Moeller update
        cand = []
        for g in active:
            lg = lm(g)
            cand.append((g, tuple(map(max, lg, lh)), not any(map(min, lg, lh))))
        kept = []
        for idx, (g, lcm, coprime) in enumerate(cand):
            if coprime:
                kept.append((g, lcm, coprime))
                continue
            dominated = False
            for jdx, (g2, lcm2, _) in enumerate(cand):
                if jdx == idx:
                    continue
                if all(map(le, lcm2, lcm)) and (lcm2 != lcm or jdx < idx):
                    dominated = True
                    break
            if not dominated:
                kept.append((g, lcm, coprime))
        new_pairs = []
        for (s_, d_, i, j, lcm_ij) in pairs:
            if (all(map(le, lh, lcm_ij))
                    and tuple(map(max, lm(i), lh)) != lcm_ij
                    and tuple(map(max, lm(j), lh)) != lcm_ij):
                continue
            new_pairs.append((s_, d_, i, j, lcm_ij))
        for g, lcm, coprime in kept:
            if coprime:
                continue
            dl = sum(lcm)
            sg = max(sugar[g] + dl - sum(lm(g)), s + dl - sum(lh))
            small = tuple(-x for x in keyfn(lcm))
            if graded:
                new_pairs.append((sg, small, g, t, lcm))
            else:
                new_pairs.append((small, sg, g, t, lcm))
        pairs[:] = new_pairs
        active[:] = [g for g in active if not all(map(le, lh, lm(g)))] + [t]

    def basis():
        return [store[i] for i in active]

    def deg(h):
        return max(sum(e) for _, e, _ in h)

    for f in sorted(polys, key=lambda t: t[0][0], reverse=True):
        h = _reduce(f, basis(), p)
        if h:
            if all(x == 0 for x in h[0][1]):
                return [[(h[0][0], h[0][1], field.one)]]
            install(h, deg(h))
    while pairs:
        best = min(range(len(pairs)), key=lambda i: pairs[i][:4])
        a_, b_, i, j, _ = pairs.pop(best)
        s_ = a_ if graded else b_
        sp = _spoly(store[i], store[j], keyfn, p)
        h = _reduce(sp, basis(), p)
        if h:
            if all(x == 0 for x in h[0][1]):
                return [[(h[0][0], h[0][1], field.one)]]
            install(h, s_)
    # interreduce
    G = sorted(basis(), key=lambda t: t[0][0], reverse=True)
    out = []
    for idx, g in enumerate(G):
        others = G[:idx] + G[idx + 1:]
        r = [g[0]] + _reduce(g[1:], others, p)
        out.append(r)
    out.sort(key=lambda t: t[0][0])
    return out


# -- bases and ideals -----------------------------------------------------

class GroebnerBasis:
    """A reduced Groebner basis: monic elements sorted by descending leading monomial."""

    __slots__ = ("ring", "order", "polys", "_terms", "_keyfn")

    def __init__(self, ring, order, terms):
        self.ring = ring
        self.order = order
        self._keyfn = order.keyfn(ring.nvars)
        self._terms = terms
        self.polys = [Poly(ring, {e: c for _, e, c in t}) for t in terms]

    @classmethod
    def from_polys(cls, ring, order, polys):
        keyfn = order.keyfn(ring.nvars)
        terms = [_to_terms(f, keyfn) for f in polys if f]
        terms.sort(key=lambda t: t[0][0])
        return cls(ring, order, terms)

    @property
    def elements(self):
        return list(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def is_unit(self):
        return len(self._terms) == 1 and not any(self._terms[0][0][1])

    def leading_exps(self):
        return [t[0][1] for t in self._terms]

    def normal_form(self, f):
        if f.ring != self.ring:
            raise errors.AmbientMismatch(f"{f.ring} vs {self.ring}")
        if not f:
            return f
        r = _reduce(_to_terms(f, self._keyfn), self._terms, self.ring.p)
        return Poly(self.ring, {e: c for _, e, c in r})

    def contains(self, f):
        return not self.normal_form(f)

    def to_text(self):
        return "[" + ", ".join(g.to_str(self.order) for g in self.polys) + "]"

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.ring == other.ring
                and self.order == other.order and self.polys == other.polys)

    def __hash__(self):
        return hash(self.to_text())

    def __repr__(self):
        return f"GroebnerBasis({self.order}, {self.to_text()})"


class Ideal:
    """An ideal of a polynomial ring with lazily cached reduced Groebner bases."""

    __slots__ = ("ring", "gens", "_gb", "_lock", "_canon")

    def __init__(self, ring, gens=()):
        self.ring = ring
        out = []
        for g in gens:
            if not isinstance(g, Poly):
                g = ring.const(g)
            elif g.ring != ring:
                if g.ring.field != ring.field:
                    raise errors.FieldMismatch(f"{g.ring.field} vs {ring.field}")
                raise errors.AmbientMismatch(f"generator in {g.ring}, ideal in {ring}")
            if g:
                out.append(g)
        self.gens = out
        self._gb = {}
        self._lock = threading.Lock()
        self._canon = None

    @classmethod
    def parse(cls, ring, texts):
        return cls(ring, [ring.parse(t) for t in texts])

    def gb(self, order=GREVLEX):
        G = self._gb.get(order)
        if G is not None:
            return G
        G = buchberger(self, order)
        return G

    def _seed(self, order, G):
        with self._lock:
            return self._gb.setdefault(order, G)

    def is_zero(self):
        return not self.gens

    def is_unit(self):
        if not self.gens:
            return False
        if any(g.is_constant() for g in self.gens):
            return True
        return self.gb().is_unit()

    def contains(self, f):
        if not isinstance(f, Poly):
            f = self.ring.const(f)
        if not f:
            return True
        if not self.gens:
            return False
        return self.gb().contains(f)

    __contains__ = contains

    def contains_ideal(self, other):
        return all(self.contains(g) for g in other.gens)

    def reduce(self, f):
        if not self.gens:
            return f
        return self.gb().normal_form(f)

    def __add__(self, other):
        if isinstance(other, Poly):
            return Ideal(self.ring, self.gens + [other])
        if isinstance(other, (list, tuple)):
            return Ideal(self.ring, self.gens + list(other))
        if other.ring != self.ring:
            raise errors.AmbientMismatch(f"{self.ring} vs {other.ring}")
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other):
        if other.ring != self.ring:
            raise errors.AmbientMismatch(f"{self.ring} vs {other.ring}")
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def canonical_text(self):
        """Structural key: ring, field and the reduced grevlex basis."""
        if self._canon is None:
            body = self.gb().to_text() if self.gens else "[]"
            self._canon = f"{self.ring.field.spec}[{','.join(self.ring.vars)}]{body}"
        return self._canon

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.canonical_text() == other.canonical_text()

    def __hash__(self):
        return hash(self.canonical_text())

    def reduced_gens(self):
        """Generators of the reduced grevlex basis (empty for the zero ideal)."""
        return self.gb().elements if self.gens else []

    def dimension(self):
        return dimension(self)

    def degree(self):
        return degree(self)

    def is_homogeneous(self):
        return is_homogeneous_ideal(self)

    def embed(self, ring):
        return Ideal(ring, [g.embed(ring) for g in self.gens])

    def __repr__(self):
        return f"Ideal({self.ring!r}, [{', '.join(g.to_str() for g in self.gens)}])"


# -- operations -------------------------------------------------------------

def buchberger(I, order=GREVLEX):
    """Reduced Groebner basis of I for ``order`` (cached on I)."""
    G = I._gb.get(order)
    if G is not None:
        return G
    ring = I.ring
    keyfn = order.keyfn(ring.nvars)
    if not I.gens:
        terms = []
    elif ring.nvars == 1:
        # one variable: the basis is the monic gcd
        from . import upoly
        g = []
        for f in I.gens:
            g = upoly.gcd(g, f.to_univariate(0), ring.field)
        terms = [_to_terms(Poly.from_univariate(g, ring, 0), keyfn)] if g else []
    else:
        polys = [_to_terms(f, keyfn) for f in I.gens]
        terms = _buchberger(polys, keyfn, ring.field, ring.p, order.kind == "grevlex")
    return I._seed(order, GroebnerBasis(ring, order, terms))


def normal_form(f, G):
    return G.normal_form(f)


def _extend_front(ring, base):
    name = ring.fresh_name(base)
    return ring.extend([name], front=True), name


def radical_membership(f, I):
    """Rabinowitsch test: f in sqrt(I) iff 1 in I + (1 - t f)."""
    if not f:
        return True
    ring, _ = _extend_front(I.ring, "t")
    t = ring.gen(0)
    gens = [g.embed(ring) for g in I.gens] + [ring.one() - t * f.embed(ring)]
    return Ideal(ring, gens).is_unit()


def eliminate(I, keep, order=None):
    """I intersected with k[keep]; the result lives in the ring of ``keep``.

    Zero-dimensional input is handled by linear algebra in k[x]/I, which
    avoids the coefficient growth of elimination orders over Q.
    """
    ring = I.ring
    keep_idx = [ring.index(v) for v in keep]
    kept = set(keep_idx)
    elim_idx = [i for i in range(ring.nvars) if i not in kept]
    sub_ring = PolyRing(ring.field, [ring.vars[i] for i in keep_idx])
    if not elim_idx:
        return Ideal(sub_ring, [g.embed(sub_ring) for g in I.gens])
    if order is None and dimension(I) == 0:
        return _eliminate_zero_dim(I, keep_idx, sub_ring)
    big = PolyRing(ring.field, [ring.vars[i] for i in elim_idx] + [ring.vars[i] for i in keep_idx])
    J = Ideal(big, [g.embed(big) for g in I.gens])
    G = J.gb(order or block(len(elim_idx)))
    ne = len(elim_idx)
    mapping = [None] * ne + list(range(len(keep_idx)))
    out = [g.embed(sub_ring, mapping) for g in G.polys if not any(e[:ne] != (0,) * ne for e in g.terms)]
    result = Ideal(sub_ring, out)
    if order is None and out:
        result._seed(GREVLEX, GroebnerBasis.from_polys(sub_ring, GREVLEX, out))
    return result


class _Echelon:
    """Incremental row echelon form over a field, rows are sparse dicts.

    Each row carries the combination of inputs that produced it.
    """

    __slots__ = ("field", "rows")

    def __init__(self, field):
        self.field = field
        self.rows = {}       # pivot -> (vector, combination)

    def _axpy(self, v, c, w):
        f = self.field
        for k, a in w.items():
            nv = f.sub(v.get(k, f.zero), f.mul(c, a))
            if nv:
                v[k] = nv
            else:
                v.pop(k, None)

    def reduce(self, vec, comb):
        """Reduce in place; returns True if vec became zero."""
        for piv in sorted(set(vec) & set(self.rows)):
            c = vec.get(piv)
            if c:
                pv, pc = self.rows[piv]
                self._axpy(vec, c, pv)
                self._axpy(comb, c, pc)
        # new entries can only hit pivots if rows were not fully reduced
        while True:
            hits = [k for k in vec if k in self.rows]
            if not hits:
                break
            for piv in hits:
                c = vec.get(piv)
                if c:
                    pv, pc = self.rows[piv]
                    self._axpy(vec, c, pv)
                    self._axpy(comb, c, pc)
        return not vec

    def insert(self, vec, comb):
        f = self.field
        piv = min(vec)
        inv = f.inv(vec[piv])
        vec = {k: f.mul(a, inv) for k, a in vec.items()}
        comb = {k: f.mul(a, inv) for k, a in comb.items()}
        for q, (pv, pc) in self.rows.items():
            c = pv.get(piv)
            if c:
                self._axpy(pv, c, vec)
                self._axpy(pc, c, comb)
        self.rows[piv] = (vec, comb)


def _eliminate_zero_dim(I, keep_idx, sub_ring):
    """FGLM-style walk over the monomials of k[keep] in increasing grevlex order."""
    ring = I.ring
    field = ring.field
    G = I.gb()
    if G.is_unit():
        return Ideal(sub_ring, [sub_ring.one()])
    m = len(keep_idx)
    grev = GREVLEX.keyfn(m)

    def up(e):
        # heap pops the smallest monomial first
        return tuple(-x for x in grev(e))

    ech = _Echelon(field)
    nf = {}                 # monomial in k[keep] -> normal form in k[x]/I (dict)
    leads = []
    out = []
    zero = (0,) * m
    nf[zero] = dict(G.normal_form(ring.one()).terms)
    heap = [(up(zero), zero)]
    seen = {zero}
    gens = {}
    while heap:
        _, mono = heappop(heap)
        if any(all(map(le, L, mono)) for L in leads):
            continue
        vec = nf.get(mono)
        if vec is None:
            # mono = x_i * prev with prev already in the staircase
            i = next(i for i in range(m) if mono[i] and
                     tuple(mono[k] - (k == i) for k in range(m)) in nf)
            prev = tuple(mono[k] - (k == i) for k in range(m))
            xi = gens.get(i)
            if xi is None:
                xi = gens[i] = ring.gen(keep_idx[i])
            vec = dict(G.normal_form(Poly(ring, nf[prev]) * xi).terms)
            nf[mono] = vec
        # order vector entries by a fixed key so pivots are deterministic
        kvec = {GREVLEX.key(e): c for e, c in vec.items()}
        comb = {mono: field.one}
        if kvec and not ech.reduce(kvec, comb):
            ech.insert(kvec, comb)
            for i in range(m):
                nxt = tuple(mono[k] + (k == i) for k in range(m))
                if nxt not in seen:
                    seen.add(nxt)
                    heappush(heap, (up(nxt), nxt))
            continue
        leads.append(mono)
        out.append(Poly(sub_ring, comb))
    result = Ideal(sub_ring, out)
    result._seed(GREVLEX, GroebnerBasis.from_polys(sub_ring, GREVLEX, out))
    return result


def intersect(I, J):
    """I intersected with J via the t-trick."""
    if I.ring != J.ring:
        raise errors.AmbientMismatch(f"{I.ring} vs {J.ring}")
    if I.is_zero() or J.is_zero():
        return Ideal(I.ring, [])
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    if len(I.gens) == 1 and len(J.gens) == 1:
        f, g = I.gens[0], J.gens[0]
        return Ideal(I.ring, [lcm_poly(f, g)])
    ring, _ = _extend_front(I.ring, "t")
    t = ring.gen(0)
    one_t = ring.one() - t
    gens = [t * f.embed(ring) for f in I.gens] + [one_t * g.embed(ring) for g in J.gens]
    return eliminate(Ideal(ring, gens), I.ring.vars)


def saturate(I, f):
    """I : f^infinity."""
    if not f:
        raise errors.ZeroPolynomial("cannot saturate by the zero polynomial")
    if f.is_constant() or I.is_zero():
        return I
    ring, _ = _extend_front(I.ring, "t")
    t = ring.gen(0)
    gens = [g.embed(ring) for g in I.gens] + [ring.one() - t * f.embed(ring)]
    return eliminate(Ideal(ring, gens), I.ring.vars)


def quotient(I, J):
    """I : J as the intersection of the I : g over generators g of J."""
    if I.ring != J.ring:
        raise errors.AmbientMismatch(f"{I.ring} vs {J.ring}")
    result = None
    for g in J.gens:
        Q = quotient_poly(I, g)
        result = Q if result is None else intersect(result, Q)
    if result is None:
        return Ideal(I.ring, [I.ring.one()])
    return result


def quotient_poly(I, g):
    """I : (g) = (I cap (g)) / g."""
    if not g:
        raise errors.ZeroPolynomial("quotient by the zero polynomial")
    if g.is_constant() or I.is_zero():
        return I
    inter = intersect(I, Ideal(I.ring, [g]))
    return Ideal(I.ring, [exact_div(h, g) for h in inter.gens])


def exact_div(f, g):
    """f / g, which must be exact."""
    if not g:
        raise errors.DivisionByZero("division by the zero polynomial")
    ring = f.ring
    field = ring.field
    keyfn = GREVLEX.keyfn(ring.nvars)
    lg = g.leading_exp(GREVLEX)
    inv = field.inv(g.terms[lg])
    rem = dict(f.terms)
    heap = [(keyfn(e), e) for e in rem]
    heapify(heap)
    q = {}
    p = ring.p
    gt = [(e, c) for e, c in g.terms.items() if e != lg]
    while heap:
        _, e = heappop(heap)
        c = rem.pop(e, None)
        if c is None:
            continue
        if not all(map(le, lg, e)):
            raise errors.InputError("polynomial division is not exact")
        m = tuple(map(sub, e, lg))
        c = c * inv
        if p:
            c %= p
        q[m] = c
        for ge, gc in gt:
            ne = tuple(map(add, ge, m))
            old = rem.get(ne)
            if old is None:
                v = -c * gc
                if p:
                    v %= p
                rem[ne] = v
                heappush(heap, (keyfn(ne), ne))
            else:
                v = old - c * gc
                if p:
                    v %= p
                if v:
                    rem[ne] = v
                else:
                    del rem[ne]
    return Poly(ring, q)


def lcm_poly(f, g):
    return exact_div(f * g, gcd_poly(f, g))


def gcd_poly(f, g):
    """Multivariate gcd (monic in grevlex) by the principal-ideal trick."""
    from .mgcd import gcd as _mgcd
    return _mgcd(f, g)


def homogenize_ideal(I, x0="x0"):
    """Homogenize the reduced grevlex basis with x0 prepended at position 0."""
    ring = I.ring.extend([x0], front=True)
    if I.is_zero():
        return Ideal(ring, [])
    return Ideal(ring, [g.homogenize(x0) for g in I.gb().polys])


def is_homogeneous_ideal(I):
    if I.is_zero():
        return True
    if all(g.is_homogeneous() for g in I.gens):
        return True
    return all(g.is_homogeneous() for g in I.gb().polys)


def _lead_masks(I):
    return [sum(1 << i for i, x in enumerate(e) if x) for e in I.gb().leading_exps()]


def independent_sets(I, size):
    """Variable subsets of the given size (as index tuples, bitmask order)
    containing no grevlex leading monomial."""
    n = I.ring.nvars
    masks = _lead_masks(I) if I.gens else []
    subsets = sorted(combinations(range(n), size), key=lambda s: sum(1 << i for i in s))
    for s in subsets:
        m = sum(1 << i for i in s)
        if all(lm & ~m for lm in masks):
            yield s


def dimension(I):
    """Krull dimension of k[x]/I; -1 for the unit ideal."""
    n = I.ring.nvars
    if I.is_zero():
        return n
    if I.gb().is_unit():
        return -1
    for d in range(n, -1, -1):
        for _ in independent_sets(I, d):
            return d
    return 0


def max_independent_set(I):
    d = dimension(I)
    if d < 0:
        return None
    return next(independent_sets(I, d))


# -- Hilbert series ---------------------------------------------------------

def _minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(map(le, h, g)) for h in out):
            out.append(g)
    return out


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _padd(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


_HS_CACHE = {}


def hilbert_numerator(gens):
    """Numerator N(t) of the Hilbert series N(t)/(1-t)^n of k[x]/(monomials)."""
    gens = tuple(sorted(_minimalize(tuple(g) for g in gens)))
    hit = _HS_CACHE.get(gens)
    if hit is not None:
        return list(hit)
    result = _hilbert_numerator(gens)
    if len(_HS_CACHE) < 100000:
        _HS_CACHE[gens] = tuple(result)
    return result


def _hilbert_numerator(gens):
    if not gens:
        return [1]
    if any(not any(g) for g in gens):
        return [0]
    masks = [sum(1 << i for i, x in enumerate(g) if x) for g in gens]
    coprime = all(not (masks[i] & masks[j]) for i in range(len(gens)) for j in range(i))
    if coprime:
        out = [1]
        for g in gens:
            d = sum(g)
            out = _pmul(out, [1] + [0] * (d - 1) + [-1])
        return out
    n = len(gens[0])
    counts = [sum(1 for g in gens if g[i]) for i in range(n)]
    j = max(range(n), key=lambda i: counts[i])
    cands = [g for g in gens if g[j] and sum(1 for x in g if x) > 1]
    if not cands:
        # every generator containing x_j is a pure power; pick another variable
        for j in sorted(range(n), key=lambda i: -counts[i]):
            cands = [g for g in gens if g[j] and sum(1 for x in g if x) > 1]
            if cands:
                break
    a = min(g[j] for g in cands)
    P = tuple(a if i == j else 0 for i in range(n))
    plus = list(gens) + [P]
    colon = [tuple(max(x - y, 0) for x, y in zip(g, P)) for g in gens]
    left = hilbert_numerator(plus)
    right = hilbert_numerator(colon)
    return _padd(left, [0] * a + right)


class HilbertPoly:
    """A rational polynomial in t, low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = [mpq(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = coeffs

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def leading_coefficient(self):
        return self.coeffs[-1] if self.coeffs else mpq(0)

    def __call__(self, t):
        acc = mpq(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __eq__(self, other):
        if isinstance(other, HilbertPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (list, tuple)):
            return self == HilbertPoly(other)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            a = abs(c)
            body = str(a) if not mono else (mono if a == 1 else f"{a}*{mono}")
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out

    def __repr__(self):
        return f"HilbertPoly({self})"


def _series_data(numer, n):
    """Reduce N(t)/(1-t)^n to Q(t)/(1-t)^D with Q(1) != 0 (or D = 0)."""
    q = list(numer)
    while q and q[-1] == 0:
        q.pop()
    D = n
    while D > 0 and q and sum(q) == 0:
        # divide by (1 - t): synthetic division at t = 1
        out = []
        acc = 0
        for c in q[:-1]:
            acc += c
            out.append(acc)
        q = out
        D -= 1
    return q, D


def _hilbert_from_numerator(numer, n):
    q, D = _series_data(numer, n)
    if D == 0 or not q:
        return HilbertPoly([]), 0
    # P(t) = sum_i q_i * binom(t - i + D - 1, D - 1)
    total = [mpq(0)]
    fact = factorial(D - 1)
    for i, qi in enumerate(q):
        if not qi:
            continue
        poly = [mpq(1)]
        for k in range(D - 1):
            poly = _pmul(poly, [mpq(-i + D - 1 - k), mpq(1)])
        total = _padd(total, [c * qi / fact for c in poly])
    return HilbertPoly(total), sum(q)


def hilbert_polynomial(I_h):
    """Hilbert polynomial of the graded quotient by a homogeneous ideal."""
    if not is_homogeneous_ideal(I_h):
        raise errors.NotHomogeneous("hilbert_polynomial needs a homogeneous ideal")
    n = I_h.ring.nvars
    leads = I_h.gb().leading_exps() if I_h.gens else []
    return _hilbert_from_numerator(hilbert_numerator(leads), n)[0]


def degree(I):
    """Degree of the projective closure of V(I) (0 for the unit ideal)."""
    n = I.ring.nvars
    leads = [(0,) + e for e in I.gb().leading_exps()] if I.gens else []
    q, D = _series_data(hilbert_numerator(leads), n + 1)
    if D == 0 or not q:
        return 0
    return sum(q)
