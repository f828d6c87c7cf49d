"""Sparse multivariate polynomials and monomial orders.

A :class:`Poly` is a map from exponent tuples to nonzero raw field elements,
tagged with a :class:`PolyRing` (field plus ordered variable names).
Polynomials are immutable values.

Monomial orders are encoded by a *key*: a tuple of integers, linear in the
exponent vector, such that sorting keys in ascending order lists monomials
from largest to smallest.  Linearity lets the kernel compute the key of a
product as the sum of keys.
"""

from operator import add

from . import errors
from .fields import PrimeField


class MonomialOrder:
    """lex, grevlex, or a block order.

    A block order is given by block sizes; blocks are compared in sequence,
    each by grevlex, so any monomial involving the first block exceeds every
    monomial free of it.  ``block(k)`` has blocks ``(k, rest)``.
    """

    __slots__ = ("kind", "blocks", "_name")

    def __init__(self, kind, blocks=None):
        if kind not in ("lex", "grevlex", "block"):
            raise errors.InputError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.blocks = tuple(blocks) if blocks is not None else None
        if kind == "block":
            if not self.blocks or any(b < 0 for b in self.blocks):
                raise errors.InputError("block order needs non-negative block sizes")
            self._name = "block(" + ",".join(map(str, self.blocks)) + ")"
        else:
            self._name = kind

    def key(self, e):
        if self.kind == "grevlex":
            return (-sum(e),) + tuple(reversed(e))
        if self.kind == "lex":
            return tuple(-x for x in e)
        out = []
        start = 0
        for size in self.blocks:
            part = e[start:start + size]
            out.append(-sum(part))
            out.extend(reversed(part))
            start += size
        if start < len(e):
            part = e[start:]
            out.append(-sum(part))
            out.extend(reversed(part))
        return tuple(out)

    def keyfn(self, n):
        """A fast key function specialised to n variables."""
        if self.kind == "grevlex":
            def k(e):
                return (-sum(e),) + e[::-1]
            return k
        if self.kind == "lex":
            def k(e):
                return tuple([-x for x in e])
            return k
        return self.key

    def compare(self, a, b):
        """-1, 0 or 1 for a < b, a == b, a > b."""
        if len(a) != len(b):
            raise errors.AmbientMismatch("exponent vectors of different length")
        ka, kb = self.key(a), self.key(b)
        if ka == kb:
            return 0
        return 1 if ka < kb else -1

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self._name == other._name

    def __hash__(self):
        return hash(self._name)

    def __repr__(self):
        return self._name


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block(*sizes):
    return MonomialOrder("block", sizes)


def compare(order, a, b):
    return order.compare(a, b)


class PolyRing:
    """k[x_1, ..., x_n] with named variables."""

    __slots__ = ("field", "vars", "nvars", "_index", "p", "_zero_exp")

    def __init__(self, field, variables):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise errors.VariableClash(f"repeated variable in {variables}")
        self.field = field
        self.vars = variables
        self.nvars = len(variables)
        self._index = {v: i for i, v in enumerate(variables)}
        self.p = field.p if isinstance(field, PrimeField) else 0
        self._zero_exp = (0,) * self.nvars

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.vars == other.vars
                and self.field == other.field)

    def __hash__(self):
        return hash((self.vars, self.field))

    def __repr__(self):
        return f"{self.field}[{', '.join(self.vars)}]"

    def index(self, v):
        if isinstance(v, int):
            if not 0 <= v < self.nvars:
                raise errors.UnknownVariable(f"variable index {v} out of range")
            return v
        try:
            return self._index[v]
        except KeyError:
            raise errors.UnknownVariable(f"unknown variable {v!r}") from None

    def zero(self):
        return Poly(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c = self.field.convert(c)
        return Poly(self, {self._zero_exp: c} if c else {})

    def gen(self, v):
        i = self.index(v)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exp, c=1):
        c = self.field.convert(c)
        return Poly(self, {tuple(exp): c} if c else {})

    def from_dict(self, terms):
        """Build from exponent -> scalar, converting and dropping zeros."""
        conv = self.field.convert
        out = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != self.nvars:
                raise errors.AmbientMismatch("exponent length differs from ring size")
            c = conv(c)
            if c:
                out[e] = c
        return Poly(self, out)

    def parse(self, text):
        from .parsing import parse_polynomial
        return parse_polynomial(text, self)

    def with_field(self, field):
        return PolyRing(field, self.vars)

    def extend(self, names, front=False):
        names = tuple(names)
        for v in names:
            if v in self._index:
                raise errors.VariableClash(f"variable {v!r} already in ring")
        return PolyRing(self.field, names + self.vars if front else self.vars + names)

    def subring(self, keep):
        return PolyRing(self.field, [self.vars[self.index(v)] for v in keep])

    def fresh_name(self, base="t"):
        name = base
        i = 0
        while name in self._index:
            i += 1
            name = f"{base}{i}"
        return name


class Poly:
    """Immutable sparse polynomial."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                if other.ring.field != self.ring.field:
                    raise errors.FieldMismatch(f"{self.ring.field} vs {other.ring.field}")
                raise errors.AmbientMismatch(f"{self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        p = self.ring.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if p:
                    v %= p
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        if p:
            return Poly(self.ring, {e: (-c) % p for e, c in self.terms.items()})
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(self.ring.field.convert(other))
        other = self._coerce(other)
        p = self.ring.p
        out = {}
        get = out.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(map(add, e1, e2))
                v = get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c):
        """Multiply by a raw field element."""
        if not c:
            return self.ring.zero()
        p = self.ring.p
        if p:
            return Poly(self.ring, {e: v * c % p for e, v in self.terms.items()})
        return Poly(self.ring, {e: v * c for e, v in self.terms.items()})

    def mul_term(self, exp, c):
        p = self.ring.p
        if p:
            return Poly(self.ring, {tuple(map(add, e, exp)): v * c % p for e, v in self.terms.items()})
        return Poly(self.ring, {tuple(map(add, e, exp)): v * c for e, v in self.terms.items()})

    def __pow__(self, n):
        if n < 0:
            raise errors.InputError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self.terms == self.ring.const(other).terms
        except errors.EulerChiError:
            return False

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and self.ring._zero_exp in self.terms)

    def constant_term(self):
        return self.terms.get(self.ring._zero_exp, self.ring.field.zero)

    # -- degrees and leading data ----------------------------------------

    def total_degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(map(sum, self.terms))

    def degree_in(self, v):
        i = self.ring.index(v)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def leading_exp(self, order=GREVLEX):
        if not self.terms:
            raise errors.ZeroPolynomial("zero polynomial has no leading term")
        return min(self.terms, key=order.key)

    def leading_coeff(self, order=GREVLEX):
        return self.terms[self.leading_exp(order)]

    def monic(self, order=GREVLEX):
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coeff(order)))

    def sorted_terms(self, order=GREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]))

    def support_vars(self):
        """Indices of variables that occur."""
        used = [False] * self.ring.nvars
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used[i] = True
        return [i for i, u in enumerate(used) if u]

    def is_homogeneous(self):
        return len(set(map(sum, self.terms))) <= 1

    # -- calculus and substitution ----------------------------------------

    def diff(self, v):
        i = self.ring.index(v)
        conv = self.ring.field.convert
        p = self.ring.p
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if not k:
                continue
            d = c * conv(k)
            if p:
                d %= p
            if d:
                ne = list(e)
                ne[i] = k - 1
                out[tuple(ne)] = d
        return Poly(self.ring, out)

    def evaluate(self, point):
        """Exact value at a point given as raw or convertible scalars."""
        ring = self.ring
        if len(point) != ring.nvars:
            raise errors.AmbientMismatch("point has the wrong number of coordinates")
        f = ring.field
        pt = [f.convert(x) for x in point]
        acc = f.zero
        for e, c in self.terms.items():
            t = c
            for x, k in zip(pt, e):
                if k:
                    t = f.mul(t, f.pow(x, k))
            acc = f.add(acc, t)
        return acc

    def subs(self, v, value):
        """Substitute a scalar for one variable (ambient unchanged)."""
        i = self.ring.index(v)
        f = self.ring.field
        value = f.convert(value)
        p = self.ring.p
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                c = f.mul(c, f.pow(value, k))
                if not c:
                    continue
                e = e[:i] + (0,) + e[i + 1:]
            v0 = out.get(e)
            out[e] = c if v0 is None else v0 + c
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        return Poly(self.ring, out)

    def compose(self, images, ring=None):
        """Substitute polynomial images (one per variable) into self."""
        ring = ring or (images[0].ring if images else self.ring)
        if len(images) != self.ring.nvars:
            raise errors.AmbientMismatch("need one image per variable")
        powers = [{0: ring.one(), 1: g} for g in images]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = images[i] ** k
            return cache[k]

        acc = {}
        for e, c in self.terms.items():
            t = None
            for i, k in enumerate(e):
                if k:
                    t = power(i, k) if t is None else t * power(i, k)
            if t is None:
                t = ring.one()
            for te, tc in t.terms.items():
                v = acc.get(te)
                acc[te] = tc * c if v is None else v + tc * c
        p = ring.p
        if p:
            acc = {e: c % p for e, c in acc.items() if c % p}
        else:
            acc = {e: c for e, c in acc.items() if c}
        return Poly(ring, acc)

    def apply_linear(self, A):
        """f(A x): x_i is replaced by sum_j A[i][j] x_j."""
        ring = self.ring
        n = ring.nvars
        if len(A) != n or any(len(row) != n for row in A):
            raise errors.AmbientMismatch("matrix size must equal the number of variables")
        f = ring.field
        M = [[f.convert(a) for a in row] for row in A]
        if is_singular(M, f):
            raise errors.SingularMatrix("change of variables is not invertible")
        gens = ring.gens()
        images = []
        for row in M:
            g = ring.zero()
            for j, a in enumerate(row):
                if a:
                    g = g + gens[j].scale(a)
            images.append(g)
        return self.compose(images, ring)

    def embed(self, ring, mapping=None):
        """Move to another ring by variable name (or explicit index mapping)."""
        if mapping is None:
            mapping = [ring.index(v) for v in self.ring.vars]
        n = ring.nvars
        used = self.support_vars()
        for i in used:
            if mapping[i] is None:
                raise errors.UnknownVariable(f"variable {self.ring.vars[i]!r} not in target ring")
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i in used:
                ne[mapping[i]] += e[i]
            out[tuple(ne)] = c
        return Poly(ring, out)

    def homogenize(self, x0="x0"):
        """Homogenize with a new variable prepended at position 0."""
        ring = self.ring.extend([x0], front=True)
        if not self.terms:
            return ring.zero()
        d = self.total_degree()
        return Poly(ring, {(d - sum(e),) + e: c for e, c in self.terms.items()})

    def dehomogenize(self, x0, value=1):
        """Set x0 to 0 or 1 and drop it from the ambient."""
        i = self.ring.index(x0)
        rest = self.ring.vars[:i] + self.ring.vars[i + 1:]
        ring = PolyRing(self.ring.field, rest)
        g = self.subs(i, value)
        return Poly(ring, {e[:i] + e[i + 1:]: c for e, c in g.terms.items()})

    def to_univariate(self, v):
        """Dense coefficient list if only variable v occurs."""
        i = self.ring.index(v)
        f = self.ring.field
        if not self.terms:
            return []
        out = [f.zero] * (self.degree_in(i) + 1)
        for e, c in self.terms.items():
            if any(x for j, x in enumerate(e) if j != i):
                raise errors.InputError("polynomial is not univariate in the given variable")
            out[e[i]] = c
        return out

    @classmethod
    def from_univariate(cls, coeffs, ring, v):
        i = ring.index(v)
        out = {}
        for k, c in enumerate(coeffs):
            if c:
                e = [0] * ring.nvars
                e[i] = k
                out[tuple(e)] = c
        return cls(ring, out)

    # -- printing ---------------------------------------------------------

    def to_str(self, order=GREVLEX):
        if not self.terms:
            return "0"
        names = self.ring.vars
        f = self.ring.field
        pieces = []
        for e, c in self.sorted_terms(order):
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            cs = f.to_str(c)
            neg = False
            if self.ring.p == 0 and not hasattr(c, "coeffs") and c < 0:
                neg = True
                cs = f.to_str(-c)
            if "+" in cs or " " in cs:
                cs = f"({cs})"
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            pieces.append(("-" if neg else "+", body))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Poly({self.to_str()!r})"


def is_singular(M, field):
    """Gaussian elimination rank test over the field."""
    n = len(M)
    A = [list(r) for r in M]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            return True
        A[col], A[piv] = A[piv], A[col]
        inv = field.inv(A[col][col])
        for r in range(col + 1, n):
            if A[r][col]:
                factor = field.mul(A[r][col], inv)
                A[r] = [field.sub(a, field.mul(factor, b)) for a, b in zip(A[r], A[col])]
    return False


def invert_matrix(M, field):
    n = len(M)
    A = [[field.convert(a) for a in row] + [field.one if i == j else field.zero for j in range(n)]
         for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            raise errors.SingularMatrix("matrix is singular")
        A[col], A[piv] = A[piv], A[col]
        inv = field.inv(A[col][col])
        A[col] = [field.mul(a, inv) for a in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                factor = A[r][col]
                A[r] = [field.sub(a, field.mul(factor, b)) for a, b in zip(A[r], A[col])]
    return [row[n:] for row in A]


def differentiate(f, v):
    return f.diff(v)


def apply_linear(f, A):
    return f.apply_linear(A)


def homogenize_poly(f, x0="x0"):
    return f.homogenize(x0)


def dehomogenize(f, x0, value=1):
    return f.dehomogenize(x0, value)


def evaluate(f, point):
    return f.evaluate(point)


def is_homogeneous(f):
    return f.is_homogeneous()

