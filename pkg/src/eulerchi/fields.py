"""Exact coefficient fields: Q, prime fields F_p and extensions F_{p^k}.

A field object knows how to do arithmetic on its *raw* elements.  Raw
representations are chosen for speed inside the polynomial kernel:

=================  ======================================
field              raw element
=================  ======================================
``Q``              ``gmpy2.mpq``
``F<p>``           ``int`` in ``[0, p)``
``F<p>^<k>``       :class:`ExtFieldElem`
=================  ======================================

``mpq`` and :class:`ExtFieldElem` support the Python operators directly; for
prime fields the kernel reduces ``int`` results modulo ``p`` itself.  For
interactive use, :meth:`PrimeField.elem` wraps residues into
:class:`PrimeFieldElem`, which has operators as well.
"""

import random
import re
from fractions import Fraction

from gmpy2 import mpq, mpz

from . import errors

PRIME_BOUND = 10**6

_FIELD_RE = re.compile(r"^\s*(?:(Q|QQ)|F(\d+)(?:\^(\d+))?)\s*$")


def is_prime(n, bound=PRIME_BOUND):
    """Deterministic trial division by all d <= min(sqrt(n), bound).

    Raises NotPrime when n is too large to be certified with the bound.
    """
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if d > bound:
            raise errors.NotPrime(f"{n} cannot be certified prime by trial division up to {bound}")
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common interface; concrete fields override the arithmetic."""

    characteristic = 0
    degree = 1
    order = None

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e) if not isinstance(a, int) else self.pow(self.inv(a), -e)
        return a ** e

    def is_zero(self, a):
        return not a

    def eq(self, a, b):
        return a == b

    def is_finite(self):
        return self.order is not None

    def __repr__(self):
        return f"<{type(self).__name__} {self.spec}>"

    def __str__(self):
        return self.spec


class RationalField(Field):
    spec = "Q"
    characteristic = 0

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def convert(self, x):
        if isinstance(x, (PrimeFieldElem, ExtFieldElem)):
            raise errors.FieldMismatch(f"cannot map {x!r} into Q")
        if isinstance(x, str):
            return mpq(x.replace(" ", ""))
        return mpq(x)

    def inv(self, a):
        if not a:
            raise errors.DivisionByZero("division by zero in Q")
        return 1 / a

    def div(self, a, b):
        if not b:
            raise errors.DivisionByZero("division by zero in Q")
        return a / b

    def pow(self, a, e):
        if e < 0:
            return self.inv(a) ** (-e)
        return a ** e

    def to_str(self, a):
        return str(a)

    def elem(self, x):
        return self.convert(x)


QQ = RationalField()


class PrimeField(Field):
    """F_p with elements stored as plain ints in [0, p)."""

    degree = 1

    def __init__(self, p, prime_bound=PRIME_BOUND):
        p = int(p)
        if not is_prime(p, prime_bound):
            raise errors.NotPrime(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.order = p
        self.spec = f"F{p}"
        self.zero = 0
        self.one = 1 % p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def convert(self, x):
        p = self.p
        if isinstance(x, PrimeFieldElem):
            if x.field != self:
                raise errors.FieldMismatch(f"{x.field} element used in {self}")
            return x.residue
        if isinstance(x, ExtFieldElem):
            raise errors.FieldMismatch(f"cannot map {x.field} element into {self}")
        if isinstance(x, str):
            x = Fraction(x.replace(" ", ""))
        if isinstance(x, int):
            return x % p
        # rationals: numerator * denominator^-1
        x = mpq(x)
        num, den = int(x.numerator), int(x.denominator)
        if den % p == 0:
            raise errors.DivisionByZero(f"denominator {den} vanishes in {self}")
        return num * pow(den, -1, p) % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise errors.DivisionByZero(f"division by zero in {self}")
        return pow(a, -1, self.p)

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def to_str(self, a):
        return str(a)

    def elements(self):
        return range(self.p)

    def random_element(self, rng):
        return rng.randrange(self.p)

    def elem(self, x):
        return PrimeFieldElem(self.convert(x), self)


class PrimeFieldElem:
    """A residue class mod p with operator support."""

    __slots__ = ("residue", "field")

    def __init__(self, residue, field):
        self.residue = residue % field.p
        self.field = field

    def _other(self, other):
        if isinstance(other, PrimeFieldElem):
            if other.field != self.field:
                raise errors.FieldMismatch(f"{self.field} vs {other.field}")
            return other.residue
        if isinstance(other, int):
            return other % self.field.p
        raise errors.FieldMismatch(f"cannot combine {self.field} element with {other!r}")

    def __add__(self, other):
        return PrimeFieldElem(self.residue + self._other(other), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return PrimeFieldElem(self.residue - self._other(other), self.field)

    def __rsub__(self, other):
        return PrimeFieldElem(self._other(other) - self.residue, self.field)

    def __mul__(self, other):
        return PrimeFieldElem(self.residue * self._other(other), self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElem(-self.residue, self.field)

    def inverse(self):
        return PrimeFieldElem(self.field.inv(self.residue), self.field)

    def __truediv__(self, other):
        return PrimeFieldElem(self.residue * self.field.inv(self._other(other)), self.field)

    def __rtruediv__(self, other):
        return PrimeFieldElem(self._other(other) * self.field.inv(self.residue), self.field)

    def __pow__(self, e):
        return PrimeFieldElem(self.field.pow(self.residue, e), self.field)

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElem):
            return self.field == other.field and self.residue == other.residue
        if isinstance(other, int):
            return self.residue == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.residue))

    def __bool__(self):
        return self.residue != 0

    def __repr__(self):
        return f"{self.residue} (mod {self.field.p})"


# -- dense univariate helpers over F_p used for modulus construction -------

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmulmod(a, b, m, p):
    """a*b mod m for int coefficient lists, m monic."""
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _preduce(prod, m, p)


def _preduce(a, m, p):
    k = len(m) - 1
    a = [x % p for x in a]
    for i in range(len(a) - 1, k - 1, -1):
        c = a[i]
        if c:
            for j in range(k + 1):
                a[i - k + j] = (a[i - k + j] - c * m[j]) % p
    return _ptrim(a[:k] if len(a) > k else a)


def _pgcd(a, b, p):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        bm = [x * inv % p for x in b]
        _, r = _pdivmod(a, bm, p)
        a, b = bm, r
    return a


def _pdivmod(a, b, p):
    a = [x % p for x in a]
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return _ptrim(q), _ptrim(a[:db])


def _xpow_mod(e, m, p):
    """x^e mod m."""
    result = [1]
    base = _preduce([0, 1], m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def is_irreducible_mod_p(m, p):
    """Irreducibility of a monic int-coefficient polynomial over F_p.

    gcd(x^(p^i) - x, m) = 1 for 1 <= i <= k/2 together with
    x^(p^k) = x mod m.
    """
    k = len(m) - 1
    if k <= 0:
        return False
    if k == 1:
        return True
    xp = [0, 1]
    for i in range(1, k // 2 + 1):
        xp = _pmulmod_pow(xp, p, m, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(m, _ptrim(diff), p)
        if len(g) > 1:
            return False
    xq = [0, 1]
    for _ in range(k):
        xq = _pmulmod_pow(xq, p, m, p)
    return _ptrim(list(xq)) == [0, 1]


def _pmulmod_pow(a, e, m, p):
    result = [1]
    base = list(a)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def build_extension(p, k, seed=0):
    """Return an :class:`ExtensionField` F_{p^k} with a seeded random modulus."""
    if not is_prime(p):
        raise errors.NotPrime(f"{p} is not prime")
    if k < 1:
        raise errors.InputError("extension degree must be positive")
    rng = random.Random(f"ext:{p}:{k}:{seed}")
    while True:
        m = [rng.randrange(p) for _ in range(k)] + [1]
        if is_irreducible_mod_p(m, p):
            return ExtensionField(p, k, m)


class ExtensionField(Field):
    """F_p[a]/(m(a)) for a monic irreducible m of degree k."""

    def __init__(self, p, k, modulus, generator_name="a"):
        if not is_prime(p):
            raise errors.NotPrime(f"{p} is not prime")
        modulus = [int(c) % p for c in modulus]
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise errors.InputError("modulus must be monic of degree k")
        if not is_irreducible_mod_p(modulus, p):
            raise errors.InputError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.degree = k
        self.characteristic = p
        self.order = p ** k
        self.modulus = tuple(modulus)
        self.generator_name = generator_name
        self.spec = f"F{p}^{k}" if k > 1 else f"F{p}"
        self.zero = ExtFieldElem((0,) * k, self)
        self.one = ExtFieldElem((1,) + (0,) * (k - 1), self)

    def __eq__(self, other):
        return (isinstance(other, ExtensionField) and other.p == self.p
                and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("Fq", self.p, self.modulus))

    @property
    def generator(self):
        if self.k == 1:
            return ExtFieldElem(((-self.modulus[0]) % self.p,), self)
        return ExtFieldElem((0, 1) + (0,) * (self.k - 2), self)

    def from_coeffs(self, coeffs):
        coeffs = [int(c) % self.p for c in coeffs]
        if len(coeffs) > self.k:
            coeffs = _preduce(coeffs, list(self.modulus), self.p)
        coeffs = list(coeffs) + [0] * (self.k - len(coeffs))
        return ExtFieldElem(tuple(coeffs), self)

    def convert(self, x):
        if isinstance(x, ExtFieldElem):
            if x.field != self:
                raise errors.FieldMismatch(f"{x.field} element used in {self}")
            return x
        if isinstance(x, PrimeFieldElem):
            if x.field.p != self.p:
                raise errors.FieldMismatch(f"{x.field} element used in {self}")
            x = x.residue
        c = PrimeField(self.p).convert(x)
        return ExtFieldElem((c,) + (0,) * (self.k - 1), self)

    def inv(self, a):
        if not a:
            raise errors.DivisionByZero(f"division by zero in {self}")
        return a ** (self.order - 2)

    def div(self, a, b):
        return a * self.inv(b)

    def pow(self, a, e):
        if e < 0:
            return self.inv(a) ** (-e)
        return a ** e

    def to_str(self, a):
        return str(a)

    def elements(self):
        p, k = self.p, self.k
        for n in range(self.order):
            coeffs = []
            for _ in range(k):
                coeffs.append(n % p)
                n //= p
            yield ExtFieldElem(tuple(coeffs), self)

    def random_element(self, rng):
        return ExtFieldElem(tuple(rng.randrange(self.p) for _ in range(self.k)), self)

    def elem(self, x):
        return self.convert(x)

    def frobenius(self, e, i=1):
        return frobenius(e, i)


class ExtFieldElem:
    """Element of F_{p^k}: coefficient tuple in the generator, low degree first."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs, field):
        self.coeffs = coeffs
        self.field = field

    def _lift(self, other):
        if isinstance(other, ExtFieldElem):
            if other.field is not self.field and other.field != self.field:
                raise errors.FieldMismatch(f"{self.field} vs {other.field}")
            return other.coeffs
        if isinstance(other, (int, PrimeFieldElem)):
            return self.field.convert(other).coeffs
        raise errors.FieldMismatch(f"cannot combine {self.field} element with {other!r}")

    def __add__(self, other):
        p = self.field.p
        b = self._lift(other)
        return ExtFieldElem(tuple((x + y) % p for x, y in zip(self.coeffs, b)), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        p = self.field.p
        b = self._lift(other)
        return ExtFieldElem(tuple((x - y) % p for x, y in zip(self.coeffs, b)), self.field)

    def __rsub__(self, other):
        p = self.field.p
        b = self._lift(other)
        return ExtFieldElem(tuple((y - x) % p for x, y in zip(self.coeffs, b)), self.field)

    def __neg__(self):
        p = self.field.p
        return ExtFieldElem(tuple(-x % p for x in self.coeffs), self.field)

    def __mul__(self, other):
        f = self.field
        b = self._lift(other)
        a = self.coeffs
        k, p = f.k, f.p
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        m = f.modulus
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(k):
                    prod[i - k + j] -= c * m[j]
        return ExtFieldElem(tuple(x % p for x in prod[:k]), f)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self.field.inv(self.field.convert(other))

    def __rtruediv__(self, other):
        return self.field.convert(other) * self.field.inv(self)

    def __pow__(self, e):
        if e < 0:
            return self.field.inv(self) ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, ExtFieldElem):
            return self.coeffs == other.coeffs and self.field == other.field
        if isinstance(other, (int, PrimeFieldElem)):
            try:
                return self.coeffs == self.field.convert(other).coeffs
            except errors.FieldMismatch:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return str(self)

    def __str__(self):
        g = self.field.generator_name
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = g if i == 1 else f"{g}^{i}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts) if parts else "0"


def frobenius(e, i=1):
    """e^(p^i)."""
    if i < 0:
        raise errors.InputError("Frobenius power must be non-negative")
    if isinstance(e, ExtFieldElem):
        p = e.field.p
        i %= e.field.k
    elif isinstance(e, PrimeFieldElem):
        return e
    else:
        return e
    for _ in range(i):
        e = e ** p
    return e


def in_subfield(e, d):
    """True iff e lies in the subfield F_{p^d} of its field."""
    k = e.field.k if isinstance(e, ExtFieldElem) else 1
    if d < 1 or k % d:
        raise errors.NotADivisor(f"{d} does not divide the extension degree {k}")
    return frobenius(e, d) == e


def field_from_spec(spec, seed=0):
    """Parse ``Q``, ``F<p>`` or ``F<p>^<k>``."""
    m = _FIELD_RE.match(spec)
    if not m:
        raise errors.BadFieldSpec(f"bad field specifier {spec!r}")
    if m.group(1):
        return QQ
    p = int(m.group(2))
    try:
        if not is_prime(p):
            raise errors.BadFieldSpec(f"{p} is not prime")
    except errors.NotPrime as exc:
        raise errors.BadFieldSpec(str(exc)) from exc
    k = int(m.group(3)) if m.group(3) else 1
    if k < 1:
        raise errors.BadFieldSpec("extension degree must be positive")
    if k == 1:
        return PrimeField(p)
    return build_extension(p, k, seed)


def prime_subfield(field):
    if field.characteristic == 0:
        return QQ
    return PrimeField(field.characteristic)


__all__ = [
    "QQ", "RationalField", "PrimeField", "PrimeFieldElem", "ExtensionField",
    "ExtFieldElem", "build_extension", "frobenius", "in_subfield",
    "field_from_spec", "is_prime", "is_irreducible_mod_p", "mpq", "mpz",
]
