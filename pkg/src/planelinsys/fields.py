"""Exact scalar fields: Q, F_p and F_{p^k}.

A field descriptor does arithmetic on *raw* values:

* ``Rationals``       -> ``fractions.Fraction``
* ``PrimeField(p)``   -> ``int`` in ``[0, p)``
* ``ExtensionField``  -> ``tuple`` of ``k`` ints in ``[0, p)``, low-to-high
  coefficients of a residue modulo the (monic, irreducible) modulus

Raw values are canonical, so equality is ``==`` on the raw value.  Polynomial,
form and matrix code works on raw values for speed; :class:`FieldElement` wraps
a raw value for the public, operator-overloaded API.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import DescriptorMismatch, DivisionByZero, NotIrreducible, NotPrime

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for every n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# --- dense polynomials over F_p as int lists (low-to-high, trimmed) --------------
# Used for extension-field arithmetic and modulus checks, below the UPoly layer.

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim([c % p for c in out])


def _pmod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    for d in range(len(a) - 1, dm - 1, -1):
        c = a[d] % p
        if c:
            c = c * inv % p
            s = d - dm
            for i, mi in enumerate(m):
                a[s + i] -= c * mi
    return _trim([c % p for c in a[:dm]])


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _ppowmod(a, e, m, p):
    result = [1]
    base = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        e >>= 1
        if e:
            base = _pmod(_pmul(base, base, p), m, p)
    return result


def _pinv_mod(a, m, p):
    """Inverse of a modulo m over F_p (extended Euclid)."""
    r0, r1 = list(m), _trim(list(a))
    s0, s1 = [], [1]
    while r1:
        # one division step r0 = q r1 + r
        q = [0] * max(len(r0) - len(r1) + 1, 0)
        r = list(r0)
        inv = pow(r1[-1], p - 2, p)
        dr1 = len(r1) - 1
        for d in range(len(r) - 1, dr1 - 1, -1):
            c = r[d] % p
            if c:
                c = c * inv % p
                q[d - dr1] = c
                for i, bi in enumerate(r1):
                    r[d - dr1 + i] -= c * bi
        r = _trim([c % p for c in r[:dr1]])
        qs = _pmul(q, s1, p)
        n = max(len(s0), len(qs))
        s2 = _trim([((s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0)) % p for i in range(n)])
        r0, r1, s0, s1 = r1, r, s1, s2
    if len(r0) != 1:
        raise DivisionByZero("element is not invertible modulo the given polynomial")
    inv = pow(r0[0], p - 2, p)
    return [c * inv % p for c in s0]


def is_irreducible_mod_p(m, p) -> bool:
    """Ben-Or test for a polynomial over F_p given low-to-high."""
    m = _trim([c % p for c in m])
    k = len(m) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    inv = pow(m[-1], p - 2, p)
    m = [c * inv % p for c in m]
    h = [0, 1]
    for _ in range(k // 2):
        h = _ppowmod(h, p, m, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(m, _trim(diff), p)) > 1:
            return False
    return True


# --- field descriptors ------------------------------------------------------------

class Field:
    """Common interface of the three descriptor kinds."""

    characteristic: int
    degree: int            # degree over the prime field (1 for Q and F_p)

    def __call__(self, value) -> "FieldElement":
        return FieldElement(self, self.convert(value))

    def element(self, raw) -> "FieldElement":
        return FieldElement(self, raw)

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def from_int(self, n: int):
        return self.convert(n)

    def sum(self, values):
        acc = self.zero
        for v in values:
            acc = self.add(acc, v)
        return acc


@dataclass(frozen=True)
class Rationals(Field):
    characteristic = 0
    degree = 1
    order = None

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    @property
    def prime_field(self):
        return self

    def convert(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise DescriptorMismatch(f"{value.field} is not {self}")
            return value.value
        if isinstance(value, str):
            return Fraction(value.strip())
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        raise TypeError(f"cannot convert {value!r} to a rational")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("division by zero in Q")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise DivisionByZero("division by zero in Q")
        return a / b

    def is_zero(self, a):
        return a == 0

    def random(self, rng: random.Random, bound: int = 10):
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    def nth_element(self, i: int):
        # 0, 1, -1, 2, -2, ...
        return Fraction((i + 1) // 2 if i % 2 else -(i // 2))

    def embed(self, raw, source=None):
        return raw

    def format(self, raw):
        return str(raw)

    def parse(self, obj):
        return Fraction(str(obj))

    def to_json(self):
        return {"kind": "Q"}

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class PrimeField(Field):
    p: int

    degree = 1

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")

    @property
    def characteristic(self):
        return self.p

    @property
    def order(self):
        return self.p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    @property
    def prime_field(self):
        return self

    def convert(self, value):
        p = self.p
        if isinstance(value, FieldElement):
            if value.field != self:
                raise DescriptorMismatch(f"{value.field} is not {self}")
            return value.value
        if isinstance(value, bool):
            return int(value)
        if isinstance(value, int):
            return value % p
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, Fraction):
            den = value.denominator % p
            if den == 0:
                raise DivisionByZero(f"denominator {value.denominator} vanishes mod {p}")
            return value.numerator * pow(den, p - 2, p) % p
        raise TypeError(f"cannot convert {value!r} to F_{p}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise DivisionByZero(f"division by zero in F_{self.p}")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        return pow(a, e, self.p)

    def is_zero(self, a):
        return a == 0

    def random(self, rng: random.Random):
        return rng.randrange(self.p)

    def nth_element(self, i: int):
        if i >= self.p:
            raise IndexError("field exhausted")
        return i

    def embed(self, raw, source=None):
        return raw

    def format(self, raw):
        return str(raw)

    def parse(self, obj):
        return self.convert(str(obj))

    def to_json(self):
        return {"kind": "Fp", "p": self.p}

    def __str__(self):
        return f"F_{self.p}"


@dataclass(frozen=True)
class ExtensionField(Field):
    """F_p[t]/(modulus); ``modulus`` is monic, low-to-high, irreducible."""

    p: int
    modulus: tuple

    def __post_init__(self):
        object.__setattr__(self, "modulus", tuple(int(c) % self.p for c in self.modulus))
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        m = self.modulus
        if len(m) < 3:
            raise ValueError("extension degree must be at least 2; use PrimeField for k = 1")
        if m[-1] != 1:
            raise ValueError("modulus must be monic")
        if not _irreducible_cached(self.p, m):
            raise NotIrreducible(f"{list(m)} is reducible over F_{self.p}")

    @classmethod
    def trusted(cls, p: int, modulus) -> "ExtensionField":
        """Skip the irreducibility test; for moduli that come out of a factorization."""
        self = object.__new__(cls)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "modulus", tuple(modulus))
        return self

    @property
    def k(self):
        return len(self.modulus) - 1

    @property
    def degree(self):
        return len(self.modulus) - 1

    @property
    def characteristic(self):
        return self.p

    @property
    def order(self):
        return self.p ** self.k

    @property
    def zero(self):
        return (0,) * self.k

    @property
    def one(self):
        return (1,) + (0,) * (self.k - 1)

    @property
    def generator(self):
        """The class of t."""
        return (0, 1) + (0,) * (self.k - 2)

    @property
    def prime_field(self):
        return PrimeField(self.p)

    @functools.cached_property
    def _reduction(self):
        return [(i, -c % self.p) for i, c in enumerate(self.modulus[:-1]) if c]

    @functools.cached_property
    def _frobenius_images(self):
        # (t^i)^p for i < k, used to apply Frobenius as a linear map
        tp = self.pow(self.generator, self.p)
        images = [self.one]
        for _ in range(1, self.k):
            images.append(self.mul(images[-1], tp))
        return images

    def convert(self, value):
        p, k = self.p, self.k
        if isinstance(value, FieldElement):
            if value.field == self:
                return value.value
            if value.field == PrimeField(p):
                return self.embed(value.value)
            raise DescriptorMismatch(f"{value.field} does not embed in {self}")
        if isinstance(value, (list, tuple)):
            coeffs = [int(Fraction(str(c))) if not isinstance(c, int) else c for c in value]
            if len(coeffs) > k:
                return self.reduce(coeffs)
            return tuple(c % p for c in coeffs) + (0,) * (k - len(coeffs))
        return self.embed(PrimeField(p).convert(value))

    def reduce(self, coeffs):
        a = _pmod([c % self.p for c in coeffs], list(self.modulus), self.p)
        return tuple(a) + (0,) * (self.k - len(a))

    def embed(self, raw, source=None):
        """Image of a prime-field value."""
        if isinstance(raw, tuple):
            return raw
        return (raw % self.p,) + (0,) * (self.k - 1)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        red = self._reduction
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d] % p
            if c:
                s = d - k
                for i, mi in red:
                    prod[s + i] += c * mi
        return tuple(c % p for c in prod[:k])

    def scale(self, a, c: int):
        p = self.p
        return tuple(x * c % p for x in a)

    def inv(self, a):
        if not any(a):
            raise DivisionByZero(f"division by zero in {self}")
        inv = _pinv_mod(list(a), list(self.modulus), self.p)
        return tuple(inv) + (0,) * (self.k - len(inv))

    def is_zero(self, a):
        return not any(a)

    def random(self, rng: random.Random):
        return tuple(rng.randrange(self.p) for _ in range(self.k))

    def nth_element(self, i: int):
        if i >= self.order:
            raise IndexError("field exhausted")
        digits = []
        for _ in range(self.k):
            i, r = divmod(i, self.p)
            digits.append(r)
        return tuple(digits)

    def frobenius(self, a):
        p, k = self.p, self.k
        out = [0] * k
        for c, img in zip(a, self._frobenius_images):
            if c:
                for j, v in enumerate(img):
                    out[j] += c * v
        return tuple(x % p for x in out)

    def conjugates(self, a):
        """The distinct Frobenius conjugates a, a^p, a^{p^2}, ..."""
        orbit = [a]
        b = self.frobenius(a)
        while b != a:
            orbit.append(b)
            b = self.frobenius(b)
        return orbit

    def norm(self, a) -> int:
        acc = self.one
        b = a
        for _ in range(self.k):
            acc = self.mul(acc, b)
            b = self.frobenius(b)
        return acc[0]

    def trace(self, a) -> int:
        acc = self.zero
        b = a
        for _ in range(self.k):
            acc = self.add(acc, b)
            b = self.frobenius(b)
        return acc[0]

    def in_prime_field(self, a) -> bool:
        return not any(a[1:])

    def format(self, raw):
        return [str(c) for c in raw]

    def parse(self, obj):
        if isinstance(obj, (list, tuple)):
            return self.convert([int(c) for c in obj])
        return self.embed(PrimeField(self.p).convert(str(obj)))

    def to_json(self):
        return {"kind": "Fpk", "p": self.p, "k": self.k, "modulus": list(self.modulus)}

    def __str__(self):
        return f"F_{self.p}^{self.k}"


@functools.lru_cache(maxsize=4096)
def _irreducible_cached(p, modulus):
    return is_irreducible_mod_p(list(modulus), p)


QQ = Rationals()


def field_from_json(obj) -> Field:
    kind = obj["kind"]
    if kind == "Q":
        return QQ
    if kind == "Fp":
        return PrimeField(int(obj["p"]))
    if kind == "Fpk":
        modulus = [int(c) for c in obj["modulus"]]
        if "k" in obj and int(obj["k"]) != len(modulus) - 1:
            raise ValueError("k does not match the modulus degree")
        return ExtensionField(int(obj["p"]), tuple(modulus))
    raise ValueError(f"unknown field kind {kind!r}")


def make_extension(p: int, k: int, seed: int = 0) -> ExtensionField:
    """F_{p^k} with a modulus found by seeded random search."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 2:
        raise ValueError("k must be at least 2; use PrimeField(p) for k = 1")
    rng = random.Random(seed)
    while True:
        m = [rng.randrange(p) for _ in range(k)] + [1]
        if m[0] and is_irreducible_mod_p(m, p):
            return ExtensionField(p, tuple(m))


def common_field(a: Field, b: Field) -> Field:
    """The larger of two fields when one embeds in the other."""
    if a == b:
        return a
    if isinstance(a, ExtensionField) and b == PrimeField(a.p):
        return a
    if isinstance(b, ExtensionField) and a == PrimeField(b.p):
        return b
    raise DescriptorMismatch(f"{a} and {b} have no common field here")


def lift(raw, source: Field, target: Field):
    """Map a raw value of ``source`` into ``target`` (identity or prime-field embedding)."""
    if source == target:
        return raw
    if isinstance(target, ExtensionField) and source == PrimeField(target.p):
        return target.embed(raw)
    raise DescriptorMismatch(f"{source} does not embed in {target}")


class FieldElement:
    """An immutable field element with operator overloading."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise DescriptorMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field.convert(other)
        return NotImplemented

    def _wrap(self, raw):
        return FieldElement(self.field, raw)

    def __add__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(b, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def inverse(self):
        return self._wrap(self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self.field.convert(other)
            except DivisionByZero:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f"{self.field}({self.field.format(self.value)})"

    def __str__(self):
        f = self.field.format(self.value)
        return f if isinstance(f, str) else "[" + ",".join(f) + "]"
