"""Univariate polynomials over a field descriptor, with resultants and factorization.

Coefficients are raw field values stored low-to-high with no trailing zeros;
the zero polynomial has an empty tuple and degree -1.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd as igcd

from .errors import UnsupportedField, ZeroPolynomial
from .fields import ExtensionField, Field, PrimeField, Rationals, lift


class UPoly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs=()):
        c = list(coeffs)
        iz = field.is_zero
        while c and iz(c[-1]):
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def from_values(cls, field: Field, values) -> "UPoly":
        return cls(field, [field.convert(v) for v in values])

    @classmethod
    def x(cls, field: Field) -> "UPoly":
        return cls(field, (field.zero, field.one))

    @classmethod
    def const(cls, field: Field, c) -> "UPoly":
        return cls(field, (c,))

    @classmethod
    def one(cls, field: Field) -> "UPoly":
        return cls(field, (field.one,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == self.field.one

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def __eq__(self, other):
        return isinstance(other, UPoly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        fmt = self.field.format
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if self.field.is_zero(c):
                continue
            cs = fmt(c)
            cs = cs if isinstance(cs, str) else "(" + ",".join(cs) + ")"
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if mono and c == self.field.one:
                parts.append(mono)
            else:
                parts.append(cs + ("*" + mono if mono else ""))
        return " + ".join(parts)

    # arithmetic

    def __add__(self, other: "UPoly") -> "UPoly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return UPoly(F, out)

    def __neg__(self) -> "UPoly":
        F = self.field
        return UPoly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other: "UPoly") -> "UPoly":
        return self + (-other)

    def __mul__(self, other) -> "UPoly":
        if not isinstance(other, UPoly):
            return self.scale(self.field.convert(other))
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UPoly(F)
        if isinstance(F, PrimeField):
            p = F.p
            out = [0] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] += ai * bj
            return UPoly(F, [c % p for c in out])
        out = [F.zero] * (len(a) + len(b) - 1)
        add, mul, iz = F.add, F.mul, F.is_zero
        for i, ai in enumerate(a):
            if iz(ai):
                continue
            for j, bj in enumerate(b):
                out[i + j] = add(out[i + j], mul(ai, bj))
        return UPoly(F, out)

    def scale(self, c) -> "UPoly":
        F = self.field
        return UPoly(F, [F.mul(c, x) for x in self.coeffs])

    def shift(self, n: int) -> "UPoly":
        """Multiply by X^n."""
        if not self.coeffs:
            return self
        return UPoly(self.field, (self.field.zero,) * n + self.coeffs)

    def __pow__(self, e: int) -> "UPoly":
        result = UPoly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other: "UPoly"):
        F = self.field
        if other.is_zero():
            raise ZeroPolynomial("division by the zero polynomial")
        b = other.coeffs
        db = len(b) - 1
        r = list(self.coeffs)
        if len(r) <= db:
            return UPoly(F), self
        q = [F.zero] * (len(r) - db)
        if isinstance(F, PrimeField):
            p = F.p
            inv = pow(b[-1], p - 2, p)
            for d in range(len(r) - 1, db - 1, -1):
                c = r[d] % p
                if c:
                    c = c * inv % p
                    q[d - db] = c
                    s = d - db
                    for i, bi in enumerate(b):
                        if bi:
                            r[s + i] -= c * bi
            return UPoly(F, q), UPoly(F, [x % p for x in r[:db]])
        inv = F.inv(b[-1])
        sub, mul, iz = F.sub, F.mul, F.is_zero
        for d in range(len(r) - 1, db - 1, -1):
            c = r[d]
            if iz(c):
                continue
            c = mul(c, inv)
            q[d - db] = c
            s = d - db
            for i, bi in enumerate(b):
                r[s + i] = sub(r[s + i], mul(c, bi))
        return UPoly(F, q), UPoly(F, r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "UPoly":
        if not self.coeffs:
            return self
        return self.scale(self.field.inv(self.lc))

    def __call__(self, x):
        """Evaluate at a raw value of the same field (Horner)."""
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def evaluate_in(self, K: Field, x):
        """Evaluate at a raw value of an extension ``K`` of the coefficient field."""
        F = self.field
        acc = K.zero
        for c in reversed(self.coeffs):
            acc = K.add(K.mul(acc, x), lift(c, F, K))
        return acc

    def lift(self, K: Field) -> "UPoly":
        F = self.field
        if K == F:
            return self
        return UPoly(K, [lift(c, F, K) for c in self.coeffs])

    def derivative(self) -> "UPoly":
        F = self.field
        return UPoly(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs) if i])

    def compose(self, other: "UPoly") -> "UPoly":
        acc = UPoly(self.field)
        for c in reversed(self.coeffs):
            acc = acc * other + UPoly.const(self.field, c)
        return acc

    def taylor_shift(self, a) -> "UPoly":
        """p(X + a)."""
        F = self.field
        c = list(self.coeffs)
        n = len(c)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                c[j] = F.add(c[j], F.mul(a, c[j + 1]))
        return UPoly(F, c)

    def powmod(self, e: int, m: "UPoly") -> "UPoly":
        result = UPoly.one(self.field)
        base = self % m
        while e:
            if e & 1:
                result = (result * base) % m
            e >>= 1
            if e:
                base = (base * base) % m
        return result


def poly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: UPoly, b: UPoly):
    """(g, s, t) with s*a + t*b = g monic."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = UPoly.one(F), UPoly(F)
    t0, t1 = UPoly(F), UPoly.one(F)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = F.inv(r0.lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


# --- resultants -----------------------------------------------------------------

def resultant(f: UPoly, g: UPoly):
    """Res(f, g) = det Sylvester(f, g), by the Euclidean algorithm."""
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("resultant of a zero polynomial")
    return _resultant(f, g)


def _resultant(f: UPoly, g: UPoly):
    F = f.field
    res = F.one
    while g.degree > 0:
        r = f % g
        if r.is_zero():
            return F.zero
        df, dg, dr = f.degree, g.degree, r.degree
        if (df * dg) % 2:
            res = F.neg(res)
        res = F.mul(res, F.pow(g.lc, df - dr))
        f, g = g, r
    return F.mul(res, F.pow(g.lc, f.degree))


def resultant_formal(f: UPoly, g: UPoly, df: int, dg: int):
    """Sylvester determinant taking f, g with formal degrees df >= deg f, dg >= deg g."""
    F = f.field
    if f.is_zero():
        return F.zero if dg > 0 else F.pow(g[0], df)
    if g.is_zero():
        return F.zero if df > 0 else F.pow(f[0], dg)
    a, b = f.degree, g.degree
    if a < df and b < dg:
        return F.zero
    if a < df:
        factor = F.pow(g.lc, df - a)
        if ((df - a) * dg) % 2:
            factor = F.neg(factor)
        return F.mul(factor, _resultant(f, g))
    if b < dg:
        return F.mul(F.pow(f.lc, dg - b), _resultant(f, g))
    return _resultant(f, g)


def sylvester_matrix(f: UPoly, g: UPoly):
    """Rows of the Sylvester matrix (highest power first), raw entries."""
    F = f.field
    m, n = f.degree, g.degree
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([F.zero] * i + fc + [F.zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([F.zero] * i + gc + [F.zero] * (size - n - 1 - i))
    return rows


def interpolate(field: Field, xs, ys) -> UPoly:
    """Newton interpolation through distinct nodes."""
    F = field
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = F.div(F.sub(coef[i], coef[i - 1]), F.sub(xs[i], xs[i - j]))
    poly = UPoly(F, [coef[-1]])
    for i in range(n - 2, -1, -1):
        poly = poly * UPoly(F, [F.neg(xs[i]), F.one]) + UPoly(F, [coef[i]])
    return poly


def from_roots(field: Field, roots) -> UPoly:
    """prod (X - r)^m for (raw root, multiplicity) pairs."""
    F = field
    acc = UPoly.one(F)
    for r, m in roots:
        acc = acc * UPoly(F, [F.neg(r), F.one]) ** m
    return acc


# --- finite field factorization ---------------------------------------------------

def _check_finite(F: Field):
    if not F.is_finite:
        raise UnsupportedField("factorization is only provided over finite fields")


def _pth_root_coeff(F: Field, c):
    # a^(q/p) is the inverse of Frobenius on F_q
    if isinstance(F, PrimeField):
        return c
    return F.pow(c, F.order // F.p)


def squarefree_decomposition(f: UPoly):
    """Monic f -> [(g, i)] with f = prod g^i, the g squarefree and pairwise coprime."""
    F = f.field
    p = F.characteristic
    out: dict[int, UPoly] = {}

    def push(g, i):
        if g.degree > 0:
            out[i] = out[i] * g if i in out else g

    def rec(f, scale):
        if f.degree <= 0:
            return
        d = f.derivative()
        if d.is_zero():
            root = UPoly(F, [_pth_root_coeff(F, f.coeffs[i]) for i in range(0, f.degree + 1, p)])
            rec(root, scale * p)
            return
        c = poly_gcd(f, d)
        w = f // c
        i = 1
        while w.degree > 0:
            y = poly_gcd(w, c)
            push((w // y).monic(), i * scale)
            i += 1
            w = y
            c = c // y
        if c.degree > 0:
            c = c.monic()
            root = UPoly(F, [_pth_root_coeff(F, c.coeffs[i]) for i in range(0, c.degree + 1, p)])
            rec(root, scale * p)

    rec(f.monic(), 1)
    return sorted(((g, i) for i, g in out.items()), key=lambda t: t[1])


def distinct_degree_factorization(f: UPoly):
    """Squarefree monic f -> [(g, d)], g the product of the irreducible factors of degree d."""
    F = f.field
    q = F.order
    x = UPoly.x(F)
    out = []
    h = x % f
    rest = f
    d = 0
    while rest.degree >= 2 * (d + 1):
        d += 1
        h = h.powmod(q, rest)
        g = poly_gcd(h - x, rest)
        if g.degree > 0:
            out.append((g, d))
            rest = rest // g
            h = h % rest
    if rest.degree > 0:
        out.append((rest.monic(), rest.degree))
    return out


def _random_poly(F: Field, deg: int, rng: random.Random) -> UPoly:
    return UPoly(F, [F.random(rng) for _ in range(deg)])


def equal_degree_factorization(f: UPoly, d: int, rng: random.Random):
    """Split a squarefree monic product of degree-d irreducibles (Cantor-Zassenhaus)."""
    if f.degree == d:
        return [f]
    F = f.field
    q = F.order
    while True:
        a = _random_poly(F, f.degree, rng)
        if a.degree <= 0:
            continue
        g = poly_gcd(a, f)
        if 0 < g.degree < f.degree:
            break
        if q % 2:
            b = a.powmod((q ** d - 1) // 2, f) - UPoly.one(F)
        else:
            # absolute trace map to F_2 over F_{q^d}
            bits = d * (q.bit_length() - 1)
            b = a % f
            t = b
            for _ in range(bits - 1):
                t = (t * t) % f
                b = b + t
        g = poly_gcd(b, f)
        if 0 < g.degree < f.degree:
            break
    return equal_degree_factorization(g, d, rng) + equal_degree_factorization(f // g, d, rng)


def _sort_key(g: UPoly):
    return (g.degree, g.coeffs)


def factor_univariate(f: UPoly, seed: int = 0):
    """Monic irreducible factorization over a finite field.

    Returns ``[(factor, multiplicity)]`` sorted by degree then coefficients;
    ``f == f.lc * prod(factor ** multiplicity)``.  Deterministic per seed.
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    _check_finite(f.field)
    rng = random.Random(seed)
    out = []
    for g, i in squarefree_decomposition(f):
        for h, d in distinct_degree_factorization(g):
            for irr in equal_degree_factorization(h, d, rng):
                out.append((irr, i))
    out.sort(key=lambda t: (_sort_key(t[0]), t[1]))
    return out


def is_irreducible(f: UPoly) -> bool:
    _check_finite(f.field)
    F = f.field
    n = f.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    f = f.monic()
    if poly_gcd(f, f.derivative()).degree > 0:
        return False
    x = UPoly.x(F)
    h = x
    for _ in range(n // 2):
        h = h.powmod(F.order, f)
        if poly_gcd(h - x, f).degree > 0:
            return False
    return True


# --- roots ------------------------------------------------------------------------

def _divisors(n: int):
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def _rational_roots(f: UPoly):
    """Rational roots with multiplicity, by the rational root test on the primitive integer form."""
    out = []
    g = f
    zero_mult = 0
    while g.coeffs and g.coeffs[0] == 0:
        g = UPoly(g.field, g.coeffs[1:])
        zero_mult += 1
    if zero_mult:
        out.append((Fraction(0), zero_mult))
    if g.degree <= 0:
        return out
    den = 1
    for c in g.coeffs:
        den = den * c.denominator // igcd(den, c.denominator)
    ints = [int(c * den) for c in g.coeffs]
    cands = set()
    for a in _divisors(ints[0]):
        for b in _divisors(ints[-1]):
            cands.add(Fraction(a, b))
            cands.add(Fraction(-a, b))
    for r in sorted(cands):
        m = 0
        while g.degree > 0 and g(r) == 0:
            g = g // UPoly(g.field, [-r, Fraction(1)])
            m += 1
        if m:
            out.append((r, m))
    return out


def roots(f: UPoly, seed: int = 0):
    """Roots in the coefficient field as [(raw root, multiplicity)]."""
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial vanishes everywhere")
    if isinstance(f.field, Rationals):
        return _rational_roots(f)
    out = []
    for g, m in factor_univariate(f, seed):
        if g.degree == 1:
            out.append((f.field.neg(g.coeffs[0]), m))
    return out


def factor_or_rational(f: UPoly, seed: int = 0):
    """Factorization usable for point location over any supported field.

    Over Q only linear factors can be produced; a remaining factor of higher
    degree raises UnsupportedField.
    """
    if isinstance(f.field, Rationals):
        out = []
        rest = f.monic()
        for r, m in _rational_roots(f):
            lin = UPoly(f.field, [-r, Fraction(1)])
            out.append((lin, m))
            rest = rest // lin ** m
        if rest.degree > 0:
            raise UnsupportedField("polynomial has non-rational roots; number fields are not supported")
        return out
    return factor_univariate(f, seed)


def residue_field(base: Field, q: UPoly) -> tuple[Field, object]:
    """The field generated over ``base`` by a root of the monic irreducible ``q``, and that root."""
    if q.degree == 1:
        return base, base.neg(q.coeffs[0])
    if isinstance(base, PrimeField):
        K = ExtensionField.trusted(base.p, q.coeffs)
        return K, K.generator
    raise UnsupportedField(f"cannot adjoin a degree-{q.degree} root to {base}")


def minimal_polynomial(K: ExtensionField, a) -> UPoly:
    """Minimal polynomial over the prime field of a raw element of K."""
    Fp = K.prime_field
    acc = UPoly.one(K)
    for c in K.conjugates(a):
        acc = acc * UPoly(K, [K.neg(c), K.one])
    return UPoly(Fp, [c[0] for c in acc.coeffs])
