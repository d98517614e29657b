"""Homogeneous forms in three and two variables, truncated power series, and local
branch data of a plane curve at a smooth point.

A plane curve of degree m is a :class:`TernaryForm`: a sparse map from exponent
triples (i, j, k), i + j + k = m, to raw coefficients of x^i y^j z^k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import (DegreeMismatch, DuplicateRoots, PointNotOnCurve, SingularPoint,
                     ZeroPolynomial)
from .fields import Field, FieldElement, PrimeField, field_from_json, lift
from .upoly import UPoly, from_roots, resultant  # noqa: F401  (resultant re-exported)

INFINITE = math.inf
VARS = ("x", "y", "z")


def monomials(m: int):
    """Exponent triples of degree m in the fixed column order: x-power descending, then y."""
    return [(i, j, m - i - j) for i in range(m, -1, -1) for j in range(m - i, -1, -1)]


def num_monomials(m: int) -> int:
    return (m + 1) * (m + 2) // 2


class TernaryForm:
    __slots__ = ("field", "degree", "terms")

    def __init__(self, field: Field, degree: int, terms=None):
        iz = field.is_zero
        clean = {}
        for e, c in (terms or {}).items():
            if sum(e) != degree:
                raise ValueError(f"exponent {e} does not have degree {degree}")
            if not iz(c):
                clean[tuple(e)] = c
        self.field = field
        self.degree = degree
        self.terms = clean

    @classmethod
    def from_coeffs(cls, field: Field, degree: int, coeffs) -> "TernaryForm":
        return cls(field, degree, {tuple(e): field.convert(c) for e, c in coeffs.items()})

    @classmethod
    def from_vector(cls, field: Field, degree: int, vec) -> "TernaryForm":
        return cls(field, degree, dict(zip(monomials(degree), vec)))

    @classmethod
    def zero(cls, field: Field, degree: int) -> "TernaryForm":
        return cls(field, degree, {})

    @classmethod
    def constant(cls, field: Field, c=1) -> "TernaryForm":
        return cls(field, 0, {(0, 0, 0): field.convert(c)})

    @classmethod
    def variable(cls, field: Field, i: int) -> "TernaryForm":
        e = [0, 0, 0]
        e[i] = 1
        return cls(field, 1, {tuple(e): field.one})

    @classmethod
    def linear(cls, field: Field, a, b, c) -> "TernaryForm":
        return cls.from_coeffs(field, 1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, e):
        return self.terms.get(tuple(e), self.field.zero)

    def vector(self):
        z = self.field.zero
        return [self.terms.get(e, z) for e in monomials(self.degree)]

    def __eq__(self, other):
        return (isinstance(other, TernaryForm) and self.field == other.field
                and self.degree == other.degree and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field, self.degree, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return f"0 (degree {self.degree})"
        parts = []
        for e in monomials(self.degree):
            if e not in self.terms:
                continue
            c = self.field.format(self.terms[e])
            c = c if isinstance(c, str) else "(" + ",".join(c) + ")"
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(VARS, e) if k)
            parts.append(c if not mono else (mono if c == "1" else f"{c}*{mono}"))
        return " + ".join(parts)

    # arithmetic

    def _check(self, other):
        if other.field != self.field:
            from .errors import DescriptorMismatch
            raise DescriptorMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: "TernaryForm") -> "TernaryForm":
        self._check(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if other.degree != self.degree:
            raise DegreeMismatch("cannot add forms of different degrees")
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = F.add(out[e], c) if e in out else c
        return TernaryForm(F, self.degree, out)

    def __neg__(self) -> "TernaryForm":
        F = self.field
        return TernaryForm(F, self.degree, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TernaryForm":
        F = self.field
        return TernaryForm(F, self.degree, {e: F.mul(c, v) for e, v in self.terms.items()})

    def __mul__(self, other) -> "TernaryForm":
        if isinstance(other, FieldElement):
            return self.scale(self.field.convert(other))
        if isinstance(other, int):
            return self.scale(self.field.from_int(other))
        self._check(other)
        F = self.field
        out: dict = {}
        if isinstance(F, PrimeField):
            p = F.p
            for (a1, b1, c1), u in self.terms.items():
                for (a2, b2, c2), v in other.terms.items():
                    e = (a1 + a2, b1 + b2, c1 + c2)
                    out[e] = out.get(e, 0) + u * v
            out = {e: c % p for e, c in out.items()}
        else:
            add, mul = F.add, F.mul
            for (a1, b1, c1), u in self.terms.items():
                for (a2, b2, c2), v in other.terms.items():
                    e = (a1 + a2, b1 + b2, c1 + c2)
                    out[e] = add(out[e], mul(u, v)) if e in out else mul(u, v)
        return TernaryForm(F, self.degree + other.degree, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "TernaryForm":
        result = TernaryForm.constant(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def lift(self, K: Field) -> "TernaryForm":
        F = self.field
        if K == F:
            return self
        return TernaryForm(K, self.degree, {e: lift(c, F, K) for e, c in self.terms.items()})

    def __call__(self, point):
        """Value at a point given as a raw coordinate triple of the form's field."""
        return self.evaluate_raw(self.field, point)

    def evaluate_raw(self, K: Field, point):
        """Value at a raw coordinate triple over K (an extension of the form's field)."""
        F = self.field
        d = self.degree
        pw = []
        for c in point:
            row = [K.one]
            for _ in range(d):
                row.append(K.mul(row[-1], c))
            pw.append(row)
        acc = K.zero
        same = K == F
        for (i, j, k), c in self.terms.items():
            cc = c if same else lift(c, F, K)
            acc = K.add(acc, K.mul(cc, K.mul(pw[0][i], K.mul(pw[1][j], pw[2][k]))))
        return acc

    def evaluate(self, point) -> FieldElement:
        """Value at a ProjPoint (or anything with .field and raw .coords)."""
        K = point.field
        return FieldElement(K, self.evaluate_raw(K, point.coords))

    def partial(self, i: int) -> "TernaryForm":
        F = self.field
        if self.degree == 0:
            return TernaryForm.zero(F, 0)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                v = F.mul(F.from_int(e[i]), c)
                if not F.is_zero(v):
                    out[tuple(ne)] = v
        return TernaryForm(F, self.degree - 1, out)

    def gradient(self):
        return tuple(self.partial(i) for i in range(3))

    def shear(self, i: int, j: int, c) -> "TernaryForm":
        """F with x_i replaced by x_i + c x_j."""
        F = self.field
        cp = [F.one]
        for _ in range(self.degree):
            cp.append(F.mul(cp[-1], c))
        out: dict = {}
        for e, v in self.terms.items():
            n = e[i]
            for l in range(n + 1):
                ne = list(e)
                ne[i] = l
                ne[j] += n - l
                ne = tuple(ne)
                w = F.mul(v, F.mul(F.from_int(math.comb(n, l)), cp[n - l]))
                out[ne] = F.add(out[ne], w) if ne in out else w
        return TernaryForm(F, self.degree, out)

    def substitute(self, M) -> "TernaryForm":
        """The form p -> F(M p) for a 3x3 raw matrix M."""
        F = self.field
        images = [TernaryForm(F, 1, {(1, 0, 0): M[i][0], (0, 1, 0): M[i][1], (0, 0, 1): M[i][2]})
                  for i in range(3)]
        powers = []
        for L in images:
            row = [TernaryForm.constant(F)]
            for _ in range(self.degree):
                row.append(row[-1] * L)
            powers.append(row)
        acc = TernaryForm.zero(F, self.degree)
        for (a, b, c), v in self.terms.items():
            acc = acc + (powers[0][a] * powers[1][b] * powers[2][c]).scale(v)
        return acc

    def affine_y_poly(self, K: Field, x0) -> UPoly:
        """F(x0, y, 1) as a polynomial in y over K."""
        F = self.field
        d = self.degree
        xp = [K.one]
        for _ in range(d):
            xp.append(K.mul(xp[-1], x0))
        coeffs = [K.zero] * (d + 1)
        same = K == F
        for (i, j, k), c in self.terms.items():
            cc = c if same else lift(c, F, K)
            coeffs[j] = K.add(coeffs[j], K.mul(cc, xp[i]))
        return UPoly(K, coeffs)

    def on_line_z0(self) -> UPoly:
        """F(x, 1, 0) as a polynomial in x."""
        F = self.field
        coeffs = [F.zero] * (self.degree + 1)
        for (i, j, k), c in self.terms.items():
            if k == 0:
                coeffs[i] = c
        return UPoly(F, coeffs)

    # serialization

    def to_json(self):
        fmt = self.field.format
        terms = [{"e": list(e), "c": fmt(self.terms[e])} for e in monomials(self.degree) if e in self.terms]
        return {"field": self.field.to_json(), "degree": self.degree, "terms": terms}

    @classmethod
    def from_json(cls, obj, field: Field | None = None) -> "TernaryForm":
        if field is None:
            field = field_from_json(obj["field"])
        return cls(field, int(obj["degree"]),
                   {tuple(int(v) for v in t["e"]): field.parse(t["c"]) for t in obj["terms"]})


class BinaryForm:
    """Homogeneous form in (s, t); ``coeffs[k]`` multiplies s^(degree-k) t^k."""

    __slots__ = ("field", "degree", "coeffs")

    def __init__(self, field: Field, degree: int, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) != degree + 1:
            raise ValueError("binary form needs degree + 1 coefficients")
        self.field = field
        self.degree = degree
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_values(cls, field, values):
        return cls(field, len(values) - 1, [field.convert(v) for v in values])

    def is_zero(self):
        return all(self.field.is_zero(c) for c in self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, BinaryForm) and self.field == other.field
                and self.degree == other.degree and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"BinaryForm({[self.field.format(c) for c in self.coeffs]})"

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        F = self.field
        out = [F.zero] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
        return BinaryForm(F, self.degree + other.degree, out)

    def __add__(self, other):
        F = self.field
        return BinaryForm(F, self.degree, [F.add(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, c):
        F = self.field
        return BinaryForm(F, self.degree, [F.mul(c, a) for a in self.coeffs])

    def dehomogenize(self) -> UPoly:
        """The polynomial in t obtained by s = 1."""
        return UPoly(self.field, self.coeffs)

    def root_at_infinity(self) -> int:
        """Multiplicity of (s:t) = (0:1)."""
        return self.degree - self.dehomogenize().degree


def restrict(F: TernaryForm, A, B, K: Field | None = None) -> BinaryForm:
    """F(s*A + t*B) for raw coordinate triples A, B over K (default: F's field)."""
    K = K or F.field
    d = F.degree
    lin = [[A[i], B[i]] for i in range(3)]
    powers = []
    for L in lin:
        row = [[K.one]]
        for _ in range(d):
            prev = row[-1]
            nxt = [K.zero] * (len(prev) + 1)
            for k, c in enumerate(prev):
                nxt[k] = K.add(nxt[k], K.mul(c, L[0]))
                nxt[k + 1] = K.add(nxt[k + 1], K.mul(c, L[1]))
            row.append(nxt)
        powers.append(row)
    out = [K.zero] * (d + 1)
    same = K == F.field
    for (a, b, c), v in F.terms.items():
        vv = v if same else lift(v, F.field, K)
        pa, pb, pc = powers[0][a], powers[1][b], powers[2][c]
        ab = [K.zero] * (a + b + 1)
        for i, x in enumerate(pa):
            for j, y in enumerate(pb):
                ab[i + j] = K.add(ab[i + j], K.mul(x, y))
        for i, x in enumerate(ab):
            if K.is_zero(x):
                continue
            xv = K.mul(x, vv)
            for j, y in enumerate(pc):
                out[i + j] = K.add(out[i + j], K.mul(xv, y))
    return BinaryForm(K, d, out)


def restrict_to_line(F: TernaryForm, line) -> BinaryForm:
    """Restriction of F to a line, in the line's parametrization (s:t) -> s*A + t*B.

    The result is the zero form exactly when the line is a component of F.
    """
    A, B = line.param()
    return restrict(F.lift(line.field) if line.field != F.field else F, A, B, line.field)


class RootReconstruction(NamedTuple):
    poly: UPoly
    a0: FieldElement
    a_top: FieldElement


def reconstruct_from_roots(roots, m: int) -> RootReconstruction:
    """Monic prod (X - X_j)^{m_j} of degree m with its constant and subleading coefficients.

    ``a0 == (-1)^m prod X_j^{m_j}`` and ``a_top == -sum m_j X_j`` are checked on the
    expanded polynomial before returning.
    """
    if m < 1:
        raise DegreeMismatch("degree must be at least 1")
    if sum(mj for _, mj in roots) != m:
        raise DegreeMismatch(f"multiplicities sum to {sum(mj for _, mj in roots)}, expected {m}")
    if any(mj < 1 for _, mj in roots):
        raise DegreeMismatch("multiplicities must be positive")
    F = roots[0][0].field
    raw = [(F.convert(r), mj) for r, mj in roots]
    if len({r for r, _ in raw}) != len(raw):
        raise DuplicateRoots("roots must be pairwise distinct")
    poly = from_roots(F, raw)
    prod = F.one
    total = F.zero
    for r, mj in raw:
        prod = F.mul(prod, F.pow(r, mj))
        total = F.add(total, F.mul(F.from_int(mj), r))
    a0 = prod if m % 2 == 0 else F.neg(prod)
    a_top = F.neg(total)
    assert poly[0] == a0 and poly[m - 1] == a_top and poly.degree == m
    return RootReconstruction(poly, FieldElement(F, a0), FieldElement(F, a_top))


class TruncatedSeries:
    """c_0 + c_1 t + ... + c_{N-1} t^{N-1} + O(t^N)."""

    __slots__ = ("field", "order", "coeffs")

    def __init__(self, field: Field, order: int, coeffs=()):
        c = list(coeffs)[:order]
        c += [field.zero] * (order - len(c))
        self.field = field
        self.order = order
        self.coeffs = c

    @classmethod
    def constant(cls, field, c, order):
        return cls(field, order, [c])

    @classmethod
    def from_poly(cls, poly: UPoly, order: int):
        return cls(poly.field, order, poly.coeffs)

    def __getitem__(self, i):
        if i >= self.order:
            raise IndexError(f"coefficient t^{i} is beyond the truncation order {self.order}")
        return self.coeffs[i]

    def __repr__(self):
        return f"Series({[self.field.format(c) for c in self.coeffs]} + O(t^{self.order}))"

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot raise the truncation order of a series")
        return TruncatedSeries(self.field, order, self.coeffs[:order])

    def extend(self, order: int) -> "TruncatedSeries":
        """Same coefficients, padded with zeros: used by Newton lifting before a correction step."""
        return TruncatedSeries(self.field, order, self.coeffs)

    def __add__(self, other):
        F = self.field
        n = min(self.order, other.order)
        return TruncatedSeries(F, n, [F.add(a, b) for a, b in zip(self.coeffs[:n], other.coeffs[:n])])

    def __sub__(self, other):
        F = self.field
        n = min(self.order, other.order)
        return TruncatedSeries(F, n, [F.sub(a, b) for a, b in zip(self.coeffs[:n], other.coeffs[:n])])

    def __mul__(self, other):
        F = self.field
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        if isinstance(F, PrimeField):
            p = F.p
            out = [0] * n
            for i in range(n):
                ai = a[i]
                if ai:
                    for j in range(n - i):
                        out[i + j] += ai * b[j]
            return TruncatedSeries(F, n, [c % p for c in out])
        out = [F.zero] * n
        for i in range(n):
            ai = a[i]
            if F.is_zero(ai):
                continue
            for j in range(n - i):
                out[i + j] = F.add(out[i + j], F.mul(ai, b[j]))
        return TruncatedSeries(F, n, out)

    def scale(self, c):
        F = self.field
        return TruncatedSeries(F, self.order, [F.mul(c, a) for a in self.coeffs])

    def inverse(self):
        F = self.field
        n = self.order
        if F.is_zero(self.coeffs[0]):
            from .errors import DivisionByZero
            raise DivisionByZero("series with zero constant term is not invertible")
        inv0 = F.inv(self.coeffs[0])
        out = [inv0]
        for k in range(1, n):
            acc = F.zero
            for j in range(1, k + 1):
                acc = F.add(acc, F.mul(self.coeffs[j], out[k - j]))
            out.append(F.neg(F.mul(acc, inv0)))
        return TruncatedSeries(F, n, out)

    def valuation(self):
        """Index of the first nonzero coefficient, or None if zero to the full order."""
        for i, c in enumerate(self.coeffs):
            if not self.field.is_zero(c):
                return i
        return None


# --- local branches -----------------------------------------------------------------

def _chart_polys(form: TernaryForm, K: Field, chart: int, free: int, dep: int, u0):
    """[h_b(t)] with form|_{chart=1} = sum_b h_b(u0 + t) v^b, each h_b a UPoly in t over K."""
    F = form.field
    d = form.degree
    groups = [[K.zero] * (d + 1) for _ in range(d + 1)]
    same = K == F
    for e, c in form.terms.items():
        cc = c if same else lift(c, F, K)
        row = groups[e[dep]]
        row[e[free]] = K.add(row[e[free]], cc)
    return [UPoly(K, g).taylor_shift(u0) for g in groups]


def _horner(hs, v: TruncatedSeries, order: int) -> TruncatedSeries:
    K = v.field
    acc = TruncatedSeries(K, order)
    for h in reversed(hs):
        acc = acc * v + TruncatedSeries.from_poly(h, order) if h.coeffs else acc * v
    return acc


@dataclass(frozen=True)
class Branch:
    """Local parametrization of a smooth curve at a point.

    The chart coordinate is 1, the ``free`` coordinate is ``point[free] + t`` and the
    ``dep`` coordinate is the power series ``dep_series``.
    """

    field: Field
    chart: int
    free: int
    dep: int
    point: tuple
    dep_series: TruncatedSeries

    @property
    def order(self):
        return self.dep_series.order

    @property
    def chart_name(self):
        return VARS[self.chart]

    def coords(self):
        K, N = self.field, self.order
        out = [None, None, None]
        out[self.chart] = TruncatedSeries.constant(K, K.one, N)
        out[self.free] = TruncatedSeries(K, N, [self.point[self.free], K.one])
        out[self.dep] = self.dep_series
        return tuple(out)

    def affine(self):
        """The two affine chart coordinates (x(t), y(t)) in coordinate order."""
        c = self.coords()
        return tuple(c[i] for i in range(3) if i != self.chart)

    def compose(self, form: TernaryForm) -> TruncatedSeries:
        hs = _chart_polys(form, self.field, self.chart, self.free, self.dep, self.point[self.free])
        return _horner(hs, self.dep_series, self.order)


def _choose_chart(C: TernaryForm, K: Field, coords):
    chart = next(i for i in (2, 1, 0) if not K.is_zero(coords[i]))
    a, b = [i for i in range(3) if i != chart]
    grad = [C.partial(i).evaluate_raw(K, coords) for i in range(3)]
    if not K.is_zero(grad[b]):
        return chart, a, b
    if not K.is_zero(grad[a]):
        return chart, b, a
    raise SingularPoint(f"curve is singular at {coords}")


def branch_expansion(C: TernaryForm, P, N: int) -> Branch:
    """Branch of the smooth curve C through P, exact modulo t^N (Newton lifting).

    Chart: the first of z, y, x in which P has a nonzero coordinate; within it the
    second affine coordinate is solved for when its partial is nonzero at P, else
    the first.
    """
    K = P.field
    coords = P.coords
    if not K.is_zero(C.evaluate_raw(K, coords)):
        raise PointNotOnCurve(f"{P} is not on the curve")
    chart, free, dep = _choose_chart(C, K, coords)
    hs = _chart_polys(C, K, chart, free, dep, coords[free])
    dhs = [h.scale(K.from_int(b)) for b, h in enumerate(hs)][1:]
    v = TruncatedSeries.constant(K, coords[dep], 1)
    prec = 1
    while prec < N:
        prec = min(2 * prec, N)
        v = v.extend(prec)
        val = _horner(hs, v, prec)
        der = _horner(dhs, v, prec)
        v = v - val * der.inverse()
    v = v if v.order == N else v.extend(N) if N > v.order else v.truncate(N)
    return Branch(K, chart, free, dep, tuple(coords), v)


def intersection_multiplicity(G: TernaryForm, C: TernaryForm, P, start: int = 4):
    """i(G, C; P) for C smooth at P: the t-adic valuation of G along C's branch.

    Truncation starts at ``start`` and doubles while inconclusive, capped at the
    Bezout bound deg G * deg C + 1; vanishing to that order means C divides G and
    INFINITE is returned.
    """
    K = P.field
    if not K.is_zero(C.evaluate_raw(K, P.coords)):
        raise PointNotOnCurve(f"{P} is not on the curve")
    _choose_chart(C, K, P.coords)
    if G.is_zero():
        return INFINITE
    if not K.is_zero(G.evaluate_raw(K, P.coords)):
        return 0
    cap = G.degree * C.degree + 1
    N = min(max(start, 2), cap)
    while True:
        s = branch_expansion(C, P, N).compose(G)
        v = s.valuation()
        if v is not None:
            return v
        if N >= cap:
            return INFINITE
        N = min(2 * N, cap)


__all__ = [
    "INFINITE", "TernaryForm", "BinaryForm", "TruncatedSeries", "Branch", "monomials",
    "num_monomials", "restrict", "restrict_to_line", "reconstruct_from_roots",
    "resultant", "branch_expansion", "intersection_multiplicity", "RootReconstruction",
    "ZeroPolynomial",
]
