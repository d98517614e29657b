"""Projective points and lines, coordinate frames, divisors, smoothness and
intersection divisors of plane curves.

Points of a curve over F_p that are not rational live in a residue field
F_p[t]/(q) built on demand; such a point stands for its whole Galois orbit.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (AttemptsExhausted, CoincidentLines, DescriptorMismatch,
                     InvariantViolation, PreconditionError, SharedComponent, SingularCurve,
                     SingularPoint, UnsupportedField, ZeroForm)
from .fields import (ExtensionField, Field, PrimeField, Rationals, field_from_json, lift,
                     make_extension)
from .forms import TernaryForm, intersection_multiplicity, restrict_to_line
from .linalg import determinant, mat_inv, mat_vec, rank, solve
from .upoly import (UPoly, factor_or_rational, factor_univariate, interpolate, poly_gcd,
                    residue_field, resultant_formal, roots)

TRIANGLE = "Triangle"
CONCURRENT = "Concurrent"


def _normalize(F: Field, coords):
    if F.characteristic == 0:
        coords = tuple(F.convert(c) for c in coords)  # plain ints would divide into floats
    else:
        coords = tuple(coords)
    idx = next((i for i in (2, 1, 0) if not F.is_zero(coords[i])), None)
    if idx is None:
        raise ValueError("all coordinates are zero")
    inv = F.inv(coords[idx])
    return tuple(F.mul(c, inv) for c in coords)


class ProjPoint:
    """A point (x:y:z) normalized so that its last nonzero coordinate is 1."""

    __slots__ = ("field", "coords")

    def __init__(self, field: Field, coords):
        self.field = field
        self.coords = _normalize(field, [field.convert(c) for c in coords])

    @classmethod
    def from_raw(cls, field: Field, coords) -> "ProjPoint":
        P = cls.__new__(cls)
        P.field = field
        P.coords = _normalize(field, coords)
        return P

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash((self.field, self.coords))

    def __repr__(self):
        parts = []
        for c in self.coords:
            s = self.field.format(c)
            parts.append(s if isinstance(s, str) else "(" + ",".join(s) + ")")
        return "(" + ":".join(parts) + ")"

    def __getitem__(self, i):
        return self.field.element(self.coords[i])

    def lift(self, K: Field) -> "ProjPoint":
        return ProjPoint.from_raw(K, [lift(c, self.field, K) for c in self.coords])

    def conjugates(self):
        """Galois orbit over the prime field, starting with the point itself."""
        K = self.field
        if not isinstance(K, ExtensionField):
            return [self]
        out = [self.coords]
        while True:
            nxt = tuple(K.frobenius(c) for c in out[-1])
            if nxt == out[0]:
                break
            out.append(nxt)
        return [ProjPoint.from_raw(K, c) for c in out]

    @property
    def degree(self) -> int:
        """Degree of the point's residue field over the prime field."""
        return len(self.conjugates())

    @property
    def key(self):
        return closed_point_key(self)

    def to_json(self):
        fmt = self.field.format
        return {"field": self.field.to_json(), "xyz": [fmt(c) for c in self.coords]}

    @classmethod
    def from_json(cls, obj) -> "ProjPoint":
        F = field_from_json(obj["field"])
        return cls.from_raw(F, [F.parse(c) for c in obj["xyz"]])


def _coords_over_prime(K: ExtensionField, a):
    return list(a) + [0] * (K.k - len(a))


def closed_point_key(P: ProjPoint):
    """Key identifying the closed point of P independent of how its field was presented.

    For a point of degree k over F_p with affine chart coordinates (u, v) the key is
    the minimal polynomial of a generator w = u + c*v (smallest such c) together
    with u and v written as polynomials in w.
    """
    K = P.field
    if not isinstance(K, ExtensionField):
        return (1, P.coords)
    if all(K.in_prime_field(c) for c in P.coords):
        return (1, tuple(c[0] for c in P.coords))
    k = P.degree
    Fp = K.prime_field
    chart = next(i for i in (2, 1, 0) if not K.is_zero(P.coords[i]))
    u, v = (P.coords[i] for i in range(3) if i != chart)
    for c in range(K.p):
        w = K.add(u, K.scale(v, c)) if c else u
        pw = [K.one]
        for _ in range(k):
            pw.append(K.mul(pw[-1], w))
        cols = [_coords_over_prime(K, x) for x in pw[:k]]
        rows = [[col[i] for col in cols] for i in range(K.k)]
        if rank(Fp, rows, k) < k:
            continue
        mu = solve(Fp, rows, _coords_over_prime(K, pw[k]), k)
        fu = solve(Fp, rows, _coords_over_prime(K, u), k)
        fv = solve(Fp, rows, _coords_over_prime(K, v), k)
        return (k, chart, c, tuple(mu), tuple(fu), tuple(fv))
    raise UnsupportedField("no primitive element of the form u + c*v")


class Line:
    """The line a*x + b*y + c*z = 0, normalized like a point."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        self.field = field
        self.coeffs = _normalize(field, [field.convert(c) for c in coeffs])

    @classmethod
    def from_raw(cls, field, coeffs):
        L = cls.__new__(cls)
        L.field = field
        L.coeffs = _normalize(field, coeffs)
        return L

    @classmethod
    def through(cls, P: ProjPoint, Q: ProjPoint) -> "Line":
        F = P.field
        c = _cross(F, P.coords, Q.coords)
        if all(F.is_zero(v) for v in c):
            raise CoincidentLines("points coincide")
        return cls.from_raw(F, c)

    def __eq__(self, other):
        return isinstance(other, Line) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return "Line" + repr(ProjPoint.from_raw(self.field, self.coeffs))[0:]

    def form(self) -> TernaryForm:
        a, b, c = self.coeffs
        return TernaryForm(self.field, 1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})

    def value(self, P: ProjPoint):
        K = P.field
        return K.sum(K.mul(lift(a, self.field, K), c) for a, c in zip(self.coeffs, P.coords))

    def contains(self, P: ProjPoint) -> bool:
        return P.field.is_zero(self.value(P))

    def param(self):
        """Two raw points A, B spanning the line; (s:t) -> s*A + t*B."""
        F = self.field
        pivot = next(i for i in (2, 1, 0) if not F.is_zero(self.coeffs[i]))
        pts = []
        for f in range(3):
            if f == pivot:
                continue
            v = [F.zero] * 3
            v[f] = F.one
            v[pivot] = F.neg(self.coeffs[f])
            pts.append(tuple(v))
        return pts[0], pts[1]

    def point_at(self, s, t, K: Field | None = None) -> ProjPoint:
        K = K or self.field
        A, B = self.param()
        return ProjPoint.from_raw(K, [K.add(K.mul(s, lift(a, self.field, K)), K.mul(t, lift(b, self.field, K)))
                                      for a, b in zip(A, B)])

    def intersection(self, other: "Line") -> ProjPoint:
        c = _cross(self.field, self.coeffs, other.coeffs)
        if all(self.field.is_zero(v) for v in c):
            raise CoincidentLines("lines coincide")
        return ProjPoint.from_raw(self.field, c)

    def to_json(self):
        return {"field": self.field.to_json(), "abc": [self.field.format(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "Line":
        F = field_from_json(obj["field"])
        return cls.from_raw(F, [F.parse(c) for c in obj["abc"]])


def _cross(F, u, v):
    return (F.sub(F.mul(u[1], v[2]), F.mul(u[2], v[1])),
            F.sub(F.mul(u[2], v[0]), F.mul(u[0], v[2])),
            F.sub(F.mul(u[0], v[1]), F.mul(u[1], v[0])))


# --- divisors -----------------------------------------------------------------------

class Divisor:
    """Finite formal sum of closed points with integer multiplicities."""

    def __init__(self, entries=(), base: Field | None = None):
        self._d: dict = {}
        self.base = base
        for P, m in entries:
            self._add(P, m)

    def _add(self, P, m):
        if m == 0:
            return
        k = P.key
        if k in self._d:
            Q, n = self._d[k]
            if n + m:
                self._d[k] = (Q, n + m)
            else:
                del self._d[k]
        else:
            self._d[k] = (P, m)

    def _new(self, entries):
        out = self.__class__.__new__(self.__class__)
        out.__dict__.update(self.__dict__)
        Divisor.__init__(out, entries, self.base)
        return out

    @property
    def entries(self):
        return sorted(self._d.values(), key=lambda pm: (pm[0].degree, repr(pm[0].key)))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self._d)

    def resdeg(self, P: ProjPoint) -> int:
        base = self.base or P.field.prime_field
        kb = base.k if isinstance(base, ExtensionField) else 1
        k = P.degree
        from math import lcm
        return lcm(k, kb) // kb

    @property
    def degree(self) -> int:
        return sum(m * self.resdeg(P) for P, m in self._d.values())

    def mult(self, P: ProjPoint) -> int:
        e = self._d.get(P.key)
        return e[1] if e else 0

    def support(self):
        return [P for P, _ in self.entries]

    def is_effective(self):
        return all(m > 0 for _, m in self._d.values())

    def is_zero(self):
        return not self._d

    def __add__(self, other):
        return self._new(list(self._d.values()) + list(other._d.values()))

    def __sub__(self, other):
        return self._new(list(self._d.values()) + [(P, -m) for P, m in other._d.values()])

    def min(self, other):
        keys = set(self._d) & set(other._d)
        return self._new([(self._d[k][0], min(self._d[k][1], other._d[k][1])) for k in keys])

    def __le__(self, other):
        return (other - self).is_effective()

    def __eq__(self, other):
        return isinstance(other, Divisor) and {k: m for k, (_, m) in self._d.items()} == \
            {k: m for k, (_, m) in other._d.items()}

    def __hash__(self):
        return hash(frozenset((k, m) for k, (_, m) in self._d.items()))

    def __repr__(self):
        if not self._d:
            return "0"
        return " + ".join(f"{m}*{P}" for P, m in self.entries)

    def entries_json(self):
        return [{"point": P.to_json(), "mult": m, "resdeg": self.resdeg(P)} for P, m in self.entries]


class DivisorOnLine(Divisor):
    def __init__(self, line: Line, entries=()):
        self.line = line
        super().__init__(entries, line.field)
        for P, _ in self._d.values():
            if not line.contains(P):
                raise PreconditionError(f"{P} is not on {line}")

    def to_json(self):
        return {"line": self.line.to_json(), "entries": self.entries_json()}

    @classmethod
    def from_json(cls, obj):
        return cls(Line.from_json(obj["line"]),
                   [(ProjPoint.from_json(e["point"]), int(e["mult"])) for e in obj["entries"]])


class DivisorOnCurve(Divisor):
    def __init__(self, curve: TernaryForm, entries=(), check: bool = True):
        self.curve = curve
        super().__init__(entries, curve.field)
        if check:
            for P, _ in self._d.values():
                if not P.field.is_zero(curve.evaluate_raw(P.field, P.coords)):
                    from .errors import PointNotOnCurve
                    raise PointNotOnCurve(f"{P} is not on the curve")

    def to_json(self):
        return {"entries": self.entries_json()}

    @classmethod
    def from_json(cls, obj, curve: TernaryForm):
        return cls(curve, [(ProjPoint.from_json(e["point"]), int(e["mult"])) for e in obj["entries"]])


# --- frames -------------------------------------------------------------------------

@dataclass(frozen=True)
class ProjFrame:
    """New coordinates p' = T p."""

    field: Field
    T: tuple
    T_inv: tuple

    @classmethod
    def from_rows(cls, F: Field, rows) -> "ProjFrame":
        if F.is_zero(determinant(F, rows)):
            raise CoincidentLines("frame matrix is singular")
        return cls(F, tuple(tuple(r) for r in rows), tuple(tuple(r) for r in mat_inv(F, rows)))

    @classmethod
    def identity(cls, F: Field) -> "ProjFrame":
        rows = [[F.one if i == j else F.zero for j in range(3)] for i in range(3)]
        return cls.from_rows(F, rows)

    def _mat(self, M, K):
        return [[lift(c, self.field, K) for c in row] for row in M]

    def point_to_frame(self, P: ProjPoint) -> ProjPoint:
        K = P.field
        return ProjPoint.from_raw(K, mat_vec(K, self._mat(self.T, K), P.coords))

    def point_from_frame(self, P: ProjPoint) -> ProjPoint:
        K = P.field
        return ProjPoint.from_raw(K, mat_vec(K, self._mat(self.T_inv, K), P.coords))

    def form_to_frame(self, G: TernaryForm) -> TernaryForm:
        return G.substitute(self.T_inv)

    def form_from_frame(self, G: TernaryForm) -> TernaryForm:
        return G.substitute(self.T)

    def line_to_frame(self, L: Line) -> Line:
        F = self.field
        return Line.from_raw(F, [F.sum(F.mul(L.coeffs[i], self.T_inv[i][j]) for i in range(3)) for j in range(3)])

    def is_identity(self):
        F = self.field
        return all(self.T[i][j] == (F.one if i == j else F.zero) for i in range(3) for j in range(3))

    def to_json(self):
        return {"field": self.field.to_json(), "T": [[self.field.format(c) for c in r] for r in self.T]}


def coordinate_frame(L1: Line, L2: Line, L3: Line):
    """Frame sending (L1, L2, L3) to x=0, y=0, z=0 (Triangle) or y-z=0, y=0, z=0 (Concurrent)."""
    F = L1.field
    lines = (L1, L2, L3)
    for i in range(3):
        for j in range(i + 1, 3):
            if lines[i] == lines[j]:
                raise CoincidentLines(f"lines {i + 1} and {j + 1} coincide")
    rows = [list(L.coeffs) for L in lines]
    if not F.is_zero(determinant(F, rows)):
        return ProjFrame.from_rows(F, rows), TRIANGLE
    # l1 = a*l2 + b*l3
    l1, l2, l3 = rows
    det = None
    for i in range(3):
        for j in range(i + 1, 3):
            dd = F.sub(F.mul(l2[i], l3[j]), F.mul(l2[j], l3[i]))
            if not F.is_zero(dd):
                det = (i, j, dd)
                break
        if det:
            break
    i, j, dd = det
    a = F.div(F.sub(F.mul(l1[i], l3[j]), F.mul(l1[j], l3[i])), dd)
    b = F.div(F.sub(F.mul(l2[i], l1[j]), F.mul(l2[j], l1[i])), dd)
    yrow = list(l2)
    s = F.neg(F.div(b, a))
    zrow = [F.mul(s, c) for c in l3]
    for e in range(3):
        xrow = [F.one if t == e else F.zero for t in range(3)]
        if not F.is_zero(determinant(F, [xrow, yrow, zrow])):
            return ProjFrame.from_rows(F, [xrow, yrow, zrow]), CONCURRENT
    raise CoincidentLines("degenerate configuration")


# --- elimination --------------------------------------------------------------------

def _eval_nodes(F: Field, count: int):
    if isinstance(F, Rationals):
        return F, [Fraction(i) for i in range(count)]
    if F.order >= count:
        return F, [F.nth_element(i) for i in range(count)]
    if isinstance(F, PrimeField):
        k = 2
        while F.p ** k < count:
            k += 1
        K = make_extension(F.p, k, 0)
        return K, [K.nth_element(i) for i in range(count)]
    raise UnsupportedField(f"{F} is too small for evaluation at {count} nodes")


def res_y(A: TernaryForm, B: TernaryForm) -> UPoly:
    """Res_y(A(x,y,1), B(x,y,1)) as a polynomial in x.

    A must have a nonzero y^deg A coefficient so that specialization at x = x0
    commutes with taking the resultant.
    """
    F = A.field
    da, db = A.degree, B.degree
    if F.is_zero(A.coefficient((0, da, 0))):
        raise PreconditionError("first form must be monic in y up to a constant")
    D = da * db
    K, nodes = _eval_nodes(F, D + 1)
    Al, Bl = A.lift(K), B.lift(K)
    vals = [resultant_formal(Al.affine_y_poly(K, x0), Bl.affine_y_poly(K, x0), da, db) for x0 in nodes]
    R = interpolate(K, nodes, vals)
    if K != F:
        R = UPoly(F, [c[0] for c in R.coeffs])
    return R


_PAIRS = ((0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1))


def _random_shears(F: Field, rng: random.Random):
    if isinstance(F, Rationals):
        return [(i, j, Fraction(rng.randint(-2, 2))) for i, j in _PAIRS]
    return [(i, j, F.random(rng)) for i, j in _PAIRS]


def _shear_sequence(F: Field, rng: random.Random, attempts: int):
    """Identity first, then random shears; over tiny fields every combination, shuffled."""
    yield []
    if F.is_finite and F.order ** len(_PAIRS) <= 4096:
        elems = [F.nth_element(i) for i in range(F.order)]
        combos = list(itertools.product(elems, repeat=len(_PAIRS)))[1:]
        rng.shuffle(combos)
        for cs in combos:
            yield [(i, j, c) for (i, j), c in zip(_PAIRS, cs)]
        return
    for _ in range(attempts - 1):
        yield _random_shears(F, rng)


def _apply_shears(G: TernaryForm, shears) -> TernaryForm:
    for i, j, c in shears:
        if not G.field.is_zero(c):
            G = G.shear(i, j, c)
    return G


def _shear_matrix(F: Field, shears):
    M = [[F.one if i == j else F.zero for j in range(3)] for i in range(3)]
    for i, j, c in shears:
        # right-multiply by I + c E_ij: column j gains c * column i
        for r in range(3):
            M[r][j] = F.add(M[r][j], F.mul(c, M[r][i]))
    return M


def _map_back(F: Field, M, K: Field, p):
    Mk = [[lift(c, F, K) for c in row] for row in M]
    return ProjPoint.from_raw(K, mat_vec(K, Mk, p))


def _distinct_roots(h: UPoly, seed: int):
    """(roots in h's field, has_nonlinear_factor)."""
    K = h.field
    if isinstance(K, Rationals):
        rs = roots(h)
        rest = h.degree - sum(m for _, m in rs)
        return [r for r, _ in rs], rest > 0
    fs = factor_univariate(h, seed)
    lin = [K.neg(q.coeffs[0]) for q, _ in fs if q.degree == 1]
    return lin, any(q.degree > 1 for q, _ in fs)


# --- smoothness ---------------------------------------------------------------------

@dataclass(frozen=True)
class Smoothness:
    """Result of is_smooth: smooth, or singular with an exact witness."""

    witness: ProjPoint | None = None

    @property
    def smooth(self) -> bool:
        return self.witness is None

    def __bool__(self):
        return self.smooth

    def __repr__(self):
        return "Smooth" if self.smooth else f"Singular({self.witness})"


SMOOTH = Smoothness()


def _vanishes(forms, K, coords):
    return all(K.is_zero(G.evaluate_raw(K, coords)) for G in forms)


def _fiber_points(system, K, x0, seed):
    """Points (x0 : y : 1) common to all forms; returns (raw points, needs_tower)."""
    h = None
    for G in system:
        g = G.affine_y_poly(K, x0)
        if g.is_zero():
            continue
        h = g if h is None else poly_gcd(h, g)
        if h.degree == 0:
            return [], False
    if h is None:
        return [(x0, K.zero, K.one)], False
    ys, nonlinear = _distinct_roots(h, seed)
    return [(x0, y, K.one) for y in ys], nonlinear


def _any_point(C: TernaryForm, seed=0) -> ProjPoint:
    F = C.field
    Lz = Line.from_raw(F, (F.zero, F.zero, F.one))
    if restrict_to_line(C, Lz).is_zero():
        return ProjPoint.from_raw(F, (F.one, F.zero, F.zero))
    div = line_divisor(Lz, C, seed)
    return div.entries[0][0]


def is_smooth(C: TernaryForm, seed: int = 0, attempts: int = 16) -> Smoothness:
    """Decide whether C = Cx = Cy = Cz = 0 has a projective solution over the algebraic closure."""
    if C.is_zero():
        raise ZeroForm("zero form")
    if C.degree < 1:
        raise PreconditionError("degree must be at least 1")
    F = C.field
    if C.degree == 1:
        return SMOOTH
    partials = [G for G in C.gradient() if not G.is_zero()]
    if not partials:
        return Smoothness(_any_point(C, seed))
    full = [C] + partials
    for e in range(3):
        v = tuple(F.one if i == e else F.zero for i in range(3))
        if _vanishes(full, F, v):
            return Smoothness(ProjPoint.from_raw(F, v))
    rng = random.Random(seed)
    for shears in _shear_sequence(F, rng, attempts):
        C1 = _apply_shears(C, shears)
        if F.is_zero(C1.coefficient((0, C1.degree, 0))):
            continue
        parts = [_apply_shears(G, shears) for G in partials]
        system = [C1] + parts
        M = _shear_matrix(F, shears)
        w = _singular_at_infinity(system, F, M, seed)
        if w == "retry":
            continue
        if w is not None:
            return Smoothness(w)
        w = _singular_affine(C1, parts, system, F, M, rng, seed)
        if w == "retry":
            continue
        return SMOOTH if w is None else Smoothness(w)
    raise AttemptsExhausted(attempts, "could not find generic coordinates for the singularity search")


def _singular_at_infinity(system, F, M, seed):
    if all(F.is_zero(G.coefficient((G.degree, 0, 0))) for G in system):
        return _map_back(F, M, F, (F.one, F.zero, F.zero))
    g = None
    for G in system:
        f = G.on_line_z0()
        if f.is_zero():
            continue
        g = f if g is None else poly_gcd(g, f)
    if g is None or g.degree <= 0:
        return None
    if isinstance(F, Rationals):
        rs = roots(g)
        if not rs:
            raise UnsupportedField("singular point at infinity with irrational coordinates")
        return _map_back(F, M, F, (rs[0][0], F.one, F.zero))
    q = factor_univariate(g, seed)[0][0]
    K, x0 = residue_field(F, q)
    return _map_back(F, M, K, (x0, K.one, K.zero))


def _combo(parts, F, rng):
    while True:
        acc = None
        for G in parts:
            c = Fraction(rng.randint(1, 7)) if isinstance(F, Rationals) else F.random(rng)
            term = G.scale(c)
            acc = term if acc is None else acc + term
        if not acc.is_zero():
            return acc


def _singular_affine(C1, parts, system, F, M, rng, seed):
    # gcd of resultants against a few random combinations of the partials; a combination
    # can share a component with a reducible C1 by accident, so those are skipped
    g = None
    for _ in range(4):
        Rk = res_y(C1, _combo(parts, F, rng))
        if Rk.is_zero():
            continue
        g = Rk if g is None else poly_gcd(g, Rk)
        if g.degree <= 0:
            return None
    if g is None:
        # every combination shares a component with C1: a multiple component,
        # all of whose points are singular
        pts, tower = _fiber_points(system, F, F.zero, seed)
        if pts:
            return _map_back(F, M, F, pts[0])
        w = _adjoin_fiber(system, F, M, F.zero, seed) if tower else None
        return "retry" if w is None else w
    try:
        factors = factor_or_rational(g, seed)
    except UnsupportedField:
        rs = roots(g)
        if not rs:
            raise
        factors = [(UPoly(F, [F.neg(r), F.one]), m) for r, m in rs]
    retry = False
    for q, _ in factors:
        K, x0 = residue_field(F, q)
        pts, tower = _fiber_points(system, K, x0, seed)
        if pts:
            return _map_back(F, M, K, pts[0])
        if tower:
            w = _adjoin_fiber(system, F, M, x0, seed) if K == F else None
            if w is not None:
                return w
            retry = True
    if isinstance(F, Rationals) and g.degree > sum(q.degree for q, _ in factors):
        raise UnsupportedField("singular candidates with irrational coordinates")
    return "retry" if retry else None


def _adjoin_fiber(system, F, M, x0, seed):
    h = None
    for G in system:
        g = G.affine_y_poly(F, x0)
        if not g.is_zero():
            h = g if h is None else poly_gcd(h, g)
    if h is None or h.degree <= 0:
        return None
    q = next((q for q, _ in factor_or_rational(h, seed) if q.degree > 1), None)
    if q is None:
        return None
    K, y0 = residue_field(F, q)
    return _map_back(F, M, K, (lift(x0, F, K), y0, K.one))


# --- intersections ------------------------------------------------------------------

def intersection_divisor(G: TernaryForm, C: TernaryForm, seed: int = 0, attempts: int = 24) -> DivisorOnCurve:
    """The divisor G.C on the smooth curve C; total degree deg G * deg C."""
    F = C.field
    if G.field != F:
        raise DescriptorMismatch(f"{G.field} vs {F}")
    if G.is_zero():
        raise SharedComponent("G is the zero form")
    if G.degree == 0:
        return DivisorOnCurve(C, [])
    dG, dC = G.degree, C.degree
    rng = random.Random(seed)
    for shears in _shear_sequence(F, rng, attempts):
        G1, C1 = _apply_shears(G, shears), _apply_shears(C, shears)
        if F.is_zero(C1.coefficient((0, dC, 0))) or F.is_zero(G1.coefficient((0, dG, 0))):
            continue
        R = res_y(C1, G1)
        if R.is_zero():
            raise SharedComponent("G and C share a component")
        gz, cz = G1.on_line_z0(), C1.on_line_z0()
        if poly_gcd(gz, cz).degree > 0 or (gz.degree < dG and cz.degree < dC):
            continue
        if R.degree != dG * dC:
            raise InvariantViolation("Bezout", f"resultant degree {R.degree} != {dG * dC}")
        M = _shear_matrix(F, shears)
        entries = _locate(G, C, G1, C1, R, F, M, seed)
        if entries is None:
            continue
        div = DivisorOnCurve(C, entries, check=False)
        if div.degree != dG * dC:
            raise InvariantViolation("Bezout", f"divisor degree {div.degree} != {dG * dC}")
        return div
    raise AttemptsExhausted(attempts, "no generic projection found")


def _locate(G, C, G1, C1, R, F, M, seed):
    entries = []
    for q, e in factor_or_rational(R, seed):
        K, x0 = residue_field(F, q)
        h = poly_gcd(G1.affine_y_poly(K, x0), C1.affine_y_poly(K, x0))
        ys, nonlinear = _distinct_roots(h, seed)
        if nonlinear or len(ys) != 1:
            return None
        P = _map_back(F, M, K, (x0, ys[0], K.one))
        try:
            mult = intersection_multiplicity(G, C, P)
        except SingularPoint as exc:
            raise SingularCurve(str(exc)) from exc
        if mult != e:
            raise InvariantViolation("Bezout", f"multiplicity {mult} at {P} but resultant order {e}")
        entries.append((P, mult))
    return entries


def line_divisor(L: Line, C: TernaryForm, seed: int = 0) -> DivisorOnLine:
    """(C.L) on L via restriction and univariate factorization."""
    F = L.field
    b = restrict_to_line(C, L)
    if b.is_zero():
        raise SharedComponent(f"{L} is a component of the curve")
    A, B = L.param()
    entries = []
    inf = b.root_at_infinity()
    if inf:
        entries.append((ProjPoint.from_raw(F, B), inf))
    f = b.dehomogenize()
    if f.degree > 0:
        for q, e in factor_or_rational(f, seed):
            K, t0 = residue_field(F, q)
            pt = [K.add(lift(a, F, K), K.mul(t0, lift(bb, F, K))) for a, bb in zip(A, B)]
            entries.append((ProjPoint.from_raw(K, pt), e))
    return DivisorOnLine(L, entries)


__all__ = [
    "ProjPoint", "Line", "Divisor", "DivisorOnLine", "DivisorOnCurve", "ProjFrame",
    "coordinate_frame", "is_smooth", "Smoothness", "SMOOTH", "res_y", "intersection_divisor",
    "line_divisor", "closed_point_key", "TRIANGLE", "CONCURRENT",
]
