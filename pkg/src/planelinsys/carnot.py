"""Carnot-type criteria for divisors on three lines, and curves realizing them."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .errors import (AttemptsExhausted, CarnotViolated, CoincidentLines, InconsistentSystem, InvariantViolation,
                     NoAdmissibleSolution, PreconditionError, UnsupportedField)
from .fields import ExtensionField, Field, FieldElement, PrimeField, lift
from .forms import BinaryForm, TernaryForm, monomials, restrict
from .geometry import (CONCURRENT, TRIANGLE, DivisorOnLine, Line, ProjFrame, ProjPoint,
                       coordinate_frame, is_smooth, line_divisor)
from .linalg import nullspace, solve

TANGENT_CORNER = "TangentCorner"
CASES = (TRIANGLE, TANGENT_CORNER, CONCURRENT)

# ratio read off a point of each frame line: (numerator index, denominator index)
_TRIANGLE_RATIOS = ((1, 2), (2, 0), (0, 1))
_CONCURRENT_RATIOS = ((0, 1), (0, 2), (0, 1))
_CONCURRENT_SIGNS = (1, -1, -1)


@dataclass
class CarnotInstance:
    lines: tuple
    divisors: tuple
    case: str = TRIANGLE
    alpha: FieldElement | None = None
    _frame: tuple | None = dc_field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.lines = tuple(self.lines)
        self.divisors = tuple(self.divisors)
        if self.case not in CASES:
            raise ValueError(f"unknown case {self.case!r}")
        if len(self.lines) != 3 or len(self.divisors) != 3:
            raise ValueError("need three lines and three divisors")

    @property
    def field(self) -> Field:
        return self.lines[0].field

    @property
    def m(self) -> int:
        return self.divisors[0].degree

    def frame(self):
        if self._frame is None:
            self._frame = coordinate_frame(*self.lines)
        return self._frame

    def validate(self):
        """Raise InvariantViolation naming the first failed hypothesis."""
        frame, fcase = self.frame()
        want = CONCURRENT if self.case == CONCURRENT else TRIANGLE
        if fcase != want:
            raise InvariantViolation("L1∩L2∩L3 = ∅" if want == TRIANGLE else "L1∩L2∩L3 ≠ ∅",
                                     f"lines form a {fcase} configuration")
        m = self.m
        for i, D in enumerate(self.divisors):
            if D.degree != m:
                raise InvariantViolation("deg D_i = m", f"D{i + 1} has degree {D.degree}, D1 has {m}")
            if D.line != self.lines[i]:
                raise InvariantViolation("D_i ⊂ L_i", f"D{i + 1} lives on a different line")
            if not D.is_effective():
                raise InvariantViolation("D_i effective", f"D{i + 1} has a negative multiplicity")
        if m < 1:
            raise InvariantViolation("m ≥ 1", "divisors are empty")
        corner = None
        if self.case == TANGENT_CORNER:
            if self.alpha is None or self.alpha.is_zero():
                raise InvariantViolation("α ≠ 0", "tangent corner needs a nonzero slope")
            corner = self.lines[0].intersection(self.lines[1])
            for i in (0, 1):
                if self.divisors[i].mult(corner) != 1:
                    raise InvariantViolation("m_11 = m_21 = 1, P_11 = P_21 = L1∩L2",
                                             f"D{i + 1} has multiplicity {self.divisors[i].mult(corner)} at the corner")
        for i, D in enumerate(self.divisors):
            for P, _ in D.entries:
                if corner is not None and P.key == corner.key:
                    continue
                for j, L in enumerate(self.lines):
                    if j != i and L.contains(P):
                        raise InvariantViolation("D_i ∩ L_j = ∅ for i ≠ j", f"{P} of D{i + 1} lies on L{j + 1}")

    def frame_points(self, i):
        """Entries of D_i in frame coordinates, the tangent corner removed."""
        frame, _ = self.frame()
        corner = None
        if self.case == TANGENT_CORNER and i < 2:
            corner = self.lines[0].intersection(self.lines[1]).key
        return [(frame.point_to_frame(P), m) for P, m in self.divisors[i].entries if P.key != corner]

    def to_json(self):
        out = {"case": self.case, "lines": [L.to_json() for L in self.lines],
               "divisors": [D.to_json() for D in self.divisors]}
        if self.alpha is not None:
            out["alpha"] = self.field.format(self.field.convert(self.alpha))
        return out

    @classmethod
    def from_json(cls, obj) -> "CarnotInstance":
        lines = [Line.from_json(L) for L in obj["lines"]]
        divs = [DivisorOnLine.from_json(D) for D in obj["divisors"]]
        alpha = None
        if obj.get("alpha") is not None:
            F = lines[0].field
            alpha = F.element(F.parse(obj["alpha"]))
        return cls(lines, divs, obj.get("case", TRIANGLE), alpha)


def _orbit(P: ProjPoint, base: Field):
    if P.field == base:
        return [P]
    if isinstance(base, PrimeField) and isinstance(P.field, ExtensionField):
        return P.conjugates()
    raise UnsupportedField(f"points over {P.field} on lines over {base}")


def _down(K: Field, v, base: Field):
    if K == base:
        return v
    if not K.in_prime_field(v):
        raise InvariantViolation("Galois-stable data", "orbit sum or product left the base field")
    return v[0]


def _ratio_product(points, ratio, base):
    F = base
    acc = F.one
    for Q, m in points:
        K = Q.field
        a, b = ratio
        prod = K.one
        for R in _orbit(Q, base):
            prod = K.mul(prod, K.div(R.coords[a], R.coords[b]))
        acc = F.mul(acc, F.pow(_down(K, prod, F), m))
    return acc


def _ratio_sum(points, ratio, base):
    F = base
    acc = F.zero
    for Q, m in points:
        K = Q.field
        a, b = ratio
        s = K.zero
        for R in _orbit(Q, base):
            s = K.add(s, K.div(R.coords[a], R.coords[b]))
        acc = F.add(acc, F.mul(F.from_int(m), _down(K, s, F)))
    return acc


def carnot_value(inst: CarnotInstance) -> FieldElement:
    """The Carnot product (Triangle, TangentCorner) or signed sum (Concurrent) in frame coordinates."""
    inst.validate()
    F = inst.field
    if inst.case == CONCURRENT:
        acc = F.zero
        for i in range(3):
            s = _ratio_sum(inst.frame_points(i), _CONCURRENT_RATIOS[i], F)
            acc = F.add(acc, s) if _CONCURRENT_SIGNS[i] > 0 else F.sub(acc, s)
        return F.element(acc)
    acc = F.one
    for i in range(3):
        acc = F.mul(acc, _ratio_product(inst.frame_points(i), _TRIANGLE_RATIOS[i], F))
    if inst.case == TANGENT_CORNER:
        acc = F.mul(F.convert(inst.alpha), acc)
    return F.element(acc)


def target_value(inst: CarnotInstance) -> FieldElement:
    F = inst.field
    if inst.case == CONCURRENT:
        return F.element(F.zero)
    return F.element(F.one if inst.m % 2 == 0 else F.neg(F.one))


def check_carnot(inst: CarnotInstance) -> bool:
    return carnot_value(inst) == target_value(inst)


def solve_last_coordinate(lines, divisors, index: int, case: str = TRIANGLE) -> ProjPoint:
    """The point P on lines[index] such that adding P once to divisors[index] satisfies the criterion.

    ``divisors[index]`` has degree m - 1, the other two degree m.
    """
    if case not in (TRIANGLE, CONCURRENT):
        raise PreconditionError("solve_last_coordinate supports Triangle and Concurrent")
    lines = tuple(lines)
    F = lines[0].field
    frame, fcase = coordinate_frame(*lines)
    if fcase != case:
        raise InvariantViolation("line configuration", f"lines form a {fcase} configuration, not {case}")
    others = [i for i in range(3) if i != index]
    m = divisors[others[0]].degree
    if divisors[others[1]].degree != m or divisors[index].degree != m - 1:
        raise InvariantViolation("deg D_i = m", "degrees do not fit a single unknown point")
    pts = [[(frame.point_to_frame(P), mu) for P, mu in D.entries] for D in divisors]
    if case == TRIANGLE:
        rest = F.one
        for i in range(3):
            rest = F.mul(rest, _ratio_product(pts[i], _TRIANGLE_RATIOS[i], F))
        if F.is_zero(rest):
            raise NoAdmissibleSolution("existing data has a vanishing ratio")
        sign = F.one if m % 2 == 0 else F.neg(F.one)
        r = F.div(sign, rest)
        a, b = _TRIANGLE_RATIOS[index]
        coords = [F.zero] * 3
        coords[a], coords[b] = r, F.one
    else:
        total = F.zero
        for i in range(3):
            s = _ratio_sum(pts[i], _CONCURRENT_RATIOS[i], F)
            total = F.add(total, s) if _CONCURRENT_SIGNS[i] > 0 else F.sub(total, s)
        r = F.neg(total) if _CONCURRENT_SIGNS[index] > 0 else total
        coords = [r, F.zero, F.zero]
        coords[1:] = [[F.one, F.one], [F.zero, F.one], [F.one, F.zero]][index]
    P = frame.point_from_frame(ProjPoint.from_raw(F, coords))
    for j in others:
        if lines[j].contains(P):
            raise NoAdmissibleSolution(f"solution {P} lies on L{j + 1}")
    if divisors[index].mult(P):
        raise NoAdmissibleSolution(f"solution {P} collides with an existing point")
    return P


# --- converse: building curves ------------------------------------------------------

def _target_binary(points, Lf: Line, base: Field) -> BinaryForm:
    """prod over points (with orbits) of (t_P s - s_P t)^mult, points given in frame coordinates."""
    pivot = next(i for i in (2, 1, 0) if not base.is_zero(Lf.coeffs[i]))
    fa, fb = [i for i in range(3) if i != pivot]
    acc = BinaryForm(base, 0, [base.one])
    for Q, m in points:
        K = Q.field
        f = BinaryForm(K, 0, [K.one])
        for R in _orbit(Q, base):
            f = f * BinaryForm(K, 1, [R.coords[fb], K.neg(R.coords[fa])])
        f = BinaryForm(base, f.degree, [_down(K, c, base) for c in f.coeffs])
        for _ in range(m):
            acc = acc * f
    return acc


@dataclass
class SolutionSpace:
    """Affine space of frame-coordinate coefficient vectors realizing an instance."""

    inst: CarnotInstance
    frame: ProjFrame
    particular: list
    basis: list

    @property
    def dimension(self):
        return len(self.basis)

    def member(self, coeffs=None) -> TernaryForm:
        F = self.inst.field
        v = list(self.particular)
        for c, b in zip(coeffs or [], self.basis):
            v = [F.add(x, F.mul(c, y)) for x, y in zip(v, b)]
        return self.frame.form_from_frame(TernaryForm.from_vector(F, self.inst.m, v))

    def random_member(self, rng: random.Random) -> TernaryForm:
        F = self.inst.field
        return self.member([F.random(rng) for _ in self.basis])


def solution_space(inst: CarnotInstance) -> SolutionSpace:
    if not check_carnot(inst):
        raise CarnotViolated(f"Carnot value {carnot_value(inst)} differs from {target_value(inst)}")
    F = inst.field
    m = inst.m
    frame, _ = inst.frame()
    monos = monomials(m)
    n = len(monos)
    rows, rhs = [], []
    for i, L in enumerate(inst.lines):
        Lf = frame.line_to_frame(L)
        A, B = Lf.param()
        pts = [(frame.point_to_frame(P), mu) for P, mu in inst.divisors[i].entries]
        T = _target_binary(pts, Lf, F).coeffs
        cols = [restrict(TernaryForm(F, m, {e: F.one}), A, B).coeffs for e in monos]
        k0 = next(k for k, c in enumerate(T) if not F.is_zero(c))
        for j in range(m + 1):
            if j == k0:
                continue
            rows.append([F.sub(F.mul(col[j], T[k0]), F.mul(col[k0], T[j])) for col in cols])
            rhs.append(F.zero)
    if inst.case == TANGENT_CORNER:
        row = [F.zero] * n
        alpha = F.convert(inst.alpha)
        row[monos.index((1, 0, m - 1))] = F.one
        row[monos.index((0, 1, m - 1))] = F.neg(alpha)
        rows.append(row)
        rhs.append(F.zero)
    norm = [F.zero] * n
    norm[monos.index((m, 0, 0))] = F.one
    rows.append(norm)
    rhs.append(F.one)
    part = solve(F, rows, rhs, n)
    if part is None:
        raise InconsistentSystem("linear conditions are inconsistent although the Carnot criterion holds")
    return SolutionSpace(inst, frame, part, nullspace(F, rows, n))


def _realizes(inst: CarnotInstance, G: TernaryForm) -> bool:
    for L, D in zip(inst.lines, inst.divisors):
        if restrict(G, *L.param()).is_zero():
            return False
        if line_divisor(L, G) != D:
            return False
    return True


def construct_curve(inst: CarnotInstance, seed: int = 0, attempts: int = 16) -> TernaryForm:
    """A degree-m form whose divisor on each L_i is exactly D_i (verified by re-intersection)."""
    space = solution_space(inst)
    rng = random.Random(seed)
    for trial in range(attempts):
        G = space.member() if trial == 0 and space.dimension == 0 else space.random_member(rng)
        if _realizes(inst, G):
            return G
        if space.dimension == 0:
            break
    raise InconsistentSystem("solution space has no member realizing the divisors")


def smooth_representative(inst: CarnotInstance, attempts: int = 32, seed: int = 0) -> TernaryForm:
    """First smooth member (by trial index) of the realizing family; degree m >= 4."""
    if inst.m < 4:
        raise PreconditionError(f"m = {inst.m}; a smooth representative needs m >= 4")
    space = solution_space(inst)
    rng = random.Random(seed)
    for trial in range(attempts):
        G = space.random_member(rng)
        if not _realizes(inst, G):
            continue
        if is_smooth(G, seed=seed + trial):
            return G
    raise AttemptsExhausted(attempts, "no smooth member found")


def instance_from_curve(G: TernaryForm, lines, case: str = TRIANGLE, alpha=None) -> CarnotInstance:
    """The instance whose divisors are cut on the lines by G."""
    return CarnotInstance(lines, [line_divisor(L, G) for L in lines], case, alpha)


def _random_lines(F: Field, case: str, rng: random.Random):
    vecs = [[F.random(rng) for _ in range(3)] for _ in range(2)]
    if case == CONCURRENT:
        a, b = F.random(rng), F.random(rng)
        vecs.insert(0, [F.add(F.mul(a, u), F.mul(b, v)) for u, v in zip(*vecs)])
    else:
        vecs.append([F.random(rng) for _ in range(3)])
    if any(all(F.is_zero(c) for c in v) for v in vecs):
        return None
    return [Line.from_raw(F, v) for v in vecs]


def random_instance(F: Field, m: int, rng: random.Random, case: str = TRIANGLE, lines=None) -> CarnotInstance:
    """Admissible data for ``case``: m rational points per line, the last one solved for."""
    for _ in range(64):
        cand = list(lines) if lines is not None else _random_lines(F, case, rng)
        if cand is None:
            continue
        try:
            _, fcase = coordinate_frame(*cand)
        except CoincidentLines:
            continue
        if fcase != case:
            continue
        divs = [_random_points(F, cand, i, m if i < 2 else m - 1, rng) for i in range(3)]
        if any(d is None for d in divs):
            continue
        try:
            P = solve_last_coordinate(cand, divs, 2, case)
        except NoAdmissibleSolution:
            continue
        divs[2] = DivisorOnLine(cand[2], divs[2].entries + [(P, 1)])
        return CarnotInstance(cand, divs, case)
    raise AttemptsExhausted(64, "could not sample admissible data")


def random_triangle_instance(F: Field, m: int, rng: random.Random, lines=None) -> CarnotInstance:
    return random_instance(F, m, rng, TRIANGLE, lines)


def _random_points(F, lines, i, count, rng):
    L = lines[i]
    pts = []
    seen = set()
    for _ in range(20 * count + 20):
        if len(pts) == count:
            break
        s, t = F.random(rng), F.one
        P = L.point_at(s, t)
        if P in seen or any(lines[j].contains(P) for j in range(3) if j != i):
            continue
        seen.add(P)
        pts.append((P, 1))
    if len(pts) < count:
        return None
    return DivisorOnLine(L, pts)


__all__ = [
    "CarnotInstance", "random_instance", "TANGENT_CORNER", "TRIANGLE", "CONCURRENT", "carnot_value", "check_carnot",
    "target_value", "solve_last_coordinate", "construct_curve", "smooth_representative",
    "solution_space", "SolutionSpace", "instance_from_curve", "random_triangle_instance",
]
