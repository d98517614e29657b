"""Numerical invariants of linear systems on smooth plane curves and the linear
algebra behind |m g2_d - Z|: dimension, base locus, speciality and triviality."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .errors import (DegreeDeficit, DimensionZero, EmptySystem, InvariantViolation,
                     PreconditionError, ROutOfRange)
from .fields import ExtensionField, Field
from .forms import (INFINITE, TernaryForm, TruncatedSeries, branch_expansion,
                    intersection_multiplicity, monomials, num_monomials)
from .geometry import DivisorOnCurve, intersection_divisor
from .linalg import nullspace

# --- formulas -----------------------------------------------------------------------


@dataclass(frozen=True)
class RDecomposition:
    r: int
    x: int
    beta: int


def decompose_r(r: int) -> RDecomposition:
    """r = (x+1)(x+2)/2 - beta with x >= 1 and 0 <= beta <= x."""
    if r < 2:
        raise ROutOfRange(f"r = {r} < 2")
    x = 1
    while (x + 1) * (x + 2) // 2 < r:
        x += 1
    return RDecomposition(r, x, (x + 1) * (x + 2) // 2 - r)


def n_lower_bound(d: int, r: int) -> int:
    dec = decompose_r(r)
    return (d - 3) * (dec.x + 3) - dec.beta


def genus(d: int) -> int:
    return (d - 1) * (d - 2) // 2


def hartshorne_max_dim(d: int, n: int) -> int:
    """Largest r of a g^r_n on a smooth plane curve of degree d."""
    if n > d * (d - 3):
        return n - genus(d)
    k = -(-n // d)
    e = k * d - n
    if e > k + 1:
        return (k - 1) * (k + 2) // 2
    return k * (k + 3) // 2 - e


def trivial_expected_dim(m_prime: int, d: int, n: int) -> int:
    if m_prime * d < n:
        raise DegreeDeficit(f"{m_prime}*{d} < {n}")
    return (m_prime * m_prime + 3 * m_prime) // 2 - (m_prime * d - n)


# --- presentations ------------------------------------------------------------------

@dataclass
class SystemPresentation:
    """The system cut on C by degree-m curves through Z."""

    C: TernaryForm
    m: int
    Z: DivisorOnCurve
    strict: bool = True  # enforce 1 <= m <= d-3, where degree-m curves cut complete systems

    def __post_init__(self):
        d = self.C.degree
        if self.m < 1 or (self.strict and self.m > d - 3):
            raise PreconditionError(f"need 1 <= m <= d-3, got m = {self.m}, d = {d}")
        if not self.Z.is_effective():
            raise PreconditionError("Z must be effective")

    @property
    def d(self) -> int:
        return self.C.degree

    @property
    def n(self) -> int:
        return self.m * self.d - self.Z.degree

    @property
    def field(self) -> Field:
        return self.C.field


def _pad(K: ExtensionField, a):
    return list(a) + [0] * (K.k - len(a))


def _monomial_series(branch, m: int, order: int):
    coords = branch.coords()
    K = branch.field
    powers = []
    for s in coords:
        row = [TruncatedSeries.constant(K, K.one, order)]
        s = s.truncate(order)
        for _ in range(m):
            row.append(row[-1] * s)
        powers.append(row)
    return [powers[0][i] * powers[1][j] * powers[2][k] for i, j, k in monomials(m)]


def conditions_matrix(C: TernaryForm, Z: DivisorOnCurve, m: int):
    """Rows over C's field: for each point P of Z with multiplicity mu, the coefficients of
    t^j (j < mu) of each degree-m monomial along the branch of C at P.  A point of residue
    degree k contributes k rows per coefficient (coordinates over the base field)."""
    F = C.field
    rows = []
    for P, mu in Z.entries:
        K = P.field
        br = branch_expansion(C, P, mu)
        series = _monomial_series(br, m, mu)
        for j in range(mu):
            vals = [s[j] for s in series]
            if K == F:
                rows.append(vals)
            else:
                comps = [_pad(K, v) for v in vals]
                for c in range(K.k):
                    rows.append([v[c] for v in comps])
    return rows


def system_dimension(pres: SystemPresentation):
    """(r, basis of P_m(-Z)); r is projective, EmptySystem when no curve passes through Z."""
    F = pres.field
    N = num_monomials(pres.m)
    rows = conditions_matrix(pres.C, pres.Z, pres.m)
    basis = nullspace(F, rows, N) if rows else [
        [F.one if i == j else F.zero for j in range(N)] for i in range(N)]
    if not basis:
        raise EmptySystem(f"no degree-{pres.m} curve contains Z")
    return len(basis) - 1, [TernaryForm.from_vector(F, pres.m, v) for v in basis]


def forms_through(C: TernaryForm, D: DivisorOnCurve, m: int):
    """Basis of P_m(-D); empty list when only the zero form qualifies."""
    F = C.field
    N = num_monomials(m)
    rows = conditions_matrix(C, D, m)
    basis = nullspace(F, rows, N) if rows else [
        [F.one if i == j else F.zero for j in range(N)] for i in range(N)]
    return [TernaryForm.from_vector(F, m, v) for v in basis]


def random_member(basis, rng: random.Random) -> TernaryForm:
    F = basis[0].field
    while True:
        acc = None
        for G in basis:
            c = F.random(rng) if F.is_finite else F.convert(rng.randint(-9, 9))
            acc = G.scale(c) if acc is None else acc + G.scale(c)
        if not acc.is_zero():
            return acc


def member_divisor(pres: SystemPresentation, G: TernaryForm, seed: int = 0) -> DivisorOnCurve:
    """G.C - Z, checked to be effective."""
    D = intersection_divisor(G, pres.C, seed=seed) - pres.Z
    if not D.is_effective():
        raise InvariantViolation("Z ⊂ Γ", "member does not contain Z")
    return D


def base_locus(pres: SystemPresentation, basis, seed: int = 0, generic: TernaryForm | None = None):
    """Fixed divisor of the system: pointwise minimum over the basis of (G.C - Z)."""
    if len(basis) < 2:
        raise DimensionZero("a zero-dimensional system has no meaningful base locus")
    rng = random.Random(seed)
    G0 = generic or random_member(basis, rng)
    D0 = member_divisor(pres, G0, seed)
    out = []
    for P, m0 in D0.entries:
        best = m0
        z = pres.Z.mult(P)
        for G in basis:
            if best == 0:
                break
            i = intersection_multiplicity(G, pres.C, P)
            if i != INFINITE:
                best = min(best, i - z)
        if best > 0:
            out.append((P, best))
    return DivisorOnCurve(pres.C, out, check=False)


def residual_dimension(C: TernaryForm, D: DivisorOnCurve) -> int:
    """dim |K_C - D| = dim P_{d-3}(-D) (projective; -1 when empty)."""
    return len(forms_through(C, D, C.degree - 3)) - 1


def is_very_special(pres: SystemPresentation, r: int, D: DivisorOnCurve):
    """(very_special, residual_dim) for a member divisor D of the system."""
    res = residual_dimension(pres.C, D)
    return (r >= 1 and res >= 1), res


# --- triviality ---------------------------------------------------------------------

TRIVIAL = "Trivial"
NON_TRIVIAL = "NonTrivial"
UNDETERMINED = "Undetermined"


@dataclass
class Triviality:
    verdict: str
    m_prime: int | None = None
    E: DivisorOnCurve | None = None
    certificate: dict = dc_field(default_factory=dict)

    def to_json(self):
        out = {"verdict": self.verdict, "certificate": self.certificate}
        if self.m_prime is not None:
            out["m_prime"] = self.m_prime
        if self.E is not None:
            out["E"] = self.E.to_json()
        return out


def admissible_m_primes(d: int, n: int, r: int):
    """{m': expected dim} over [ceil(n/d), d-3] and the m' where the formula gives r."""
    sweep = {}
    for mp in range(max(-(-n // d), 0), d - 2):
        sweep[mp] = trivial_expected_dim(mp, d, n)
    return sweep, [mp for mp, v in sweep.items() if v == r]


def classify_triviality(pres: SystemPresentation, r: int, D: DivisorOnCurve,
                        samples: int = 8, seed: int = 0) -> Triviality:
    """Filter sweep over m', then a sampled search for E with |m' g2_d - E| of dimension r."""
    d, n = pres.d, pres.n
    sweep, passing = admissible_m_primes(d, n, r)
    cert = {"sweep": {str(k): v for k, v in sweep.items()}, "r": r}
    if not passing:
        cert["reason"] = "no admissible m'"
        return Triviality(NON_TRIVIAL, certificate=cert)
    rng = random.Random(seed)
    cert["passing"] = passing
    for mp in passing:
        if samples <= 0:
            break
        basis = forms_through(pres.C, D, mp)
        if not basis:
            continue
        cands = list(basis[:samples])
        while len(cands) < samples:
            cands.append(random_member(basis, rng))
        for G in cands:
            E = intersection_divisor(G, pres.C, seed=seed) - D
            if not E.is_effective():
                continue
            try:
                rr, _ = system_dimension(SystemPresentation(pres.C, mp, E))
            except EmptySystem:
                continue
            if rr == r:
                cert["reason"] = "witness found"
                return Triviality(TRIVIAL, mp, E, cert)
    cert["reason"] = "filter passed but sampled search found no E"
    cert["samples"] = samples
    return Triviality(UNDETERMINED, certificate=cert)


# --- reports ------------------------------------------------------------------------

@dataclass
class LinearSystemReport:
    d: int
    m: int
    n: int
    r: int
    base_locus: DivisorOnCurve | None
    very_special: bool
    residual_dim: int
    triviality: Triviality
    bound_check: bool | None
    hartshorne_check: bool
    riemann_roch: bool

    @property
    def base_point_free(self) -> bool:
        return self.base_locus is not None and self.base_locus.is_zero()

    def to_json(self):
        return {
            "d": self.d, "m": self.m, "n": self.n, "r": self.r,
            "genus": genus(self.d),
            "base_locus": None if self.base_locus is None else self.base_locus.to_json(),
            "base_point_free": self.base_point_free,
            "very_special": self.very_special,
            "residual_dim": self.residual_dim,
            "triviality": self.triviality.to_json(),
            "n_lower": n_lower_bound(self.d, self.r) if self.r >= 2 else None,
            "bound_check": self.bound_check,
            "r_max": hartshorne_max_dim(self.d, self.n),
            "hartshorne_check": self.hartshorne_check,
            "riemann_roch": self.riemann_roch,
        }


def analyze(pres: SystemPresentation, seed: int = 0, samples: int = 8) -> LinearSystemReport:
    """Dimension, base locus, speciality and triviality of |m g2_d - Z|, flags recomputed."""
    d, n = pres.d, pres.n
    r, basis = system_dimension(pres)
    rng = random.Random(seed)
    G0 = random_member(basis, rng)
    D = member_divisor(pres, G0, seed)
    bl = base_locus(pres, basis, seed, G0) if r >= 1 else None
    vs, res = is_very_special(pres, r, D)
    triv = classify_triviality(pres, r, D, samples, seed)
    bound = n >= n_lower_bound(d, r) if r >= 2 else None
    hart = n >= 1 and r <= hartshorne_max_dim(d, n)
    rr = r - (res + 1) == n - genus(d)
    return LinearSystemReport(d, pres.m, n, r, bl, vs, res, triv, bound, hart, rr)


def check_universal_bounds(rep: LinearSystemReport):
    """Raise on a violation of the Hartshorne bound or of n >= n(r) for
    base-point-free very special non-trivial systems."""
    if not rep.hartshorne_check:
        raise InvariantViolation("r ≤ r_max(d, n)", f"r = {rep.r}, n = {rep.n}, d = {rep.d}")
    if (rep.base_point_free and rep.very_special and rep.triviality.verdict == NON_TRIVIAL
            and rep.r >= 2 and not rep.bound_check):
        raise InvariantViolation("n ≥ n(r)", f"n = {rep.n} < n({rep.r}) = {n_lower_bound(rep.d, rep.r)}")


__all__ = [
    "RDecomposition", "decompose_r", "n_lower_bound", "genus", "hartshorne_max_dim",
    "trivial_expected_dim", "SystemPresentation", "conditions_matrix", "system_dimension",
    "forms_through", "base_locus", "residual_dimension", "is_very_special", "Triviality",
    "classify_triviality", "admissible_m_primes", "LinearSystemReport", "analyze",
    "check_universal_bounds", "member_divisor", "random_member", "TRIVIAL", "NON_TRIVIAL",
    "UNDETERMINED",
]
