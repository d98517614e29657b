"""Curves of degree d carrying a non-trivial very special g^r_n with n = n(r).

Pipeline: a triangle of lines Γ' = L1 + L2 + L3 with a points on each line
satisfying the Carnot product, a smooth degree-a curve Γ through them, and a
smooth degree-d curve C through Γ∩Γ' plus β further points E of Γ.  The system
|a g2_d - Z| with Z = Γ∩Γ' + E is then certified by exact linear algebra.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .carnot import random_triangle_instance, smooth_representative
from .errors import (AttemptsExhausted, CertificationFailed, DomainError, FieldTooSmall,
                     InsufficientRationalPoints, PreconditionError)
from .fields import PrimeField
from .forms import TernaryForm, intersection_multiplicity, monomials, num_monomials
from .geometry import DivisorOnCurve, Line, ProjPoint, intersection_divisor, is_smooth, line_divisor
from .linalg import nullspace
from .linsys import (NON_TRIVIAL, LinearSystemReport, SystemPresentation, base_locus,
                     classify_triviality, genus, hartshorne_max_dim, is_very_special,
                     member_divisor, n_lower_bound, random_member, system_dimension,
                     trivial_expected_dim)
from .upoly import roots


@dataclass
class ConstructionRequest:
    d: int
    x: int
    beta: int = 0
    p: int = 1009
    seed: int = 0
    gamma_attempts: int = 16
    smooth_attempts: int = 32
    samples: int = 8

    def __post_init__(self):
        a = self.x + 3
        if not 4 <= a <= self.d - 6:
            raise PreconditionError(f"a = x + 3 = {a} must satisfy 4 <= a <= d - 6 = {self.d - 6}")
        if not 0 <= self.beta <= self.x:
            raise PreconditionError(f"beta = {self.beta} must lie in [0, x = {self.x}]")

    @property
    def a(self) -> int:
        return self.x + 3

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.p)

    @property
    def expected_r(self) -> int:
        return (self.x + 1) * (self.x + 2) // 2 - self.beta

    @property
    def expected_n(self) -> int:
        return (self.d - 3) * (self.x + 3) - self.beta

    def to_json(self):
        return {"d": self.d, "x": self.x, "beta": self.beta, "p": self.p, "seed": self.seed}


@dataclass
class GammaPair:
    lines: tuple
    gamma: TernaryForm
    points: list  # the 3a rational points of Γ∩Γ'


def build_gamma_pair(req: ConstructionRequest) -> GammaPair:
    """Triangle, a Carnot-admissible points per line, smooth Γ of degree a through them."""
    F = req.field
    a = req.a
    if F.p - 1 < a:
        raise FieldTooSmall(f"a line of F_{F.p} has {F.p - 1} points off two vertices, need {a}")
    rng = random.Random(req.seed)
    for trial in range(req.gamma_attempts):
        try:
            inst = random_triangle_instance(F, a, rng)
            G = smooth_representative(inst, attempts=req.smooth_attempts, seed=rng.randrange(2 ** 31))
        except AttemptsExhausted:
            continue
        pts = [P for D in inst.divisors for P, _ in D.entries]
        if len(pts) != 3 * a:
            continue
        return GammaPair(inst.lines, G, pts)
    raise AttemptsExhausted(req.gamma_attempts, "could not build Γ")


def rational_points_on(G: TernaryForm, count: int, avoid, rng: random.Random, tries: int = 400):
    """``count`` distinct rational affine points of G avoiding the forms in ``avoid``."""
    F = G.field
    out = []
    seen = set()
    for _ in range(tries):
        if len(out) == count:
            break
        x0 = F.random(rng)
        f = G.affine_y_poly(F, x0)
        if f.degree < 1:
            continue
        for y0, _ in roots(f):
            P = ProjPoint.from_raw(F, (x0, y0, F.one))
            if P in seen or any(F.is_zero(L.evaluate_raw(F, P.coords)) for L in avoid):
                continue
            seen.add(P)
            out.append(P)
            break
    if len(out) < count:
        raise InsufficientRationalPoints(f"found {len(out)} of {count} rational points")
    return out


def curves_through(F, d: int, points):
    """Basis of degree-d forms vanishing at the given rational points."""
    monos = monomials(d)
    rows = []
    for P in points:
        pw = [[F.one] for _ in range(3)]
        for i in range(3):
            for _ in range(d):
                pw[i].append(F.mul(pw[i][-1], P.coords[i]))
        rows.append([F.mul(pw[0][i], F.mul(pw[1][j], pw[2][k])) for i, j, k in monos])
    return [TernaryForm.from_vector(F, d, v) for v in nullspace(F, rows, num_monomials(d))]


def build_curve_C(req: ConstructionRequest, gamma: TernaryForm, Z0, E, seed: int | None = None):
    """Smooth degree-d curve through Z0 and E, resampled until smooth."""
    F = req.field
    basis = curves_through(F, req.d, list(Z0) + list(E))
    rng = random.Random(req.seed if seed is None else seed)
    witnesses = []
    for trial in range(req.smooth_attempts):
        C = random_member(basis, rng)
        s = is_smooth(C, seed=trial)
        if s:
            for P in list(Z0) + list(E):
                assert F.is_zero(C(P.coords))
            return C
        witnesses.append(s.witness)
    raise AttemptsExhausted(req.smooth_attempts, f"C singular at {witnesses[:3]}")


@dataclass
class ConstructionCertificate:
    request: ConstructionRequest
    lines: tuple
    gamma: TernaryForm
    C: TernaryForm
    Z0: list
    E: list
    report: LinearSystemReport
    checks: dict = dc_field(default_factory=dict)

    @property
    def r(self):
        return self.report.r

    @property
    def n(self):
        return self.report.n

    @property
    def triviality(self):
        return self.report.triviality.verdict

    def to_json(self):
        return {
            "request": self.request.to_json(),
            "seed": self.request.seed,
            "field": self.request.field.to_json(),
            "r": self.r, "n": self.n, "triviality": self.triviality,
            "expected": {"r": self.request.expected_r, "n": self.request.expected_n},
            "lines": [L.to_json() for L in self.lines],
            "gamma": self.gamma.to_json(),
            "gamma_prime": (self.lines[0].form() * self.lines[1].form() * self.lines[2].form()).to_json(),
            "C": self.C.to_json(),
            "Z0": [P.to_json() for P in self.Z0],
            "E": [P.to_json() for P in self.E],
            "report": self.report.to_json(),
            "checks": self.checks,
        }


def certify(req: ConstructionRequest, C: TernaryForm, gamma: TernaryForm, lines, Z0, E,
            E_mults=None) -> ConstructionCertificate:
    """Re-derive every claim about |a g2_d - Z| from scratch; CertificationFailed names the first failure."""
    F = req.field
    d, a = req.d, req.a
    E_mults = list(E_mults or [1] * len(E))
    checks = {}

    def need(step, ok, detail=""):
        checks[step] = bool(ok)
        if not ok:
            raise CertificationFailed(step, detail)

    need("C_degree", C.degree == d, f"deg C = {C.degree}")
    need("C_smooth", bool(is_smooth(C)), "C is singular")
    need("gamma_degree", gamma.degree == a)
    Gp = lines[0].form() * lines[1].form() * lines[2].form()
    # Z0 must be exactly Γ∩Γ', each point transverse
    cut = DivisorOnCurve(gamma, [], check=False)
    for L in lines:
        cut = cut + DivisorOnCurve(gamma, line_divisor(L, gamma).entries, check=False)
    need("gamma_cut", cut == DivisorOnCurve(gamma, [(P, 1) for P in Z0], check=False),
         "Γ∩Γ' differs from Z0")
    Z = DivisorOnCurve(C, [(P, 1) for P in Z0] + list(zip(E, E_mults)))
    for P, mu in Z.entries:
        need("Z_on_gamma", F.is_zero(gamma(P.coords)), f"{P} not on Γ")
        need("Z_in_C", intersection_multiplicity(gamma, C, P) >= mu, f"i(Γ, C; {P}) < {mu}")
    pres = SystemPresentation(C, a, Z)
    n = pres.n
    need("degree", n == req.expected_n, f"n = {n}, expected {req.expected_n}")
    r, basis = system_dimension(pres)
    need("dimension", r == req.expected_r, f"r = {r}, expected {req.expected_r}")
    need("expected_dim_gap", r - trivial_expected_dim(a, d, n) == 1)
    rng = random.Random(req.seed)
    G0 = random_member(basis, rng)
    D = member_divisor(pres, G0, req.seed)
    bl = base_locus(pres, basis, req.seed, G0)
    need("base_locus", bl.is_zero(), f"base points {bl}")
    vs, res = is_very_special(pres, r, D)
    need("very_special", vs, f"residual dimension {res}")
    triv = classify_triviality(pres, r, D, req.samples, req.seed)
    need("triviality", triv.verdict == NON_TRIVIAL, triv.verdict)
    need("hartshorne", r <= hartshorne_max_dim(d, n))
    need("n_lower_bound", n == n_lower_bound(d, r), f"n(r) = {n_lower_bound(d, r)}")
    rr = r - (res + 1) == n - genus(d)
    need("riemann_roch", rr, f"r - (residual + 1) = {r - res - 1}, n - g = {n - genus(d)}")
    for P in Z0:
        i_gg = intersection_multiplicity(Gp, gamma, P)
        i_gc = intersection_multiplicity(gamma, C, P)
        i_pc = intersection_multiplicity(Gp, C, P)
        need("namba", i_gg >= min(i_gc, i_pc) and i_gg == 1 and min(i_gc, i_pc) == 1,
             f"at {P}: i(Γ,Γ')={i_gg}, i(Γ,C)={i_gc}, i(Γ',C)={i_pc}")
    report = LinearSystemReport(d, a, n, r, bl, vs, res, triv, n >= n_lower_bound(d, r), True, rr)
    return ConstructionCertificate(req, tuple(lines), gamma, C, list(Z0), list(E), report, checks)


def construct(req: ConstructionRequest) -> ConstructionCertificate:
    """Full pipeline with E imposed on C at construction time."""
    pair = build_gamma_pair(req)
    rng = random.Random(req.seed + 1)
    E = rational_points_on(pair.gamma, req.beta, [L.form() for L in pair.lines], rng)
    C = build_curve_C(req, pair.gamma, pair.points, E)
    return certify(req, C, pair.gamma, pair.lines, pair.points, E)


def corollary_sweep(C: TernaryForm, gamma: TernaryForm, lines, Z0, req: ConstructionRequest):
    """Certificates for beta = 0..x with E taken inside D = Γ.C - Γ∩Γ'."""
    D = intersection_divisor(gamma, C, seed=req.seed) - DivisorOnCurve(C, [(P, 1) for P in Z0], check=False)
    rational = []
    for P, mu in D.entries:
        if P.degree == 1:
            rational.extend([P if P.field == C.field else ProjPoint.from_raw(
                C.field, [c[0] for c in P.coords])] * mu)
    certs = []
    for beta in range(req.x + 1):
        if len(rational) < beta:
            raise InsufficientRationalPoints(f"D has {len(rational)} rational points, beta = {beta}")
        sub = ConstructionRequest(req.d, req.x, beta, req.p, req.seed, req.gamma_attempts,
                                  req.smooth_attempts, req.samples)
        chosen = rational[:beta]
        pts, mults = [], []
        for P in chosen:
            if P in pts:
                mults[pts.index(P)] += 1
            else:
                pts.append(P)
                mults.append(1)
        certs.append(certify(sub, C, gamma, lines, Z0, pts, mults))
    return certs


def certificate_inputs(obj):
    """Request and curves embedded in a certificate JSON document."""
    req = ConstructionRequest(**{k: obj["request"][k] for k in ("d", "x", "beta", "p", "seed")})
    F = req.field
    lines = tuple(Line.from_json(L) for L in obj["lines"])
    gamma = TernaryForm.from_json(obj["gamma"])
    C = TernaryForm.from_json(obj["C"])
    Z0 = [ProjPoint.from_json(P) for P in obj["Z0"]]
    E = [ProjPoint.from_json(P) for P in obj["E"]]
    if gamma.field != F or C.field != F:
        raise CertificationFailed("replay", f"curves are not defined over {F}")
    return req, C, gamma, lines, Z0, E


def verify(obj) -> ConstructionCertificate:
    """Re-run certification from the data embedded in a certificate."""
    req, C, gamma, lines, Z0, E = certificate_inputs(obj)
    cert = certify(req, C, gamma, lines, Z0, E)
    for key in ("r", "n", "triviality"):
        if obj.get(key) != cert.to_json()[key]:
            raise CertificationFailed("replay", f"{key}: stored {obj.get(key)}, recomputed {cert.to_json()[key]}")
    return cert


__all__ = [
    "ConstructionRequest", "GammaPair", "ConstructionCertificate", "build_gamma_pair",
    "build_curve_C", "certify", "construct", "corollary_sweep", "verify", "rational_points_on",
    "curves_through", "certificate_inputs", "DomainError",
]
