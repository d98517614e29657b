import random

import pytest
from hypothesis import given, settings, strategies as st

from planelinsys import linsys as ls
from planelinsys.errors import DegreeDeficit, DimensionZero, EmptySystem, PreconditionError, ROutOfRange
from planelinsys.fields import PrimeField
from planelinsys.forms import TernaryForm
from planelinsys.geometry import DivisorOnCurve, ProjPoint, intersection_divisor, is_smooth
from planelinsys.linalg import rank
from curves import divisor, random_smooth_curve, rational_points

F101 = PrimeField(101)
F1009 = PrimeField(1009)


def xyz(F):
    return tuple(TernaryForm.variable(F, i) for i in range(3))


@pytest.fixture(scope="module")
def quartic():
    return random_smooth_curve(F101, 4, random.Random(4))


@pytest.fixture(scope="module")
def quintic():
    return random_smooth_curve(F101, 5, random.Random(5))


# --- formulas ---------------------------------------------------------------------------

@pytest.mark.parametrize("r,x,beta", [(2, 1, 1), (3, 1, 0), (9, 3, 1), (6, 2, 0), (10, 3, 0)])
def test_decompose_examples(r, x, beta):
    dec = ls.decompose_r(r)
    assert (dec.x, dec.beta) == (x, beta)


def test_decompose_out_of_range():
    with pytest.raises(ROutOfRange):
        ls.decompose_r(1)


@given(st.integers(2, 10**4))
def test_decompose_identity(r):
    dec = ls.decompose_r(r)
    assert (dec.x + 1) * (dec.x + 2) // 2 - dec.beta == r
    assert dec.x >= 1 and 0 <= dec.beta <= dec.x


def test_decompose_injective():
    seen = {}
    for r in range(2, 10**4 + 1):
        dec = ls.decompose_r(r)
        assert (dec.x, dec.beta) not in seen
        seen[(dec.x, dec.beta)] = r


@pytest.mark.parametrize("d,r,n", [(10, 3, 28), (9, 2, 23), (10, 2, 27)])
def test_n_lower_bound_examples(d, r, n):
    assert ls.n_lower_bound(d, r) == n


@pytest.mark.parametrize("d,n,r", [(7, 30, 15), (7, 12, 3), (7, 10, 2)])
def test_hartshorne_examples(d, n, r):
    assert ls.hartshorne_max_dim(d, n) == r


@given(st.integers(4, 30), st.data())
def test_hartshorne_clifford_and_monotone(d, data):
    n = data.draw(st.integers(1, d * (d - 3)))
    r = ls.hartshorne_max_dim(d, n)
    assert 2 * r <= n  # Clifford for special systems
    assert ls.hartshorne_max_dim(d, n + 1) >= r
    assert ls.hartshorne_max_dim(d, d) == 2  # the plane sections


def test_hartshorne_canonical():
    for d in range(4, 20):
        assert ls.hartshorne_max_dim(d, d * (d - 3)) == ls.genus(d) - 1


@pytest.mark.parametrize("mp,d,n,r", [(4, 10, 28, 2), (4, 10, 27, 1)])
def test_trivial_expected_dim(mp, d, n, r):
    assert ls.trivial_expected_dim(mp, d, n) == r


def test_trivial_expected_dim_deficit():
    with pytest.raises(DegreeDeficit):
        ls.trivial_expected_dim(2, 10, 28)


@given(st.integers(7, 40), st.integers(1, 20), st.data())
def test_bound_exceeds_trivial_dimension(d, x, data):
    # on the sharp degree, a trivial system of degree m' = x + 3 is one dimension short
    beta = data.draw(st.integers(0, x))
    r = (x + 1) * (x + 2) // 2 - beta
    n = ls.n_lower_bound(d, r)
    if (x + 3) * d >= n:
        assert r - ls.trivial_expected_dim(x + 3, d, n) == 1


# --- conditions and dimensions --------------------------------------------------------------

def test_single_point_condition(quartic):
    P = rational_points(quartic, 1, random.Random(0))[0]
    M = ls.conditions_matrix(quartic, divisor(quartic, [P]), 1)
    assert len(M) == 1 and rank(F101, M, 3) == 1


def test_tangency_on_conic():
    x, y, z = xyz(F101)
    conic = y * z - x * x
    O = ProjPoint.from_raw(F101, (0, 0, 1))
    Z = DivisorOnCurve(conic, [(O, 2)])
    M = ls.conditions_matrix(conic, Z, 1)
    assert rank(F101, M, 3) == 2
    pres = ls.SystemPresentation(conic, 1, Z, strict=False)
    r, basis = ls.system_dimension(pres)
    assert r == 0 and basis[0] == y.scale(basis[0].coefficient((0, 1, 0)))
    with pytest.raises(DimensionZero):
        ls.base_locus(pres, basis)


def test_quartic_lines(quartic):
    assert ls.system_dimension(ls.SystemPresentation(quartic, 1, divisor(quartic, [])))[0] == 2
    P = rational_points(quartic, 1, random.Random(1))
    assert ls.system_dimension(ls.SystemPresentation(quartic, 1, divisor(quartic, P)))[0] == 1


def test_empty_system(quartic):
    pts = rational_points(quartic, 3, random.Random(2))
    with pytest.raises(EmptySystem):
        ls.system_dimension(ls.SystemPresentation(quartic, 1, divisor(quartic, pts)))


def test_presentation_bounds(quartic):
    with pytest.raises(PreconditionError):
        ls.SystemPresentation(quartic, 2, divisor(quartic, []))
    with pytest.raises(PreconditionError):
        ls.SystemPresentation(quartic, 0, divisor(quartic, []))


def test_extension_points_give_base_field_rows(quintic):
    # a line cutting a closed point of degree 2 imposes 2 conditions on conics
    F = F101
    rng = random.Random(3)
    for _ in range(200):
        L = TernaryForm.from_vector(F, 1, [F.random(rng) for _ in range(3)])
        D = intersection_divisor(L, quintic)
        big = [(P, m) for P, m in D.entries if P.degree == 2]
        if big:
            break
    P, m = big[0]
    Z = DivisorOnCurve(quintic, [(P, 1)])
    rows = ls.conditions_matrix(quintic, Z, 2)
    assert len(rows) == 2 and rank(F, rows, 6) == 2
    assert ls.system_dimension(ls.SystemPresentation(quintic, 2, Z))[0] == 3


@settings(max_examples=10)
@given(st.integers(0, 10**6), st.integers(1, 6))
def test_dimension_monotone(seed, k):
    rng = random.Random(seed)
    C = random_smooth_curve(F101, 5, random.Random(5))
    pts = rational_points(C, k + 1, rng)
    dims = []
    for j in range(k + 2):
        try:
            dims.append(ls.system_dimension(ls.SystemPresentation(C, 2, divisor(C, pts[:j])))[0])
        except EmptySystem:
            dims.append(-1)
    for a, b in zip(dims, dims[1:]):
        assert b <= a <= b + 1


def test_fat_point_conditions(quintic):
    P = rational_points(quintic, 1, random.Random(7))[0]
    r = [ls.system_dimension(ls.SystemPresentation(quintic, 2, DivisorOnCurve(quintic, [(P, k)])))[0]
         for k in range(4)]
    assert r == [5, 4, 3, 2]


# --- base locus, speciality, triviality -----------------------------------------------------------

def test_forced_base_point():
    # conics through four collinear points of C contain the line, so the fifth point is fixed
    F = F101
    x, y, z = xyz(F)
    rng = random.Random(11)
    lin = [x - z.scale(i) for i in range(1, 6)]
    prod = lin[0] * lin[1] * lin[2] * lin[3] * lin[4]
    for _ in range(50):
        H = TernaryForm.from_vector(F, 4, [F.random(rng) for _ in range(15)])
        C = y * H + prod
        if is_smooth(C):
            break
    Z = divisor(C, [ProjPoint.from_raw(F, (i, 0, 1)) for i in range(1, 5)])
    pres = ls.SystemPresentation(C, 2, Z)
    r, basis = ls.system_dimension(pres)
    assert r == 2
    bl = ls.base_locus(pres, basis)
    assert bl.entries == [(ProjPoint.from_raw(F, (5, 0, 1)), 1)]
    rep = ls.analyze(pres)
    assert not rep.base_point_free


def test_quintic_trivial(quintic):
    P = rational_points(quintic, 1, random.Random(8))[0]
    rep = ls.analyze(ls.SystemPresentation(quintic, 2, divisor(quintic, [P])))
    assert (rep.n, rep.r) == (9, 4)
    assert rep.triviality.verdict == ls.TRIVIAL and rep.triviality.m_prime == 2
    assert rep.triviality.E.degree == 1
    assert rep.riemann_roch and rep.hartshorne_check


def test_undetermined_when_search_is_skipped(quintic):
    P = rational_points(quintic, 1, random.Random(8))[0]
    rep = ls.analyze(ls.SystemPresentation(quintic, 2, divisor(quintic, [P])), samples=0)
    assert rep.triviality.verdict == ls.UNDETERMINED


def test_pencil_on_quartic_riemann_roch(quartic):
    P = rational_points(quartic, 1, random.Random(9))
    rep = ls.analyze(ls.SystemPresentation(quartic, 1, divisor(quartic, P)))
    assert (rep.n, rep.r, rep.residual_dim) == (3, 1, 0)
    assert not rep.very_special
    assert rep.r - (rep.residual_dim + 1) == rep.n - ls.genus(4)


def test_canonical_system_is_very_special():
    # on a sextic K is cut by cubics; cubics through five collinear points contain the line,
    # leaving line * conics, so the residual system has projective dimension 5
    C = random_smooth_curve(F101, 6, random.Random(6))
    P = rational_points(C, 1, random.Random(10))
    rep = ls.analyze(ls.SystemPresentation(C, 1, divisor(C, P)))
    assert (rep.n, rep.r) == (5, 1)
    assert rep.residual_dim == 5 and rep.very_special
    assert rep.riemann_roch


def test_no_admissible_m_prime():
    sweep, passing = ls.admissible_m_primes(10, 28, 3)
    assert passing == [] and sweep[3] == 7 and sweep[4] == 2


@settings(max_examples=8)
@given(st.integers(0, 10**6))
def test_universal_bounds_random(seed):
    rng = random.Random(seed)
    d = rng.choice([4, 5, 6])
    C = random_smooth_curve(F101, d, rng)
    m = rng.randint(1, d - 3)
    k = rng.randint(0, (m + 1) * (m + 2) // 2 - 2)
    pres = ls.SystemPresentation(C, m, divisor(C, rational_points(C, k, rng)))
    rep = ls.analyze(pres, seed=seed, samples=2)
    ls.check_universal_bounds(rep)
    assert rep.riemann_roch
    assert rep.r <= ls.hartshorne_max_dim(d, rep.n)


def test_report_json(quartic):
    rep = ls.analyze(ls.SystemPresentation(quartic, 1, divisor(quartic, [])))
    obj = rep.to_json()
    assert obj["r"] == 2 and obj["n"] == 4 and obj["genus"] == 3
    assert obj["triviality"]["verdict"] == ls.TRIVIAL
