from fractions import Fraction
import itertools
import random

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from planelinsys.errors import CoincidentLines, InvariantViolation, SharedComponent, ZeroForm
from planelinsys.fields import QQ, PrimeField, make_extension
from planelinsys.forms import TernaryForm, intersection_multiplicity
from planelinsys.geometry import (CONCURRENT, TRIANGLE, DivisorOnCurve, Line, ProjPoint,
                                  coordinate_frame, intersection_divisor, is_smooth, line_divisor)
from strategies import F101, ternary_forms

F2, F5, F7, F13 = (PrimeField(p) for p in (2, 5, 7, 13))


def xyz(F):
    return tuple(TernaryForm.variable(F, i) for i in range(3))


def pt(F, *c):
    return ProjPoint.from_raw(F, [F.convert(v) for v in c])


def line(F, *c):
    return Line.from_raw(F, [F.convert(v) for v in c])


def fermat(F, d=4):
    x, y, z = xyz(F)
    return x**d + y**d + z**d


def conic(F=QQ):
    x, y, z = xyz(F)
    return y * z - x * x


# --- points and lines ---------------------------------------------------------------

def test_point_normalization():
    assert pt(QQ, 2, 4, 2).coords == (1, 2, 1)
    assert pt(QQ, 3, 6, 0).coords == (Fraction(1, 2), 1, 0) if False else pt(QQ, 3, 6, 0) == pt(QQ, 1, 2, 0)
    assert pt(F7, 3, 0, 0).coords == (1, 0, 0)


def test_point_json_round_trip():
    P = pt(QQ, 1, -2, 3)
    assert P.to_json()["field"] == {"kind": "Q"}
    assert ProjPoint.from_json(P.to_json()) == P


def test_line_through_and_intersection():
    P, Q = pt(F101, 1, 2, 3), pt(F101, 4, 5, 6)
    L = Line.through(P, Q)
    assert L.contains(P) and L.contains(Q)
    M = line(F101, 1, 0, 0)
    assert L.intersection(M) in (pt(F101, 0, *L.intersection(M).coords[1:]),)
    with pytest.raises(CoincidentLines):
        L.intersection(L)


# --- frames ---------------------------------------------------------------------------

def _reference_ok(lines, frame, case):
    F = lines[0].field
    ref = {TRIANGLE: [(1, 0, 0), (0, 1, 0), (0, 0, 1)], CONCURRENT: [(0, 1, -1), (0, 1, 0), (0, 0, 1)]}[case]
    return [frame.line_to_frame(L) for L in lines] == [line(F, *r) for r in ref]


def test_frame_coordinate_triangle():
    lines = [line(QQ, 1, 0, 0), line(QQ, 0, 1, 0), line(QQ, 0, 0, 1)]
    frame, case = coordinate_frame(*lines)
    assert case == TRIANGLE and frame.is_identity()


def test_frame_reference_concurrent():
    lines = [line(QQ, 0, 1, -1), line(QQ, 0, 1, 0), line(QQ, 0, 0, 1)]
    frame, case = coordinate_frame(*lines)
    assert case == CONCURRENT and frame.is_identity()


def test_frame_pencil_through_origin():
    lines = [line(QQ, 1, 0, 0), line(QQ, 0, 1, 0), line(QQ, 1, 1, 0)]
    frame, case = coordinate_frame(*lines)
    assert case == CONCURRENT
    assert _reference_ok(lines, frame, case)
    assert frame.point_to_frame(pt(QQ, 0, 0, 1)) == pt(QQ, 1, 0, 0)


def test_frame_coincident():
    with pytest.raises(CoincidentLines):
        coordinate_frame(line(QQ, 1, 0, 0), line(QQ, 2, 0, 0), line(QQ, 0, 0, 1))


@settings(max_examples=40)
@given(st.lists(st.tuples(*[st.integers(0, 100)] * 3).filter(any), min_size=3, max_size=3))
def test_frame_images_are_reference(vecs):
    lines = [line(F101, *v) for v in vecs]
    assume(len(set(lines)) == 3)
    frame, case = coordinate_frame(*lines)
    assert _reference_ok(lines, frame, case)
    G = fermat(F101, 3)
    assert frame.form_from_frame(frame.form_to_frame(G)) == G


@settings(max_examples=30)
@given(st.tuples(*[st.integers(0, 100)] * 3).filter(any), st.tuples(*[st.integers(0, 100)] * 3).filter(any),
       st.integers(1, 100), st.integers(0, 100))
def test_frame_concurrent_random(u, v, a, b):
    L2, L3 = line(F101, *u), line(F101, *v)
    assume(L2 != L3)
    L1 = Line.from_raw(F101, [F101.add(F101.mul(a, p), F101.mul(b, q)) for p, q in zip(L2.coeffs, L3.coeffs)])
    assume(L1 != L2 and L1 != L3)
    frame, case = coordinate_frame(L1, L2, L3)
    assert case == CONCURRENT and _reference_ok([L1, L2, L3], frame, case)


# --- smoothness -------------------------------------------------------------------------

def test_fermat_quartic_smooth_f5():
    assert is_smooth(fermat(F5)).smooth


def test_triangle_singular():
    x, y, z = xyz(QQ)
    res = is_smooth(x * y * z)
    assert not res.smooth
    assert res.witness in {pt(QQ, 1, 0, 0), pt(QQ, 0, 1, 0), pt(QQ, 0, 0, 1)}


def test_fermat_quartic_singular_f2():
    C = fermat(F2)
    res = is_smooth(C)
    assert not res.smooth
    W = res.witness
    for G in [C] + list(C.gradient()):
        assert G.evaluate_raw(W.field, W.coords) == W.field.zero


def test_zero_form():
    with pytest.raises(ZeroForm):
        is_smooth(TernaryForm.zero(QQ, 3))


def test_conic_smooth():
    assert is_smooth(conic())
    assert is_smooth(conic(F2))


def _singular_points_bruteforce(C, K):
    """All points of P^2(K) where C and its partials vanish (numpy grid over a prime field)."""
    p = K.p
    grid = np.array([(a, b, 1) for a in range(p) for b in range(p)]
                    + [(a, 1, 0) for a in range(p)] + [(1, 0, 0)], dtype=np.int64)
    mask = np.ones(len(grid), dtype=bool)
    for G in [C] + list(C.gradient()):
        val = np.zeros(len(grid), dtype=np.int64)
        for (i, j, k), c in G.terms.items():
            term = np.full(len(grid), c, dtype=np.int64)
            for col, e in ((0, i), (1, j), (2, k)):
                for _ in range(e):
                    term = term * grid[:, col] % p
            val = (val + term) % p
        mask &= val == 0
    return [tuple(int(v) for v in row) for row in grid[mask]]


@settings(max_examples=40)
@given(ternary_forms(F7, 2, 4), st.integers(0, 10))
def test_smooth_has_no_rational_singular_point(C, seed):
    assume(C.degree >= 2)
    res = is_smooth(C, seed=seed)
    found = _singular_points_bruteforce(C, F7)
    if res.smooth:
        assert found == []
    else:
        W = res.witness
        for G in [C] + list(C.gradient()):
            assert G.evaluate_raw(W.field, W.coords) == W.field.zero


@settings(max_examples=25)
@given(ternary_forms(F13, 3, 3))
def test_nodal_curves_are_singular(G):
    # force a singular point at (0:0:1): drop the constant and linear terms in the z-chart
    x, y, z = xyz(F13)
    terms = {e: c for e, c in G.terms.items() if e[2] < 2}
    C = TernaryForm(F13, 3, terms)
    assume(not C.is_zero())
    assert not is_smooth(C).smooth


# --- divisors -----------------------------------------------------------------------------

def test_divisor_line_vs_conic():
    x, y, z = xyz(QQ)
    D = intersection_divisor(x, conic())
    assert D == DivisorOnCurve(conic(), [(pt(QQ, 0, 0, 1), 1), (pt(QQ, 0, 1, 0), 1)])


def test_divisor_tangent_line():
    x, y, z = xyz(QQ)
    D = intersection_divisor(y, conic())
    assert D.entries == [(pt(QQ, 0, 0, 1), 2)]


def test_divisor_cubic_vs_quartic_f101():
    rng = random.Random(1)
    x, y, z = xyz(F101)
    C = fermat(F101) + x * y * z * z.scale(3)
    assert is_smooth(C)
    G = TernaryForm.from_vector(F101, 3, [rng.randrange(101) for _ in range(10)])
    D = intersection_divisor(G, C)
    assert D.degree == 12


def test_shared_component():
    x, y, z = xyz(QQ)
    with pytest.raises(SharedComponent):
        intersection_divisor(conic() * x, conic())


def test_line_divisor_examples():
    x, y, z = xyz(QQ)
    D = line_divisor(line(QQ, 1, 0, 0), conic())
    assert sorted(D.support(), key=repr) == sorted([pt(QQ, 0, 1, 0), pt(QQ, 0, 0, 1)], key=repr)
    C = y * z**3 + x**4
    assert line_divisor(line(QQ, 0, 1, 0), C).entries == [(pt(QQ, 0, 0, 1), 4)]


def test_line_divisor_fermat_f13_extension():
    C = fermat(F13)
    found_ext = False
    for abc in itertools.product(range(1, 6), repeat=3):
        D = line_divisor(line(F13, *abc), C)
        assert D.degree == 4
        found_ext |= any(P.degree > 1 for P in D.support())
    assert found_ext


def test_divisor_json_round_trip():
    x, y, z = xyz(F101)
    C = fermat(F101)
    D = intersection_divisor(x + y.scale(2) + z.scale(5), C)
    obj = D.to_json()
    assert all({"point", "mult", "resdeg"} <= set(e) for e in obj["entries"])
    assert DivisorOnCurve.from_json(obj, C) == D


def test_extension_points_counted_by_residue_degree():
    K = make_extension(13, 2)
    assert K.k == 2
    C = fermat(F13)
    D = line_divisor(line(F13, 1, 1, 1), C)
    assert sum(m * P.degree for P, m in D.entries) == 4 == D.degree


@settings(max_examples=15)
@given(ternary_forms(F101, 1, 3), st.integers(0, 5))
def test_bezout(G, seed):
    x, y, z = xyz(F101)
    C = fermat(F101) + x * y * z * z.scale(3)
    D = intersection_divisor(G, C, seed=seed)
    assert D.degree == G.degree * C.degree
    for P, m in D.entries:
        assert intersection_multiplicity(G, C, P) == m


@settings(max_examples=20)
@given(st.tuples(*[st.integers(0, 100)] * 3).filter(any))
def test_line_and_curve_paths_agree(abc):
    C = fermat(F101, 3) + xyz(F101)[0] * xyz(F101)[1] * xyz(F101)[2]
    assume(is_smooth(C))
    L = line(F101, *abc)
    ld = line_divisor(L, C)
    cd = intersection_divisor(L.form(), C)
    for P in ld.support():
        if P.degree == 1:
            assert ld.mult(P) == cd.mult(P)
    assert ld.degree == cd.degree == 3


def test_bezout_violation_is_loud(monkeypatch):
    import planelinsys.geometry as geo
    x, y, z = xyz(QQ)
    monkeypatch.setattr(geo, "intersection_multiplicity", lambda *a, **k: 5)
    with pytest.raises(InvariantViolation):
        intersection_divisor(x, conic())
