import numpy as np
import sympy
from hypothesis import given, settings, strategies as st

from planelinsys.fields import QQ
from planelinsys.linalg import determinant, mat_inv, mat_mul, mat_vec, nullspace, rank, solve
from strategies import F101

matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
def test_rank_matches_sympy_over_q(M):
    rows = [[QQ.convert(v) for v in r] for r in M]
    assert rank(QQ, rows, len(M[0])) == sympy.Matrix(M).rank()


@given(matrices)
def test_nullspace_vectors_are_killed(M):
    F = F101
    rows = [[F.convert(v) for v in r] for r in M]
    n = len(M[0])
    basis = nullspace(F, rows, n)
    assert len(basis) == n - rank(F, rows, n)
    for v in basis:
        assert all(x == 0 for x in mat_vec(F, rows, v))


@settings(max_examples=30)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_determinant_and_inverse(M):
    rows = [[QQ.convert(v) for v in r] for r in M]
    det = determinant(QQ, rows)
    assert det == sympy.Matrix(M).det()
    assert abs(float(det) - np.linalg.det(np.array(M, dtype=float))) < 1e-6
    if det != 0:
        inv = mat_inv(QQ, rows)
        assert mat_mul(QQ, rows, inv) == [[QQ.one if i == j else QQ.zero for j in range(3)] for i in range(3)]


def test_solve_inconsistent_returns_none():
    F = F101
    rows = [[1, 1], [2, 2]]
    assert solve(F, rows, [1, 3], 2) is None
    x = solve(F, rows, [1, 2], 2)
    assert F.add(x[0], x[1]) == 1
