"""Gaussian elimination over an exact field (rows are lists of raw values)."""

from __future__ import annotations

from .fields import Field, PrimeField


def rref(F: Field, rows, ncols: int):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    M = [list(r) for r in rows]
    pivots = []
    r = 0
    if isinstance(F, PrimeField):
        p = F.p
        for c in range(ncols):
            piv = next((i for i in range(r, len(M)) if M[i][c] % p), None)
            if piv is None:
                continue
            M[r], M[piv] = M[piv], M[r]
            inv = pow(M[r][c], p - 2, p)
            row = [x * inv % p for x in M[r]]
            M[r] = row
            for i in range(len(M)):
                if i != r:
                    f = M[i][c] % p
                    if f:
                        Mi = M[i]
                        M[i] = [(a - f * b) % p for a, b in zip(Mi, row)]
            pivots.append(c)
            r += 1
            if r == len(M):
                break
        return M[:r], pivots
    iz, mul, sub = F.is_zero, F.mul, F.sub
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if not iz(M[i][c])), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        row = [mul(x, inv) for x in M[r]]
        M[r] = row
        for i in range(len(M)):
            if i != r and not iz(M[i][c]):
                f = M[i][c]
                M[i] = [sub(a, mul(f, b)) for a, b in zip(M[i], row)]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(F: Field, rows, ncols: int) -> int:
    return len(rref(F, rows, ncols)[1])


def nullspace(F: Field, rows, ncols: int):
    """Basis of {v : rows . v = 0}, one vector per free column, in column order."""
    R, pivots = rref(F, rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [F.zero] * ncols
        v[free] = F.one
        for row, pc in zip(R, pivots):
            v[pc] = F.neg(row[free])
        basis.append(v)
    return basis


def solve(F: Field, rows, rhs, ncols: int):
    """A particular solution of rows . v = rhs, or None when inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(F, aug, ncols + 1)
    if ncols in pivots:
        return None
    v = [F.zero] * ncols
    for row, pc in zip(R, pivots):
        v[pc] = row[ncols]
    return v


def _adjugate3(F: Field, M):
    def minor(r0, r1, c0, c1):
        return F.sub(F.mul(M[r0][c0], M[r1][c1]), F.mul(M[r0][c1], M[r1][c0]))
    # cofactor C[i][j] sits at adj[j][i]
    return [[minor(1, 2, 1, 2), F.neg(minor(0, 2, 1, 2)), minor(0, 1, 1, 2)],
            [F.neg(minor(1, 2, 0, 2)), minor(0, 2, 0, 2), F.neg(minor(0, 1, 0, 2))],
            [minor(1, 2, 0, 1), F.neg(minor(0, 2, 0, 1)), minor(0, 1, 0, 1)]]


def _det3(F: Field, M, adj=None):
    adj = adj or _adjugate3(F, M)
    return F.sum(F.mul(M[0][j], adj[j][0]) for j in range(3))


def determinant(F: Field, rows):
    n = len(rows)
    if n == 3 and all(len(r) == 3 for r in rows):
        return _det3(F, rows)
    M = [list(r) for r in rows]
    det = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if not F.is_zero(M[i][c])), None)
        if piv is None:
            return F.zero
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = F.neg(det)
        det = F.mul(det, M[c][c])
        inv = F.inv(M[c][c])
        for i in range(c + 1, n):
            if not F.is_zero(M[i][c]):
                f = F.mul(M[i][c], inv)
                M[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(M[i], M[c])]
    return det


def mat_vec(F: Field, M, v):
    return [F.sum(F.mul(a, b) for a, b in zip(row, v)) for row in M]


def mat_mul(F: Field, A, B):
    cols = list(zip(*B))
    return [[F.sum(F.mul(a, b) for a, b in zip(row, col)) for col in cols] for row in A]


def mat_inv(F: Field, M):
    n = len(M)
    if n == 3 and all(len(r) == 3 for r in M):
        adj = _adjugate3(F, M)
        det = _det3(F, M, adj)
        if F.is_zero(det):
            from .errors import DivisionByZero
            raise DivisionByZero("singular matrix")
        inv = F.inv(det)
        return [[F.mul(inv, c) for c in row] for row in adj]
    aug = [list(row) + [F.one if i == j else F.zero for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rref(F, aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(R) < n:
        from .errors import DivisionByZero
        raise DivisionByZero("singular matrix")
    return [row[n:] for row in R]
