"""Dense linear algebra over :class:`~d21alpha.scalars.Scalar`.

Matrices are lists of rows.  Pivots are chosen to keep rational-function
degrees small, which matters far more than anything else for speed here.
"""

from __future__ import annotations

from .scalars import ONE, ZERO, as_scalar


class SingularMatrixError(ArithmeticError):
    pass


def _cost(s):
    if s.is_constant():
        return 0
    return 1 + s.degree_bound()


def _copy(m):
    return [[as_scalar(v) for v in row] for row in m]


def row_echelon(m):
    """Reduced row echelon form.  Returns (rref rows, pivot columns)."""
    m = _copy(m)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        best, best_cost = None, None
        for k in range(r, rows):
            v = m[k][c]
            if v:
                cost = _cost(v)
                if best is None or cost < best_cost:
                    best, best_cost = k, cost
                    if cost == 0:
                        break
        if best is None:
            continue
        m[r], m[best] = m[best], m[r]
        inv = m[r][c].inverse()
        m[r] = [v * inv if v else v for v in m[r]]
        for k in range(rows):
            if k != r and m[k][c]:
                f = m[k][c]
                m[k] = [x - f * y if y else x for x, y in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(m):
    if not m:
        return 0
    return len(row_echelon(m)[1])


def det(m):
    n = len(m)
    if n == 0:
        return ONE
    m = _copy(m)
    out = ONE
    for c in range(n):
        best, best_cost = None, None
        for k in range(c, n):
            v = m[k][c]
            if v:
                cost = _cost(v)
                if best is None or cost < best_cost:
                    best, best_cost = k, cost
        if best is None:
            return ZERO
        if best != c:
            m[c], m[best] = m[best], m[c]
            out = -out
        piv = m[c][c]
        out = out * piv
        inv = piv.inverse()
        for k in range(c + 1, n):
            if m[k][c]:
                f = m[k][c] * inv
                m[k] = [x - f * y if y else x for x, y in zip(m[k], m[c])]
    return out


def inverse(m):
    n = len(m)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(m)]
    red, piv = row_echelon(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in red]


def solve(m, b):
    """Solve m x = b for a consistent system with unique solution."""
    n = len(m[0])
    aug = [list(row) + [bv] for row, bv in zip(m, b)]
    red, piv = row_echelon(aug)
    if n in piv:
        raise SingularMatrixError("inconsistent system")
    if len(piv) < n:
        raise SingularMatrixError("solution is not unique")
    x = [ZERO] * n
    for r, c in enumerate(piv):
        x[c] = red[r][n]
    return x


def nullspace(m):
    """Basis of the right kernel of m."""
    if not m:
        return []
    n = len(m[0])
    red, piv = row_echelon(m)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for r, c in enumerate(piv):
            v[c] = -red[r][f]
        basis.append(v)
    return basis


def matmul(x, y):
    cols = len(y[0])
    out = []
    for row in x:
        new = []
        for j in range(cols):
            acc = ZERO
            for k, v in enumerate(row):
                if v and y[k][j]:
                    acc = acc + v * y[k][j]
            new.append(acc)
        out.append(new)
    return out


def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def transpose(m):
    return [list(col) for col in zip(*m)]
