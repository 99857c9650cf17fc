"""Exact dense linear algebra over cyclotomic scalars.

Gaussian elimination with exact pivots; pivot selection always takes the
first row with a nonzero entry in the leftmost unresolved column, so results
are deterministic.
"""

from __future__ import annotations

from .cyclotomic import Cyclotomic, cyc


def _zero() -> Cyclotomic:
    return Cyclotomic.from_rational(0)


def mat(rows):
    return [[cyc(v) for v in row] for row in rows]


def mat_transpose(rows):
    return [list(col) for col in zip(*rows)]


def mat_mul(a, b):
    bt = mat_transpose(b)
    return [[_dot(row, col) for col in bt] for row in a]


def mat_vec(a, v):
    return [_dot(row, v) for row in a]


def _dot(u, v):
    total = _zero()
    for x, y in zip(u, v):
        total = total + x * y
    return total


def rref(rows):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    row = 0
    for col in range(ncols):
        pivot = None
        for r in range(row, len(m)):
            if not m[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        inv = m[row][col].inverse()
        m[row] = [v * inv for v in m[row]]
        for r in range(len(m)):
            if r != row and not m[r][col].is_zero():
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
        if row == len(m):
            break
    return m, pivots

def matrix_rank(rows) -> int:
    _, pivots = rref(rows)
    return len(pivots)


def nullspace(rows, ncols=None):
    """Basis of the right kernel, one vector per free column, in column order."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [_zero()] * ncols
        vec[fc] = cyc(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][fc]
        basis.append(vec)
    return basis


def solve(rows, rhs):
    """One exact solution of A x = b, or None when inconsistent.

    Free variables are set to zero; with full column rank this is the unique
    solution.
    """
    aug = [list(r) + [v] for r, v in zip(rows, rhs)]
    ncols = len(rows[0])
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [_zero()] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return x


def det(rows) -> Cyclotomic:
    """Determinant of a small scalar matrix by cofactor expansion."""
    size = len(rows)
    if any(len(r) != size for r in rows):
        raise ValueError("matrix is not square")
    if size == 1:
        return rows[0][0]
    total = _zero()
    for col in range(size):
        entry = rows[0][col]
        if entry.is_zero():
            continue
        sub = [[row[c] for c in range(size) if c != col] for row in rows[1:]]
        term = entry * det(sub)
        total = total + (term if col % 2 == 0 else -term)
    return total


def proj_normalize(vec):
    """Scale so the first nonzero coordinate is 1."""
    for v in vec:
        if not v.is_zero():
            inv = v.inverse()
            return [u * inv for u in vec]
    raise ValueError("cannot normalize the zero vector")


def proj_equal(u, v) -> bool:
    """Projective equality: u = c*v for some nonzero scalar."""
    if len(u) != len(v):
        return False
    if all(x.is_zero() for x in u) or all(x.is_zero() for x in v):
        return False
    for i in range(len(u)):
        for j in range(len(u)):
            if not (u[i] * v[j] - u[j] * v[i]).is_zero():
                return False
    # supports must agree
    return all(x.is_zero() == y.is_zero() for x, y in zip(u, v))
