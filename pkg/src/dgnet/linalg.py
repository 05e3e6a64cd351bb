"""Dense exact linear algebra over Q(i).

Matrices are lists of rows of QQi entries, acting on column coordinate
vectors; a map V -> W with dim V = n, dim W = m is an m x n matrix.
"""

from __future__ import annotations

from .scalar import QQi, ZERO, ONE


def zeros(m, n):
    return [[ZERO] * n for _ in range(m)]


def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def shape(mat):
    return (len(mat), len(mat[0]) if mat else 0)


def copy(mat):
    return [row[:] for row in mat]


def transpose(mat):
    m, n = shape(mat)
    return [[mat[i][j] for i in range(m)] for j in range(n)]


def add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(c, a):
    return [[c * x for x in row] for row in a]


def matmul(a, b):
    m, k = shape(a)
    k2, n = shape(b)
    if k != k2:
        raise ValueError("shape mismatch %sx%s @ %sx%s" % (m, k, k2, n))
    bt = transpose(b)
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = ZERO
            for x, y in zip(row, col):
                if x and y:
                    acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return out


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v) if x and y), ZERO) for row in a]


def is_zero(mat):
    return all(not x for row in mat for x in row)


def eq(a, b):
    return shape(a) == shape(b) and all(
        x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb)
    )


def hstack(*mats):
    mats = [m for m in mats if shape(m)[1] > 0 or shape(m)[0] > 0]
    if not mats:
        return []
    rows = len(mats[0])
    return [sum((m[i] for m in mats), []) for i in range(rows)]


def block_diag(blocks):
    m = sum(shape(b)[0] for b in blocks)
    n = sum(shape(b)[1] for b in blocks)
    out = zeros(m, n)
    i0 = j0 = 0
    for b in blocks:
        bm, bn = shape(b)
        for i in range(bm):
            out[i0 + i][j0 : j0 + bn] = b[i][:]
        i0 += bm
        j0 += bn
    return out


def kron(a, b):
    am, an = shape(a)
    bm, bn = shape(b)
    out = zeros(am * bm, an * bn)
    for i in range(am):
        for j in range(an):
            x = a[i][j]
            if not x:
                continue
            for k in range(bm):
                row = out[i * bm + k]
                brow = b[k]
                for l in range(bn):
                    if brow[l]:
                        row[j * bn + l] = x * brow[l]
    return out


def rref(mat):
    """Reduced row echelon form.  Returns (R, pivot column list)."""
    r = copy(mat)
    m, n = shape(r)
    pivots = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        piv = next((i for i in range(row, m) if r[i][col]), None)
        if piv is None:
            continue
        r[row], r[piv] = r[piv], r[row]
        inv = r[row][col].inv()
        r[row] = [x * inv for x in r[row]]
        prow = r[row]
        for i in range(m):
            if i != row and r[i][col]:
                c = r[i][col]
                r[i] = [x - c * y for x, y in zip(r[i], prow)]
        pivots.append(col)
        row += 1
    return r, pivots


def rank(mat):
    if not mat or not mat[0]:
        return 0
    return len(rref(mat)[1])


def nullspace(mat):
    """Basis of the kernel, as a list of column vectors."""
    m, n = shape(mat)
    if n == 0:
        return []
    if m == 0:
        return [
            [ONE if i == j else ZERO for i in range(n)] for j in range(n)
        ]
    r, pivots = rref(mat)
    pivset = set(pivots)
    free = [j for j in range(n) if j not in pivset]
    basis = []
    for j in free:
        v = [ZERO] * n
        v[j] = ONE
        for row_i, p in enumerate(pivots):
            v[p] = -r[row_i][j]
        basis.append(v)
    return basis


def column_space_pivots(mat):
    """Indices of a deterministic maximal independent column subset."""
    return rref(mat)[1]


def solve(a, b):
    """Solve a @ X = b exactly (b a matrix of columns); None if inconsistent."""
    m, n = shape(a)
    bm, bn = shape(b) if b else (m, 0)
    if bn == 0:
        return zeros(n, 0)
    if bm != m:
        raise ValueError("rhs row mismatch")
    aug = hstack(a, b) if n else copy(b)
    r, pivots = rref(aug)
    for row_i in range(len(pivots)):
        if pivots[row_i] >= n:
            return None
    x = zeros(n, bn)
    for row_i, p in enumerate(pivots):
        for j in range(bn):
            x[p][j] = r[row_i][n + j]
    # rows of r beyond the pivots must be zero on the rhs too
    for i in range(len(pivots), m):
        if any(r[i][n + j] for j in range(bn)):
            return None
    return x


def from_columns(cols, nrows=None):
    if not cols:
        return [[] for _ in range(nrows or 0)]
    return transpose(cols)


def columns(mat):
    return transpose(mat)


def to_float_array(mat):
    """Cast to a nested list of python complex (numeric layer boundary)."""
    return [[complex(x) for x in row] for row in mat]


def parse_matrix(rows):
    return [[QQi.parse(x) for x in row] for row in rows]


def dump_matrix(mat):
    return [[x.to_tuple() for x in row] for row in mat]
