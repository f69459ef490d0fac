"""Exact integer linear algebra on symmetric forms and rectangular matrices.

Matrices are immutable tuples of tuples of Python ints; all computations are
arbitrary-precision integer or exact rational.  No floating point anywhere in
this module: determinants and inertia feed yes/no decisions downstream where
rounding would be unsound.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = tuple[tuple[int, ...], ...]


def as_matrix(rows) -> Matrix:
    """Freeze a nested sequence of ints into a Matrix, validating shape."""
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if not m or not m[0]:
        raise ValueError("matrix must have positive dimensions")
    width = len(m[0])
    if any(len(row) != width for row in m):
        raise ValueError("ragged rows")
    return m


def dims(a: Matrix) -> tuple[int, int]:
    return len(a), len(a[0])


def is_symmetric(a: Matrix) -> bool:
    n, m = dims(a)
    return n == m and all(a[i][j] == a[j][i] for i in range(n) for j in range(i))


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(n: int, m: int) -> Matrix:
    return tuple((0,) * m for _ in range(n))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k = dims(a)
    k2, m = dims(b)
    if k != k2:
        raise ValueError(f"dimension mismatch: {n}x{k} times {k2}x{m}")
    bt = transpose(b)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def scalar_mul(c: int, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def congruence(p: Matrix, a: Matrix) -> Matrix:
    """P^t A P, computed exactly.  Rows of P must match the order of A."""
    n, m = dims(a)
    if not is_symmetric(a):
        raise ValueError("form must be symmetric")
    rp, _ = dims(p)
    if rp != n:
        raise ValueError(f"row count of P ({rp}) must equal order of A ({n})")
    return mat_mul(transpose(p), mat_mul(a, p))


def determinant(a: Matrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n, m = dims(a)
    if n != m:
        raise ValueError("determinant requires a square matrix")
    mat = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if mat[k][k] == 0:
            for i in range(k + 1, n):
                if mat[i][k] != 0:
                    mat[k], mat[i] = mat[i], mat[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) // prev
            mat[i][k] = 0
        prev = mat[k][k]
    return sign * mat[n - 1][n - 1]


def inertia(a: Matrix) -> tuple[int, int, int]:
    """(p_plus, p_minus, p_zero) of a symmetric form.

    Symmetric Gaussian elimination over exact rationals with diagonal pivot
    search; when the trailing diagonal is all zero but an off-diagonal entry
    survives, a hyperbolic row/column shear makes a diagonal pivot (that 2x2
    block contributes one positive and one negative square).
    """
    if not is_symmetric(a):
        raise ValueError("inertia requires a symmetric matrix")
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    plus = minus = 0
    k = 0
    while k < n:
        pivot = next((i for i in range(k, n) if m[i][i] != 0), None)
        if pivot is None:
            offdiag = None
            for i in range(k, n):
                for j in range(i + 1, n):
                    if m[i][j] != 0:
                        offdiag = (i, j)
                        break
                if offdiag:
                    break
            if offdiag is None:
                break  # trailing block vanishes: the rest is the kernel
            i, j = offdiag
            for r in range(k, n):
                m[i][r] += m[j][r]
            for r in range(k, n):
                m[r][i] += m[r][j]
            pivot = i
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            for row in m:
                row[k], row[pivot] = row[pivot], row[k]
        d = m[k][k]
        if d > 0:
            plus += 1
        else:
            minus += 1
        # symmetric Schur complement on the trailing block
        col = [m[i][k] for i in range(n)]
        for i in range(k + 1, n):
            if col[i]:
                for j in range(k + 1, n):
                    m[i][j] -= col[i] * col[j] / d
        for i in range(k + 1, n):
            m[i][k] = m[k][i] = Fraction(0)
        k += 1
    return plus, minus, n - plus - minus


def signature(a: Matrix) -> int:
    p, q, _ = inertia(a)
    return p - q


def is_even_form(a: Matrix) -> bool:
    """A symmetric integer form is even iff every diagonal entry is even."""
    if not is_symmetric(a):
        raise ValueError("parity requires a symmetric matrix")
    return all(a[i][i] % 2 == 0 for i in range(len(a)))


def parity(a: Matrix) -> str:
    return "even" if is_even_form(a) else "odd"


def direct_sum(a: Matrix, b: Matrix) -> Matrix:
    na, _ = dims(a)
    nb, _ = dims(b)
    top = tuple(row + (0,) * nb for row in a)
    bottom = tuple((0,) * na + row for row in b)
    return top + bottom


def smith_normal_form(a: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """(U, D, V) with U*A*V = D, U and V unimodular, D diagonal with
    d_i | d_{i+1}.

    Classic gcd-driven row/column reduction; fine for the <= ~40x40 matrices
    seen here.
    """
    rows, cols = dims(a)
    m = [list(row) for row in a]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def row_op(i, j, q):  # row_i -= q * row_j
        m[i] = [x - q * y for x, y in zip(m[i], m[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in range(rows):
            m[r][i] -= q * m[r][j]
        for r in range(cols):
            v[r][i] -= q * v[r][j]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in range(rows):
            m[r][i], m[r][j] = m[r][j], m[r][i]
        for r in range(cols):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        u[i] = [-x for x in u[i]]

    for s in range(min(rows, cols)):
        while True:
            best = None
            for i in range(s, rows):
                for j in range(s, cols):
                    if m[i][j] != 0 and (best is None or abs(m[i][j]) < best[0]):
                        best = (abs(m[i][j]), i, j)
            if best is None:
                break
            _, bi, bj = best
            if bi != s:
                swap_rows(s, bi)
            if bj != s:
                swap_cols(s, bj)
            if m[s][s] < 0:
                negate_row(s)
            dirty = False
            for i in range(s + 1, rows):
                if m[i][s] != 0:
                    row_op(i, s, m[i][s] // m[s][s])
                    dirty = dirty or m[i][s] != 0
            for j in range(s + 1, cols):
                if m[s][j] != 0:
                    col_op(j, s, m[s][j] // m[s][s])
                    dirty = dirty or m[s][j] != 0
            if dirty:
                continue
            # pivot divides its whole row/column; pull in any entry it
            # fails to divide so the invariant-factor chain comes out right
            culprit = None
            for i in range(s + 1, rows):
                for j in range(s + 1, cols):
                    if m[i][j] % m[s][s] != 0:
                        culprit = i
                        break
                if culprit:
                    break
            if culprit is None:
                break
            row_op(s, culprit, -1)  # adds the offending row to the pivot row

    d = tuple(
        tuple(m[i][j] if i == j else 0 for j in range(cols)) for i in range(rows)
    )
    # safety net: the loop above must already have produced exact zeros
    for i in range(rows):
        for j in range(cols):
            if i != j and m[i][j] != 0:
                raise AssertionError("smith reduction left a nonzero off-diagonal")
    return as_matrix(u), d, as_matrix(v)
