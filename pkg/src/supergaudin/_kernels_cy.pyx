# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled twin of ``_kernels_py``.

Arithmetic stays on Python big ints / Fractions (exactness is the whole
point); the win comes from compiled loop and indexing overhead.  Keep the
semantics byte-identical to the pure-Python module: the test suite runs
both backends against each other.
"""

from fractions import Fraction
from math import gcd


def mat_mul(A, B):
    """Dense product of two matrices (lists of rows, int or Fraction)."""
    cdef Py_ssize_t n = len(A)
    if n == 0:
        return []
    cdef Py_ssize_t k = len(B)
    cdef Py_ssize_t m = len(B[0]) if k else 0
    if len(A[0]) != k:
        raise ValueError("shape mismatch in mat_mul")
    cdef Py_ssize_t i, r, c
    Bcols = [[B[r][c] for r in range(k)] for c in range(m)]
    out = []
    for i in range(n):
        Ai = A[i]
        row = []
        for c in range(m):
            Bc = Bcols[c]
            acc = 0
            for r in range(k):
                a = Ai[r]
                if a:
                    acc = acc + a * Bc[r]
            row.append(acc)
        out.append(row)
    return out


cdef list _row_primitive(list row):
    cdef Py_ssize_t i, n = len(row)
    g = 0
    for i in range(n):
        x = row[i]
        if x:
            g = gcd(g, x if x > 0 else -x)
            if g == 1:
                break
    if g > 1:
        row = [x // g for x in row]
    for i in range(n):
        x = row[i]
        if x:
            if x < 0:
                row = [-y for y in row]
            break
    return row


def int_rref(rows):
    """Canonical reduced echelon form of an integer matrix.

    Returns ``(reduced_rows, pivot_columns)``; see the pure-Python twin
    for the normalization contract.
    """
    work = [list(rw) for rw in rows if any(rw)]
    cdef Py_ssize_t ncols = len(rows[0]) if rows else 0
    cdef Py_ssize_t nrows = len(work)
    cdef Py_ssize_t col, r, piv, rank = 0
    pivots = []
    for col in range(ncols):
        piv = -1
        for r in range(rank, nrows):
            if work[r][col]:
                piv = r
                break
        if piv < 0:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        pval = prow[col]
        for r in range(nrows):
            if r == rank:
                continue
            v = work[r][col]
            if v:
                row = work[r]
                work[r] = _row_primitive(
                    [row[c] * pval - prow[c] * v for c in range(ncols)]
                )
        work[rank] = _row_primitive(prow)
        pivots.append(col)
        rank += 1
    return work[:rank], pivots


def int_nullspace(rows, ncols):
    """Primitive integer basis of the right kernel of an integer matrix."""
    cdef Py_ssize_t free, r
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    red, pivots = int_rref(rows)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for r in range(len(pivots)):
            col = pivots[r]
            vec[col] = -Fraction(red[r][free], red[r][col])
        den = 1
        for v in vec:
            den = den * v.denominator // gcd(den, v.denominator)
        ivec = [int(v * den) for v in vec]
        basis.append(_row_primitive(ivec))
    return basis


def charpoly(A):
    """Characteristic polynomial coefficients ``[c_0, ..., c_n]``, monic."""
    cdef Py_ssize_t n = len(A)
    cdef Py_ssize_t i, k
    if n == 0:
        return [Fraction(1)]
    A = [[Fraction(x) for x in row] for row in A]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        for i in range(n):
            M[i][i] += coeffs[n - k + 1]
        M = mat_mul(A, M)
        trace = sum([M[i][i] for i in range(n)])
        coeffs[n - k] = -Fraction(trace) / k
    return coeffs
