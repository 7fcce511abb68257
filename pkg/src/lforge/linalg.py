"""Exact linear algebra: vectorized numpy arithmetic mod p, with a Fraction
fallback for the rationals.

Mod-p matrices are int64 numpy arrays with entries in [0, p).  All the heavy
graded-piece computations reduce to these routines, so they are the
performance floor of the whole package.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .fields import PrimeField, RationalField


def as_mod_array(A, p: int) -> np.ndarray:
    M = np.asarray(A, dtype=np.int64) % p
    if M.ndim == 1:
        M = M.reshape(1, -1)
    return M


def rref_mod(A, p: int):
    """Reduced row echelon form mod p.  Returns (R, pivot_columns)."""
    M = as_mod_array(A, p).copy()
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        M[r] = M[r] * pow(int(M[r, c]), p - 2, p) % p
        other = np.nonzero(M[:, c])[0]
        other = other[other != r]
        if other.size:
            M[other] = (M[other] - np.outer(M[other, c], M[r])) % p
        pivots.append(c)
        r += 1
    return M, pivots


def rank_mod(A, p: int) -> int:
    M = as_mod_array(A, p).copy()
    rows, cols = M.shape
    if rows < cols:
        M = M.T.copy()
        rows, cols = cols, rows
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        # right-looking update: the columns left of c are already zero below
        # the pivots, so only the trailing block needs work
        below = np.nonzero(M[r + 1 :, c])[0]
        if below.size:
            factor = M[r + 1 :, c] * pow(int(M[r, c]), p - 2, p) % p
            M[r + 1 :, c:] = (M[r + 1 :, c:] - np.outer(factor, M[r, c:])) % p
        r += 1
    return r


def nullspace_mod(A, p: int) -> np.ndarray:
    """Basis of the right kernel, one vector per column of the result."""
    M, pivots = rref_mod(A, p)
    cols = M.shape[1]
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for j, fc in enumerate(free):
        basis[fc, j] = 1
        for r, pc in enumerate(pivots):
            basis[pc, j] = (-M[r, fc]) % p
    return basis


def solve_mod(A, b, p: int):
    """One solution of A x = b mod p, or None if inconsistent.  b may be a
    vector or a matrix of right-hand sides."""
    A = as_mod_array(A, p)
    b = np.asarray(b, dtype=np.int64) % p
    vec = b.ndim == 1
    B = b.reshape(-1, 1) if vec else b
    aug = np.hstack([A, B])
    R, pivots = rref_mod(aug, p)
    ncols = A.shape[1]
    if any(c >= ncols for c in pivots):
        return None
    X = np.zeros((ncols, B.shape[1]), dtype=np.int64)
    for r, c in enumerate(pivots):
        X[c] = R[r, ncols:]
    return X[:, 0] if vec else X


def det_mod(A, p: int) -> int:
    M = as_mod_array(A, p).copy()
    n = M.shape[0]
    if M.shape[1] != n:
        raise ValueError("determinant of a non-square matrix")
    det = 1
    for c in range(n):
        nz = np.nonzero(M[c:, c])[0]
        if nz.size == 0:
            return 0
        i = c + int(nz[0])
        if i != c:
            M[[c, i]] = M[[i, c]]
            det = -det
        piv = int(M[c, c])
        det = det * piv % p
        if c + 1 < n:
            factor = M[c + 1 :, c] * pow(piv, p - 2, p) % p
            M[c + 1 :] = (M[c + 1 :] - np.outer(factor, M[c])) % p
    return det % p


def inv_mod(A, p: int) -> np.ndarray:
    A = as_mod_array(A, p)
    n = A.shape[0]
    if A.shape[1] != n:
        raise ValueError("inverse of a non-square matrix")
    X = solve_mod(A, np.eye(n, dtype=np.int64), p)
    if X is None or rank_mod(A, p) != n:
        raise ValueError("matrix is singular mod p")
    return X


# -- Fraction (exact rational) versions -------------------------------


def _frac_matrix(A):
    return [[Fraction(x) for x in row] for row in A]


def rref_frac(A):
    M = _frac_matrix(A)
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pr = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M, pivots


def rank_frac(A) -> int:
    return len(rref_frac(A)[1])


def nullspace_frac(A):
    M, pivots = rref_frac(A)
    cols = len(M[0]) if M else 0
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -M[r][fc]
        basis.append(v)
    return basis


def solve_frac(A, b):
    rows = len(A)
    aug = [list(map(Fraction, row)) + [Fraction(b[i])] for i, row in enumerate(A)]
    R, pivots = rref_frac(aug)
    ncols = len(A[0]) if rows else 0
    if any(c >= ncols for c in pivots):
        return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = R[r][ncols]
    return x


def det_frac(A) -> Fraction:
    M = _frac_matrix(A)
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if M[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            M[c], M[pr] = M[pr], M[c]
            det = -det
        det *= M[c][c]
        inv = 1 / M[c][c]
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] * inv
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return det


# -- field dispatch ---------------------------------------------------


def rank_over(field, A) -> int:
    if isinstance(field, PrimeField):
        return rank_mod(A, field.p)
    if isinstance(field, RationalField):
        return rank_frac(A)
    raise TypeError(f"unsupported field {field!r}")


def nullspace_over(field, A):
    """Right-kernel basis as a list of coefficient vectors."""
    if isinstance(field, PrimeField):
        B = nullspace_mod(A, field.p)
        return [B[:, j].tolist() for j in range(B.shape[1])]
    if isinstance(field, RationalField):
        return nullspace_frac(A)
    raise TypeError(f"unsupported field {field!r}")


def solve_over(field, A, b):
    if isinstance(field, PrimeField):
        x = solve_mod(A, b, field.p)
        return None if x is None else x.tolist()
    if isinstance(field, RationalField):
        return solve_frac(A, b)
    raise TypeError(f"unsupported field {field!r}")
