"""Row reduction over F_p (numpy) and over arbitrary exact fields (objects).

Subspaces of F_p^n are always reported as the nonzero rows of their reduced
row echelon form, which is canonical, so equality of subspaces is equality
of arrays.
"""

from __future__ import annotations

import itertools

import numpy as np


def rref(A, p):
    """Reduced row echelon form of A over F_p; returns (R, pivot_columns)."""
    R = np.array(A, dtype=np.int64) % p
    if R.ndim == 1:
        R = R.reshape(1, -1)
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        inv = pow(int(R[r, c]), -1, p)
        R[r] = (R[r] * inv) % p
        col = R[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            R[nzr] = (R[nzr] - np.outer(col[nzr], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A, p):
    return len(rref(A, p)[1])


def row_space(rows, p, n=None):
    """Canonical basis (rref rows) of the span of ``rows``."""
    rows = np.array(rows, dtype=np.int64)
    if rows.size == 0:
        width = n if n is not None else (rows.shape[1] if rows.ndim == 2 else 0)
        return np.zeros((0, width), dtype=np.int64)
    R, piv = rref(rows, p)
    return R[: len(piv)]


def column_space(A, p):
    """Canonical basis of the image {A x}, as rows."""
    A = np.asarray(A, dtype=np.int64)
    return row_space(A.T, p, n=A.shape[0])


def nullspace(A, p):
    """Basis (rows) of {x : A x = 0} over F_p, in canonical rref form."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    R, piv = rref(A, p)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = np.zeros(n, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(piv):
            v[c] = (-R[i, f]) % p
        basis.append(v)
    if not basis:
        return np.zeros((0, n), dtype=np.int64)
    return row_space(basis, p)


def matmul(A, B, p):
    return (np.asarray(A, dtype=np.int64) @ np.asarray(B, dtype=np.int64)) % p


def matpow(A, k, p):
    n = A.shape[0]
    result = np.eye(n, dtype=np.int64)
    base = np.asarray(A, dtype=np.int64) % p
    while k:
        if k & 1:
            result = matmul(result, base, p)
        base = matmul(base, base, p)
        k >>= 1
    return result


def image_of_subspace(A, basis, p):
    """Canonical basis of A(span(basis)); basis vectors are rows."""
    if len(basis) == 0:
        return np.zeros((0, A.shape[0]), dtype=np.int64)
    imgs = matmul(basis, np.asarray(A).T, p)
    return row_space(imgs, p, n=A.shape[0])


def subspace_contains(U, V, p):
    """True iff span(V) is a subspace of span(U)."""
    if len(V) == 0:
        return True
    if len(U) == 0:
        return not np.any(np.asarray(V) % p)
    return rank(np.vstack([U, V]), p) == rank(U, p)


def subspaces_equal(U, V, p):
    return subspace_contains(U, V, p) and subspace_contains(V, U, p)


def span_points(basis, p, n=None):
    """All vectors of span(basis) encoded as ints sum(v_i p^i); sorted."""
    basis = np.asarray(basis, dtype=np.int64)
    if n is None:
        n = basis.shape[1] if basis.ndim == 2 else 0
    weights = np.array([p ** i for i in range(n)], dtype=object)
    if len(basis) == 0:
        return [0]
    points = set()
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        v = (np.asarray(coeffs, dtype=np.int64) @ basis) % p
        points.add(int(np.dot(v.astype(object), weights)))
    return sorted(points)


def vector_to_int(v, p):
    out = 0
    for d in reversed([int(x) for x in v]):
        out = out * p + d
    return out


def int_to_vector(a, p, n):
    v = np.zeros(n, dtype=np.int64)
    for i in range(n):
        a, v[i] = divmod(a, p)
    return v


# --- generic exact fields ---------------------------------------------------

def rref_generic(rows):
    """RREF of a list of lists of exact field elements (RatFunc, FFElem, ...)."""
    M = [list(r) for r in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if not M[i][c].is_zero()), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = M[r][c].inverse()
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and not M[i][c].is_zero():
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def nullspace_generic(rows, ncols, zero, one):
    """Kernel basis of the homogeneous system rows * x = 0."""
    if not rows:
        basis = []
        for j in range(ncols):
            basis.append([one if i == j else zero for i in range(ncols)])
        return basis
    R, piv = rref_generic(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for i, c in enumerate(piv):
            v[c] = -R[i][f]
        basis.append(v)
    return basis


def solve_generic(rows, rhs, zero, one):
    """One solution x of rows * x = rhs, or None if inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, piv = rref_generic(aug)
    if ncols in piv:
        return None
    x = [zero] * ncols
    for i, c in enumerate(piv):
        x[c] = R[i][ncols]
    return x
