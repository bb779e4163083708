"""Pure-numpy mod-p matrix kernels (fallback backend).

Same signatures as the numba backend; all matrices are int64 arrays with
entries already reduced into [0, p).  p is assumed prime and small enough
that p**2 * ncols fits in int64, which holds for every supported modulus.
"""

from __future__ import annotations

import numpy as np


def inv_mod(a: int, p: int) -> int:
    return pow(int(a) % p, p - 2, p)


def rref_mod(a: np.ndarray, p: int):
    """Reduced row echelon form of `a` mod p.

    Returns (r, pivots, rank) where r has the same shape as `a` with the
    RREF in its first `rank` rows, and pivots[:rank] are the pivot columns.
    """
    r = a.copy() % p
    nrows, ncols = r.shape
    pivots = np.full(min(nrows, ncols), -1, dtype=np.int64)
    rank = 0
    for col in range(ncols):
        sel = -1
        for row in range(rank, nrows):
            if r[row, col] != 0:
                sel = row
                break
        if sel < 0:
            continue
        if sel != rank:
            tmp = r[sel].copy()
            r[sel] = r[rank]
            r[rank] = tmp
        r[rank] = (r[rank] * inv_mod(r[rank, col], p)) % p
        for row in range(nrows):
            if row != rank and r[row, col] != 0:
                r[row] = (r[row] - r[row, col] * r[rank]) % p
        pivots[rank] = col
        rank += 1
        if rank == nrows:
            break
    return r, pivots, rank


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (a @ b) % p


def _insert_echelon(basis, pivot_of_col, v, p):
    """Reduce v against the (pivot-normalised) echelon rows in basis and
    append it if independent.  Returns the new rank delta (0 or 1)."""
    n = v.shape[0]
    for c in range(n):
        if v[c] != 0:
            r = pivot_of_col[c]
            if r >= 0:
                v = (v - v[c] * basis[r]) % p
            else:
                v = (v * inv_mod(v[c], p)) % p
                basis.append(v)
                pivot_of_col[c] = len(basis) - 1
                return 1
    return 0


def spin_mod(seeds: np.ndarray, ops: np.ndarray, p: int):
    """Smallest subspace containing the seed rows and stable under every
    right-action operator in ops (v -> v @ op).  Returns its RREF basis."""
    nops, n, _ = ops.shape
    basis: list[np.ndarray] = []
    pivot_of_col = np.full(n, -1, dtype=np.int64)
    queue = [seeds[i] % p for i in range(seeds.shape[0])]
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        before = len(basis)
        if _insert_echelon(basis, pivot_of_col, v.copy(), p):
            w = basis[before]
            for k in range(nops):
                queue.append((w @ ops[k]) % p)
    if not basis:
        return np.zeros((0, n), dtype=np.int64)
    mat = np.stack(basis)
    r, _, rank = rref_mod(mat, p)
    return r[:rank]
