"""Numba-jitted mod-p matrix kernels (hot backend).

Mirrors _fp_numpy exactly; the jitted loops matter for the exhaustive
submodule enumerations, where millions of spin/insert steps occur.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def inv_mod(a: int, p: int) -> int:
    a = a % p
    result = 1
    exp = p - 2
    base = a
    while exp > 0:
        if exp & 1:
            result = (result * base) % p
        base = (base * base) % p
        exp >>= 1
    return result


@njit(cache=True)
def rref_mod(a: np.ndarray, p: int):
    r = a % p
    nrows, ncols = r.shape
    npiv = min(nrows, ncols)
    pivots = np.full(npiv, -1, dtype=np.int64)
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
            for j in range(ncols):
                tmp = r[sel, j]
                r[sel, j] = r[rank, j]
                r[rank, j] = tmp
        iv = inv_mod(r[rank, col], p)
        for j in range(ncols):
            r[rank, j] = (r[rank, j] * iv) % p
        for row in range(nrows):
            if row != rank and r[row, col] != 0:
                f = r[row, col]
                for j in range(ncols):
                    r[row, j] = (r[row, j] - f * r[rank, j]) % p
        pivots[rank] = col
        rank += 1
        if rank == nrows:
            break
    return r, pivots, rank


@njit(cache=True)
def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    n, k = a.shape
    k2, m = b.shape
    out = np.zeros((n, m), dtype=np.int64)
    for i in range(n):
        for j in range(m):
            acc = 0
            for t in range(k):
                acc = (acc + a[i, t] * b[t, j]) % p
            out[i, j] = acc
    return out


@njit(cache=True)
def spin_mod(seeds: np.ndarray, ops: np.ndarray, p: int):
    nops = ops.shape[0]
    n = ops.shape[1]
    basis = np.zeros((n, n), dtype=np.int64)
    pivot_of_col = np.full(n, -1, dtype=np.int64)
    nbasis = 0
    # queue of vectors awaiting insertion; a closure adds at most n
    # independent rows, each spawning nops successors
    cap = max(seeds.shape[0], 1) + n * nops + 1
    queue = np.zeros((cap, n), dtype=np.int64)
    qlen = 0
    for i in range(seeds.shape[0]):
        for j in range(n):
            queue[qlen, j] = seeds[i, j] % p
        qlen += 1
    head = 0
    while head < qlen:
        v = queue[head].copy()
        head += 1
        newrow = -1
        for c in range(n):
            if v[c] != 0:
                r = pivot_of_col[c]
                if r >= 0:
                    f = v[c]
                    for j in range(n):
                        v[j] = (v[j] - f * basis[r, j]) % p
                else:
                    iv = inv_mod(v[c], p)
                    for j in range(n):
                        basis[nbasis, j] = (v[j] * iv) % p
                    pivot_of_col[c] = nbasis
                    newrow = nbasis
                    nbasis += 1
                    break
        if newrow >= 0:
            if head > 0:
                # compact the consumed prefix so capacity is never exceeded
                for t in range(head, qlen):
                    for j in range(n):
                        queue[t - head, j] = queue[t, j]
                qlen -= head
                head = 0
            for k in range(nops):
                for j in range(n):
                    acc = 0
                    for t in range(n):
                        acc = (acc + basis[newrow, t] * ops[k, t, j]) % p
                    queue[qlen, j] = acc
                qlen += 1
    r, _, rank = rref_mod(basis[:nbasis], p)
    return r[:rank]
