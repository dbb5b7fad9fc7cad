"""Exact linear algebra over a prime field F_p.

The numpy routines work on int64 arrays; they require p < 2**31 so that a
product of two residues never overflows.  The pure-Python routines have no
such bound and serve as references.
"""

from __future__ import annotations

import numpy as np

DEFAULT_PRIME = 32003
_NUMPY_LIMIT = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"modulus must be prime, got {p}")
    return p


def rank_mod_p_reference(rows, p: int) -> int:
    """Rank by plain row reduction on Python ints."""
    m = [[int(x) % p for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        m[rank] = [(x * inv) % p for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def det_mod_p(matrix, p: int) -> int:
    """Determinant of a square matrix over F_p, as a residue in [0, p)."""
    m = [[int(x) % p for x in row] for row in matrix]
    n = len(m)
    det = 1
    for c in range(n):
        pivot = next((r for r in range(c, n) if m[r][c]), None)
        if pivot is None:
            return 0
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det = (det * m[c][c]) % p
        inv = pow(m[c][c], p - 2, p)
        for r in range(c + 1, n):
            if m[r][c]:
                f = (m[r][c] * inv) % p
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[c])]
    return det % p


def _as_residues(a, p: int) -> np.ndarray:
    if p >= _NUMPY_LIMIT:
        raise ValueError(f"numpy path needs p < 2**31, got {p}")
    return np.mod(np.asarray(a, dtype=np.int64), p)


def _inv_mod(a: np.ndarray, p: int) -> np.ndarray:
    # Fermat inverse, elementwise; zeros stay zero
    result = np.ones_like(a)
    base = a.copy()
    e = p - 2
    while e:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


def rank_mod_p(matrix, p: int) -> int:
    """Rank over F_p via vectorised Gauss-Jordan elimination."""
    a = _as_residues(matrix, p)
    if a.ndim != 2 or a.size == 0:
        return 0
    a = a.copy()
    nrows, ncols = a.shape
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        nz = np.nonzero(a[rank:, c])[0]
        if nz.size == 0:
            continue
        pivot = rank + nz[0]
        if pivot != rank:
            a[[rank, pivot]] = a[[pivot, rank]]
        inv = pow(int(a[rank, c]), p - 2, p)
        a[rank] = (a[rank] * inv) % p
        col = a[:, c].copy()
        col[rank] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[rank])) % p
        rank += 1
    return rank


def batch_nonsingular(mats, p: int) -> np.ndarray:
    """For a stack of square matrices (N, b, b), flag which are invertible mod p."""
    a = _as_residues(mats, p).copy()
    if a.ndim != 3 or a.shape[1] != a.shape[2]:
        raise ValueError("expected an array of shape (N, b, b)")
    n, b, _ = a.shape
    ok = np.ones(n, dtype=bool)
    if n == 0 or b == 0:
        return ok
    idx = np.arange(n)
    for c in range(b):
        sub = a[:, c:, c] != 0
        has = sub.any(axis=1)
        ok &= has
        pivot = c + np.argmax(sub, axis=1)
        # swap row c with the pivot row in every matrix
        row_c = a[idx, c, :].copy()
        a[idx, c, :] = a[idx, pivot, :]
        a[idx, pivot, :] = row_c
        inv = _inv_mod(a[:, c, c], p)
        a[:, c, :] = (a[:, c, :] * inv[:, None]) % p
        if c + 1 < b:
            factors = a[:, c + 1:, c]
            a[:, c + 1:, :] = (a[:, c + 1:, :] - factors[:, :, None] * a[:, c, None, :]) % p
    return ok
