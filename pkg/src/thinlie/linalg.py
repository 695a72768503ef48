"""Dense exact linear algebra over F_p on int64 numpy arrays.

Row reduction uses leftmost pivots and produces the canonical reduced
echelon form, so every basis derived from it is deterministic.
"""

from __future__ import annotations

import numpy as np

__all__ = ["rref", "rank", "nullspace", "left_nullspace"]


def _as_matrix(mat, p: int) -> np.ndarray:
    m = np.array(mat, dtype=np.int64)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D array, got shape {m.shape}")
    return m % p


def rref(mat, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p.

    Returns ``(R, pivots)`` where R contains one row per pivot (zero rows
    dropped) and ``pivots`` lists the pivot column of each row, ascending.
    """
    m = _as_matrix(mat, p)
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        m[r] = m[r] * pow(int(m[r, c]), -1, p) % p
        col = m[:, c].copy()
        col[r] = 0
        m = (m - np.outer(col, m[r])) % p
        pivots.append(c)
        r += 1
    return m[: len(pivots)], pivots


def rank(mat, p: int) -> int:
    return len(rref(mat, p)[1])


def nullspace(mat, p: int) -> np.ndarray:
    """Canonical basis, as rows, of ``{v : mat @ v = 0}`` over F_p."""
    m = _as_matrix(mat, p)
    ncols = m.shape[1]
    red, pivots = rref(m, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for row, f in enumerate(free):
        basis[row, f] = 1
        for i, c in enumerate(pivots):
            basis[row, c] = (-red[i, f]) % p
    return basis


def left_nullspace(mat, p: int) -> np.ndarray:
    """Canonical basis, as rows, of ``{v : v @ mat = 0}`` over F_p."""
    return nullspace(_as_matrix(mat, p).T, p)
