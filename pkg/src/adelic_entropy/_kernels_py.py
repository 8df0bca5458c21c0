"""numpy fallback for the compiled elimination kernels (same signatures)."""

import numpy as np


def _echelon(a: np.ndarray, p: int, want_det: bool):
    a = np.mod(np.array(a, dtype=np.int64), p)
    nrows, ncols = a.shape
    row, det = 0, 1
    for col in range(ncols):
        if row >= nrows:
            break
        nz = np.flatnonzero(a[row:, col])
        if nz.size == 0:
            if want_det:
                return row, 0
            continue
        piv = row + int(nz[0])
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
            det = -det
        pivot = int(a[row, col])
        det = det * pivot % p
        inv = pow(pivot, -1, p)
        below = row + 1 + np.flatnonzero(a[row + 1:, col])
        if below.size:
            factors = a[below, col] * inv % p
            a[below, col:] = (a[below, col:] - np.outer(factors, a[row, col:])) % p
        row += 1
    return row, (det % p if row == nrows else 0)


def det_mod(a, p):
    a = np.asarray(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError("det_mod needs a square matrix")
    if a.shape[0] == 0:
        return 1 % p
    return _echelon(a, int(p), True)[1]


def rank_mod(a, p):
    return _echelon(np.asarray(a), int(p), False)[0]


def rank_gf2(packed, ncols):
    rows = np.array(packed, dtype=np.uint64, copy=True)
    nrows = rows.shape[0]
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        word, bit = col >> 6, np.uint64(1 << (col & 63))
        hits = row + np.flatnonzero(rows[row:, word] & bit)
        if hits.size == 0:
            continue
        piv = int(hits[0])
        if piv != row:
            rows[[row, piv]] = rows[[piv, row]]
            hits = row + np.flatnonzero(rows[row:, word] & bit)
        others = hits[hits != row]
        if others.size:
            rows[others, word:] ^= rows[row, word:]
        row += 1
    return row
