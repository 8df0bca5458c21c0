"""Elimination kernels: the compiled extension when it imports, numpy otherwise.

Set ``ADELIC_ENTROPY_PURE=1`` to force the numpy fallback.
"""

import os

import numpy as np

from . import _kernels_py

if os.environ.get("ADELIC_ENTROPY_PURE", "") not in ("", "0"):
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

BACKENDS = {"python": _kernels_py}
if _compiled is not None:
    BACKENDS["cython"] = _compiled

BACKEND = "cython" if _compiled is not None else "python"
_impl = BACKENDS[BACKEND]

# moduli must stay below 2^31 so that products fit in int64
MAX_MODULUS = 2**31


def _c(a):
    return np.ascontiguousarray(a, dtype=np.int64)


def det_mod(a, p: int) -> int:
    return int(_impl.det_mod(_c(a), p))


def rank_mod(a, p: int) -> int:
    if p == 2:
        a = np.asarray(a)
        return rank_gf2(pack_gf2(a), a.shape[1])
    return int(_impl.rank_mod(_c(a), p))


def rank_gf2(packed, ncols: int) -> int:
    return int(_impl.rank_gf2(np.ascontiguousarray(packed, dtype=np.uint64), ncols))


def pack_gf2(a) -> np.ndarray:
    """Pack the parity of each entry into little-endian uint64 words, one row per row."""
    bits = (np.asarray(a) % 2).astype(np.uint8)
    nrows, ncols = bits.shape
    nwords = max(1, -(-ncols // 64))
    padded = np.zeros((nrows, nwords * 64), dtype=np.uint8)
    padded[:, :ncols] = bits
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64)


def rank_mod_bigint(rows, p: int) -> int:
    """Row-reduction with Python ints, for moduli too large for the int64 kernels."""
    a = [[int(x) % p for x in r] for r in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], -1, p)
        for i in range(rank + 1, len(a)):
            if a[i][col]:
                q = a[i][col] * inv % p
                a[i] = [(x - q * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank
