# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled elimination kernels over Z/pZ (p < 2^31) and bit-packed GF(2)."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()


cdef inline int64_t _inv_mod(int64_t a, int64_t p) nogil:
    cdef int64_t t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef int64_t _eliminate(int64_t[:, ::1] a, int64_t p, bint want_det, int64_t *det_out) nogil:
    # Row-echelon form in place; returns the rank, det in det_out when square.
    cdef Py_ssize_t nrows = a.shape[0], ncols = a.shape[1]
    cdef Py_ssize_t row = 0, col, i, j, piv
    cdef int64_t inv, neg, det = 1, tmp
    cdef int64_t *prow
    cdef int64_t *irow
    for col in range(ncols):
        if row >= nrows:
            break
        piv = -1
        for i in range(row, nrows):
            if a[i, col] != 0:
                piv = i
                break
        if piv < 0:
            if want_det:
                det_out[0] = 0
                return row
            continue
        if piv != row:
            for j in range(col, ncols):
                tmp = a[row, j]
                a[row, j] = a[piv, j]
                a[piv, j] = tmp
            det = (p - det) % p
        det = (det * a[row, col]) % p
        inv = _inv_mod(a[row, col], p)
        prow = &a[row, 0]
        for i in range(row + 1, nrows):
            if a[i, col] != 0:
                # entries stay in [0, p): x + (p - c) * y < 2^62
                neg = p - (a[i, col] * inv) % p
                irow = &a[i, 0]
                for j in range(col, ncols):
                    if prow[j] != 0:
                        irow[j] = (irow[j] + neg * prow[j]) % p
        row += 1
    det_out[0] = det if row == nrows else 0
    return row


def det_mod(a, int64_t p):
    """Determinant of a square integer matrix modulo the prime p < 2^31."""
    cdef int64_t[:, ::1] work = np.mod(np.asarray(a, dtype=np.int64), p)
    cdef int64_t det = 0
    if work.shape[0] != work.shape[1]:
        raise ValueError("det_mod needs a square matrix")
    if work.shape[0] == 0:
        return 1 % p
    with nogil:
        _eliminate(work, p, True, &det)
    return int(det)


def rank_mod(a, int64_t p):
    """Rank over Z/pZ of an integer matrix, p < 2^31."""
    cdef int64_t[:, ::1] work = np.mod(np.asarray(a, dtype=np.int64), p)
    cdef int64_t det = 0
    cdef int64_t r
    with nogil:
        r = _eliminate(work, p, False, &det)
    return int(r)


def rank_gf2(packed, Py_ssize_t ncols):
    """Rank over GF(2) of rows bit-packed little-endian into uint64 words."""
    cdef uint64_t[:, ::1] rows = np.array(packed, dtype=np.uint64, copy=True, order="C")
    cdef Py_ssize_t nrows = rows.shape[0], nwords = rows.shape[1]
    cdef Py_ssize_t row = 0, col, i, w, piv, word
    cdef uint64_t bit, tmp
    with nogil:
        for col in range(ncols):
            if row >= nrows:
                break
            word = col >> 6
            bit = (<uint64_t>1) << (col & 63)
            piv = -1
            for i in range(row, nrows):
                if rows[i, word] & bit:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != row:
                for w in range(word, nwords):
                    tmp = rows[row, w]
                    rows[row, w] = rows[piv, w]
                    rows[piv, w] = tmp
            for i in range(row + 1, nrows):
                if rows[i, word] & bit:
                    for w in range(word, nwords):
                        rows[i, w] ^= rows[row, w]
            row += 1
    return int(row)
