"""Folner boxes [0, n)^d and the finite matrices a group-ring element induces on them."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from . import kernels
from .errors import DimensionError, GuardError, ZeroPolynomialError
from .laurent import Exponent, LaurentPoly
from .padic import Prime, is_prime, vp

MAX_VOLUME = 4096
ENUMERATION_GUARD = 2**24
THREADS_ENV = "ADELIC_ENTROPY_THREADS"


@dataclass(frozen=True)
class Window:
    dim: int
    side: int

    def __post_init__(self):
        if self.dim < 1 or self.side < 1:
            raise ValueError("window needs dim >= 1 and side >= 1")

    @property
    def volume(self) -> int:
        return self.side**self.dim

    def elements(self) -> List[Exponent]:
        """Box points in lexicographic order (row-major)."""
        return list(product(range(self.side), repeat=self.dim))

    def coords(self) -> np.ndarray:
        return np.array(np.unravel_index(np.arange(self.volume), (self.side,) * self.dim)).T

    def boundary_count(self, radius: int) -> int:
        """Points within ``radius`` (sup-norm) of the complement of the box."""
        inner = max(0, self.side - 2 * radius)
        return self.volume - inner**self.dim

    def check_volume(self):
        if self.volume > MAX_VOLUME:
            raise GuardError(f"window volume {self.volume} exceeds {MAX_VOLUME}")


@dataclass(frozen=True, eq=False)
class RestrictionMatrix:
    """entries[s, t] = f_{t-s} for s, t in the window."""

    window: Window
    entries: np.ndarray

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def transpose(self) -> "RestrictionMatrix":
        return RestrictionMatrix(self.window, np.ascontiguousarray(self.entries.T))


@dataclass(frozen=True, eq=False)
class TranslateMatrix:
    """Row s holds the translate of f by -s over F_p, in the columns listed in ``columns``."""

    window: Window
    prime: int
    columns: Tuple[Exponent, ...]
    entries: np.ndarray


def support_diameter(f: LaurentPoly) -> int:
    """Largest coordinate spread of the support (sup-norm diameter)."""
    sup = np.array(f.support())
    return int((sup.max(axis=0) - sup.min(axis=0)).max())


def _integer_terms(f: LaurentPoly):
    if f.is_zero():
        raise ZeroPolynomialError("restriction of the zero polynomial")
    if not f.is_integral():
        raise ValueError("restriction matrices need integer coefficients")
    return [(e, int(c)) for e, c in f.items()]


def build_restriction(f: LaurentPoly, w: Window) -> RestrictionMatrix:
    if f.dim != w.dim:
        raise DimensionError("polynomial and window dimensions differ")
    w.check_volume()
    terms = _integer_terms(f)
    big = any(abs(c) >= 2**62 for _, c in terms)
    m = np.zeros((w.volume, w.volume), dtype=object if big else np.int64)
    coords = w.coords()
    shape = (w.side,) * w.dim
    for exp, c in terms:
        shifted = coords + np.asarray(exp)
        inside = np.all((shifted >= 0) & (shifted < w.side), axis=1)
        rows = np.flatnonzero(inside)
        cols = np.ravel_multi_index(tuple(shifted[inside].T), shape) if rows.size else rows
        m[rows, cols] = c
    return RestrictionMatrix(w, m)


def det_bareiss(a) -> int:
    """Fraction-free Gaussian elimination with Python integers."""
    m = [[int(x) for x in row] for row in np.asarray(a, dtype=object)]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def hadamard_bound(a) -> int:
    """Integer upper bound on |det a|: product of ceil(row 2-norms)."""
    bound = 1
    for row in np.asarray(a, dtype=object):
        s = sum(int(x) * int(x) for x in row)
        if s == 0:
            return 0
        r = math.isqrt(s)
        bound *= r if r * r == s else r + 1
    return bound


@lru_cache(maxsize=None)
def _crt_primes(count: int) -> Tuple[int, ...]:
    out = []
    q = kernels.MAX_MODULUS - 1
    while len(out) < count:
        if is_prime(q):
            out.append(q)
        q -= 2
    return tuple(out)


def _thread_count() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def det_crt(a) -> int:
    """Exact determinant from residues modulo word-size primes, recombined by CRT.

    Enough primes are used that their product exceeds twice the Hadamard bound,
    so the symmetric residue is the determinant.
    """
    a = np.asarray(a)
    n = a.shape[0]
    if n == 0:
        return 1
    bound = hadamard_bound(a)
    if bound == 0:
        return 0
    need = 2 * bound
    count = 1
    while math.prod(_crt_primes(count)) <= need:
        count += max(1, count // 2)
    primes = _crt_primes(count)
    if a.dtype == object:
        inputs = [np.array([[int(x) % q for x in row] for row in a], dtype=np.int64) for q in primes]
    else:
        inputs = [a] * len(primes)
    # kernels release the GIL, so threads give real parallelism across moduli
    with ThreadPoolExecutor(_thread_count()) as pool:
        residues = list(pool.map(kernels.det_mod, inputs, primes))
    modulus, value = 1, 0
    for r, q in zip(residues, primes):
        # Garner step: value = value + modulus * ((r - value) / modulus mod q)
        t = (r - value) * pow(modulus, -1, q) % q
        value += modulus * t
        modulus *= q
    if value > modulus // 2:
        value -= modulus
    return value


def det_exact(m: RestrictionMatrix | np.ndarray) -> int:
    entries = m.entries if isinstance(m, RestrictionMatrix) else np.asarray(m)
    return det_crt(entries)


def vp_det(m: RestrictionMatrix | np.ndarray, p) -> float | int:
    """p-adic valuation of the exact determinant; math.inf when it vanishes."""
    d = det_exact(m)
    if d == 0:
        return math.inf
    return vp(d, p)


def rank_mod_p(m: RestrictionMatrix | np.ndarray, p) -> int:
    p = Prime(p)
    entries = m.entries if isinstance(m, RestrictionMatrix) else np.asarray(m)
    if p >= kernels.MAX_MODULUS:
        return kernels.rank_mod_bigint(entries.tolist(), p)
    if entries.dtype == object:
        entries = np.array([[int(x) % p for x in row] for row in entries], dtype=np.int64)
    return kernels.rank_mod(entries, p)


def _reduce_mod(f: LaurentPoly, p: int):
    terms = [(e, int(c) % p) for e, c in _integer_terms(f)]
    return [(e, c) for e, c in terms if c]


def build_translates(f: LaurentPoly, w: Window, p) -> TranslateMatrix:
    p = Prime(p)
    if f.dim != w.dim:
        raise DimensionError("polynomial and window dimensions differ")
    w.check_volume()
    terms = _reduce_mod(f, p)
    if not terms:
        raise ZeroPolynomialError(f"zero symbol: f vanishes modulo {p}")
    points = w.elements()
    columns = sorted({tuple(a - b for a, b in zip(e, s)) for s in points for e, _ in terms})
    index = {u: k for k, u in enumerate(columns)}
    m = np.zeros((len(points), len(columns)), dtype=np.int64)
    for i, s in enumerate(points):
        for e, c in terms:
            m[i, index[tuple(a - b for a, b in zip(e, s))]] = c
    return TranslateMatrix(w, int(p), tuple(columns), m)


def translate_rank(f: LaurentPoly, w: Window, p) -> int:
    """Rank over F_p of the translates of f by -s, s in the window.

    The sumset of the translated copies of F_p * f has exactly p**rank elements.
    """
    t = build_translates(f, w, p)
    if t.prime >= kernels.MAX_MODULUS:
        return kernels.rank_mod_bigint(t.entries.tolist(), t.prime)
    return kernels.rank_mod(t.entries, t.prime)


def scalar_multiples(f: LaurentPoly, p) -> List[LaurentPoly]:
    """The set F_p * f, coefficients reduced to [0, p)."""
    p = Prime(p)
    terms = _reduce_mod(f, p)
    out = []
    for k in range(p):
        out.append(LaurentPoly(f.dim, {e: k * c % p for e, c in terms}))
    return list(dict.fromkeys(out))


def peters_bruteforce(E: Sequence[LaurentPoly], w: Window, p) -> float:
    """log of |sum over s in F of (-s)-translates of E|, by explicit enumeration over F_p."""
    p = Prime(p)
    if not E:
        raise ValueError("E must be nonempty")
    if len(E) ** w.volume > ENUMERATION_GUARD:
        raise GuardError(f"|E|^|F| = {len(E)}^{w.volume} exceeds the enumeration guard")
    reduced = []
    for e in E:
        if e.dim != w.dim:
            raise DimensionError("element of E has the wrong dimension")
        reduced.append([(x, int(c) % p) for x, c in e.items() if int(c) % p])
    points = w.elements()
    columns = sorted({tuple(a - b for a, b in zip(x, s)) for s in points for e in reduced for x, _ in e})
    index = {u: k for k, u in enumerate(columns)}
    # every partial sum is a dense row over ``columns``; each step adds all translates of E
    sums = np.zeros((1, max(1, len(columns))), dtype=np.int64)
    for s in points:
        shifted = np.zeros((len(reduced), sums.shape[1]), dtype=np.int64)
        for i, e in enumerate(reduced):
            for x, c in e:
                shifted[i, index[tuple(a - b for a, b in zip(x, s))]] = c
        sums = np.unique(((sums[:, None, :] + shifted[None, :, :]) % p).reshape(-1, sums.shape[1]), axis=0)
    return math.log(len(sums))
