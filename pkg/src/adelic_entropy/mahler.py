"""Logarithmic Mahler measure m(f) = integral of log|f| over the unit torus.

Univariate inputs go through Jensen's formula (companion-matrix roots);
several variables use the midpoint (half-cell offset) rule on a product
grid, which is spectrally accurate for smooth periodic integrands and keeps
grid nodes off the low-order rational points where integer polynomials
tend to vanish.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from typing import Optional

import numpy as np

from .errors import DimensionError, EntropyError, ZeroPolynomialError
from .laurent import LaurentPoly

GRID_CAPS = {1: 1 << 16, 2: 4096, 3: 256, 4: 64}
GRID_START = 64
_SLAB_POINTS = 1 << 20


@dataclass(frozen=True)
class MahlerResult:
    value: float
    error_estimate: float
    method: str  # "roots" | "grid"
    grid_size: Optional[int] = None
    excluded_points: int = 0
    converged: bool = True

    def to_dict(self):
        return asdict(self)


def _require(f: LaurentPoly):
    if f.is_zero():
        raise ZeroPolynomialError("Mahler measure of the zero polynomial is -infinity")


def univariate_coefficients(f: LaurentPoly) -> np.ndarray:
    """Dense float coefficients, highest degree first, after dividing out x^min."""
    exps = [e[0] for e in f.support()]
    lo, hi = min(exps), max(exps)
    dense = np.zeros(hi - lo + 1)
    for (e,), c in f.items():
        dense[hi - e] = float(c)
    return dense


def _polish(coeffs: np.ndarray, roots: np.ndarray, tol: float, max_iter: int = 60):
    deriv = np.polyder(coeffs)
    roots = roots.astype(complex)
    for _ in range(max_iter):
        pv = np.polyval(coeffs, roots)
        dv = np.polyval(deriv, roots)
        ok = dv != 0
        step = np.zeros_like(roots)
        step[ok] = pv[ok] / dv[ok]
        roots = roots - step
        if np.all(np.abs(step) <= tol * np.maximum(1.0, np.abs(roots))):
            break
    return roots


def mahler_univariate(f: LaurentPoly, tol: float = 1e-12) -> MahlerResult:
    """Jensen: m(f) = log|lead| + sum over roots of log max(1, |root|)."""
    _require(f)
    if f.dim != 1:
        raise DimensionError("mahler_univariate needs a polynomial in one variable")
    coeffs = univariate_coefficients(f)
    lead = abs(coeffs[0])
    n = len(coeffs) - 1
    if n == 0:
        return MahlerResult(math.log(lead), 0.0, "roots")
    roots = _polish(coeffs, np.roots(coeffs), tol)
    mags = np.abs(roots)
    pv = np.abs(np.polyval(coeffs, roots))
    dv = np.abs(np.polyval(np.polyder(coeffs), roots))
    with np.errstate(divide="ignore", invalid="ignore"):
        # some root of f lies within n|f(r)|/|f'(r)| of r
        radius = np.where(dv > 0, n * pv / dv, (pv / lead) ** (1.0 / n))
    terms = np.log(np.maximum(1.0, mags))
    value = math.log(lead) + math.fsum(terms.tolist())
    near = mags + radius > 1.0
    err = np.where(near, radius / np.maximum(mags - radius, 0.5), 0.0)
    error = math.fsum(err.tolist()) + 4 * n * float(np.finfo(float).eps) * (1 + abs(value))
    return MahlerResult(value, error, "roots")


def _axis_phases(exps, n: int) -> np.ndarray:
    theta = (np.arange(n) + 0.5) / n
    return np.exp(2j * np.pi * np.outer(np.asarray(exps, dtype=float), theta))


def grid_mean(f: LaurentPoly, n: int, eps: float = 1e-12):
    """Mean of log|f| over the offset grid ((j+1/2)/n)^d, skipping |f| < eps.

    Returns (mean, number of excluded points).  Summation runs slab by slab
    along the first axis in a fixed order, so results are bit-stable.
    """
    _require(f)
    d = f.dim
    support = f.support()
    coeffs = np.array([float(c) for c in f.coefficients()])
    phases = [_axis_phases([e[k] for e in support], n) for k in range(d)]
    # tail[t] has shape n^(d-1): product of phases over axes 1..d-1 for term t
    tail = np.ones((len(support), 1), dtype=complex)
    for k in range(1, d):
        tail = (tail[:, :, None] * phases[k][:, None, :]).reshape(len(support), -1)
    tail *= coeffs[:, None]
    slab = max(1, _SLAB_POINTS // tail.shape[1])
    partial = []
    excluded = 0
    for start in range(0, n, slab):
        head = phases[0][:, start:start + slab]
        vals = np.abs(head.T @ tail)
        keep = vals >= eps
        excluded += int(vals.size - np.count_nonzero(keep))
        partial.append(float(np.sum(np.log(vals[keep]))))
    count = n**d - excluded
    if count == 0:
        raise EntropyError("every grid point was excluded; lower the exclusion threshold")
    return math.fsum(partial) / count, excluded


def mahler_grid(f: LaurentPoly, n: int, eps: float = 1e-12) -> MahlerResult:
    if n < 2:
        raise ValueError("grid size must be at least 2")
    value, excluded = grid_mean(f, n, eps)
    try:
        coarse, _ = grid_mean(f, n // 2, eps)
    except EntropyError:
        return MahlerResult(value, math.inf, "grid", n, excluded, False)
    return MahlerResult(value, abs(value - coarse), "grid", n, excluded)


def mahler(f: LaurentPoly, target_tol: float = 1e-6, cap: Optional[int] = None,
           eps: float = 1e-12) -> MahlerResult:
    """Dispatch on dimension; grid sizes double from 64 until two successive means agree."""
    _require(f)
    if f.dim == 1:
        return mahler_univariate(f)
    if f.dim > 4:
        raise DimensionError("Mahler measures are supported for at most 4 variables")
    if len(f) == 1:
        c = abs(f.coefficients()[0])
        return MahlerResult(math.log(c.numerator) - math.log(c.denominator), 0.0, "grid", None, 0)
    cap = cap or GRID_CAPS[f.dim]
    n = min(GRID_START, cap)
    prev, _ = grid_mean(f, max(2, n // 2), eps)
    while True:
        value, excluded = grid_mean(f, n, eps)
        err = abs(value - prev)
        if err < target_tol:
            return MahlerResult(value, err, "grid", n, excluded, True)
        if 2 * n > cap:
            return MahlerResult(value, err, "grid", n, excluded, False)
        prev = value
        n *= 2
