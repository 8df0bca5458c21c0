"""Finite-window approximation experiments.

Every series evaluates one statistic of the restricted operator f_F on the
boxes F = [0, n)^d for a list of sides n and compares the last point with a
closed-form target where one is known.  No extrapolation is attempted: the
verdict threshold is ``log p / n`` for the largest side n.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .errors import ZeroPolynomialError
from .laurent import LaurentPoly, format_poly
from .padic import Prime, local_factor
from .window import (
    Window,
    build_restriction,
    det_exact,
    rank_mod_p,
    support_diameter,
    translate_rank,
)
from .padic import vp

CONVERGING = "converging"
DIVERGING = "diverging-from-reference"
INCONCLUSIVE = "inconclusive"

CSV_COLUMNS = ("n", "volume", "raw_statistic", "normalized_value", "reference", "gap_flag")


def default_sides(dim: int) -> List[int]:
    if dim == 1:
        return list(range(1, 13))
    if dim == 2:
        return list(range(2, 17))
    return list(range(2, 7))


@dataclass(frozen=True)
class SeriesPoint:
    n: int
    volume: int
    raw: Optional[float]  # integer statistic, or None for a gap
    value: Optional[float]

    @property
    def gap(self) -> bool:
        return self.value is None


@dataclass
class ApproxSeries:
    kind: str
    f: LaurentPoly
    prime: Prime
    points: List[SeriesPoint]
    reference: Optional[float]
    convention: str = "valuation"
    complement: Optional["ApproxSeries"] = None
    notes: dict = field(default_factory=dict)

    @property
    def values(self) -> List[Optional[float]]:
        return [pt.value for pt in self.points]

    @property
    def gaps(self) -> List[int]:
        return [pt.n for pt in self.points if pt.gap]

    @property
    def limit_estimate(self) -> Optional[float]:
        filled = [pt.value for pt in self.points if not pt.gap]
        return filled[-1] if filled else None

    @property
    def tolerance(self) -> Optional[float]:
        filled = [pt for pt in self.points if not pt.gap]
        return math.log(self.prime) / filled[-1].n if filled else None

    @property
    def verdict(self) -> str:
        filled = [pt for pt in self.points if not pt.gap]
        if not filled:
            return INCONCLUSIVE
        tol = self.tolerance
        if self.reference is not None:
            return CONVERGING if abs(filled[-1].value - self.reference) <= tol else DIVERGING
        if len(filled) >= 2 and abs(filled[-1].value - filled[-2].value) <= tol:
            return CONVERGING
        return INCONCLUSIVE

    def to_dict(self, scale: float = 1.0) -> dict:
        """JSON-ready view; log-valued fields are divided by ``scale``."""
        sc = _scaler(scale)
        out = {
            "kind": self.kind,
            "f": format_poly(self.f),
            "dim": self.f.dim,
            "prime": int(self.prime),
            "convention": self.convention,
            "points": [
                {"n": pt.n, "volume": pt.volume, "raw_statistic": pt.raw,
                 "normalized_value": sc(pt.value), "gap": pt.gap}
                for pt in self.points
            ],
            "limit_estimate": sc(self.limit_estimate),
            "reference": sc(self.reference),
            "tolerance": sc(self.tolerance),
            "verdict": self.verdict,
            "gaps": self.gaps,
        }
        if self.notes:
            out["notes"] = dict(self.notes)
        if self.complement is not None:
            out["complement"] = self.complement.to_dict(scale)
        return out

    def to_csv(self, fmt=repr, scale: float = 1.0) -> str:
        sc = _scaler(scale)
        buf = io.StringIO()
        buf.write(f"# kind={self.kind} f={format_poly(self.f)} prime={int(self.prime)} "
                  f"convention={self.convention} units={'nat' if scale == 1.0 else 'bit'}\n")
        buf.write(f"# reference={_cell(sc(self.reference), fmt)} "
                  f"limit_estimate={_cell(sc(self.limit_estimate), fmt)} "
                  f"verdict={self.verdict}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for pt in self.points:
            writer.writerow([pt.n, pt.volume, _cell(pt.raw, fmt), _cell(sc(pt.value), fmt),
                             _cell(sc(self.reference), fmt), int(pt.gap)])
        return buf.getvalue()


def _scaler(scale: float):
    return lambda x: None if x is None else x / scale


def _cell(x, fmt):
    if x is None:
        return ""
    if isinstance(x, int):
        return str(x)
    return fmt(x)


def _check_integral(f: LaurentPoly):
    if f.is_zero():
        raise ZeroPolynomialError("series of the zero polynomial")
    if not f.is_integral():
        raise ValueError("approximation series need integer coefficients")


def padic_det_series(f: LaurentPoly, p, sides: Optional[Sequence[int]] = None,
                     convention: str = "valuation") -> ApproxSeries:
    """Points (n, v_p(det f_F) log p / |F|) against the local factor |f|_p log p.

    ``convention="absolute"`` negates both points and reference (log of the
    p-adic absolute value instead of the valuation).
    """
    _check_integral(f)
    p = Prime(p)
    if convention not in ("valuation", "absolute"):
        raise ValueError("convention must be 'valuation' or 'absolute'")
    sign = 1 if convention == "valuation" else -1
    logp = math.log(p)
    points = []
    for n in sides or default_sides(f.dim):
        w = Window(f.dim, n)
        det = det_exact(build_restriction(f, w))
        if det == 0:
            points.append(SeriesPoint(n, w.volume, None, None))
            continue
        k = vp(det, p)
        points.append(SeriesPoint(n, w.volume, sign * k, sign * k * logp / w.volume))
    reference = sign * local_factor(f, p).value
    return ApproxSeries("padic_det", f, p, points, reference, convention)


def elek_rank_series(f: LaurentPoly, p, sides: Optional[Sequence[int]] = None) -> ApproxSeries:
    """Points (n, dim_F_p ker(f_F) / |F|); no closed-form target."""
    _check_integral(f)
    p = Prime(p)
    points = []
    for n in sides or default_sides(f.dim):
        w = Window(f.dim, n)
        kernel = w.volume - rank_mod_p(build_restriction(f, w), p)
        points.append(SeriesPoint(n, w.volume, kernel, kernel / w.volume))
    return ApproxSeries("elek_rank", f, p, points, None)


def peters_series(f: LaurentPoly, p, sides: Optional[Sequence[int]] = None) -> ApproxSeries:
    """Sumset entropy estimate rank * log p / |F| for E = F_p * f.

    The target is log p: F_p[Z^d] has no zero divisors, so F_p[Z^d] f is a
    copy of F_p[Z^d].  The complement series log p - value targets the entropy
    of F_p[Z^d]/(f), which is zero.
    """
    _check_integral(f)
    p = Prime(p)
    logp = math.log(p)
    points, comp = [], []
    for n in sides or default_sides(f.dim):
        w = Window(f.dim, n)
        r = translate_rank(f, w, p)
        points.append(SeriesPoint(n, w.volume, r, r * logp / w.volume))
        comp.append(SeriesPoint(n, w.volume, w.volume - r, (w.volume - r) * logp / w.volume))
    complement = ApproxSeries("peters_complement", f, p, comp, 0.0)
    return ApproxSeries("peters", f, p, points, logp, complement=complement)


@dataclass(frozen=True)
class PosentCheck:
    holds: bool
    value: float
    bound: float
    margin: float


def posent_check(f: LaurentPoly, p, side: int) -> PosentCheck:
    """Compare the sumset estimate on [0, side)^d with log p / |S|^2 minus boundary slack."""
    _check_integral(f)
    p = Prime(p)
    w = Window(f.dim, side)
    logp = math.log(p)
    value = translate_rank(f, w, p) * logp / w.volume
    boundary = w.boundary_count(support_diameter(f))
    bound = logp / len(f) ** 2 - logp * boundary / w.volume
    margin = value - bound
    return PosentCheck(margin >= 0, value, bound, margin)


def surface_ratio(f: LaurentPoly, side: int) -> float:
    """Boundary fraction of [0, side)^d at the support diameter of f."""
    w = Window(f.dim, side)
    return w.boundary_count(support_diameter(f)) / w.volume
