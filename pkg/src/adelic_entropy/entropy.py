"""Closed-form entropies of principal and solenoidal Z^d-actions.

For f in Z[Z^d] the entropy of the action dual to Z[Z^d]/(f) splits into
an archimedean part and one exact term per prime:

    m(f) = rho_inf + sum_p |f|_p log p

and rho_inf is the entropy of the rational (solenoid) module Q[Z^d]/(f).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DimensionError, ZeroPolynomialError
from .laurent import LaurentPoly, RationalMatrix, char_poly, format_poly
from .mahler import MahlerResult, mahler
from .padic import (
    PlaceValue,
    Prime,
    content_gcd_lcm,
    local_factor,
    local_factors,
    log_of_places,
    vp,
)


def _require(f: LaurentPoly, what: str = "entropy"):
    if f.is_zero():
        raise ZeroPolynomialError(f"infinite {what}: the zero polynomial gives rho(Z[Z^d]) = inf")


def principal_entropy(f: LaurentPoly, target_tol: float = 1e-6) -> float:
    _require(f)
    return mahler(f, target_tol).value


def rho_p_principal(f: LaurentPoly, p) -> float:
    _require(f)
    return local_factor(f, p).value


@dataclass(frozen=True)
class SolenoidResult:
    value: float  # Mahler measure minus the local factors
    gcd_lcm_value: float  # Mahler measure - log gcd(numerators) + log lcm(denominators)
    mahler: MahlerResult
    local: Tuple[PlaceValue, ...]

    @property
    def residual(self) -> float:
        return abs(self.value - self.gcd_lcm_value)


def solenoid_entropy(f: LaurentPoly, target_tol: float = 1e-6) -> SolenoidResult:
    _require(f)
    m = mahler(f, target_tol)
    local = tuple(local_factors(f))
    g, l = content_gcd_lcm(f)
    return SolenoidResult(
        value=m.value - log_of_places(local),
        gcd_lcm_value=m.value - math.log(g) + math.log(l),
        mahler=m,
        local=local,
    )


@dataclass
class EntropyReport:
    input: LaurentPoly
    rho_total: float
    rho_infinity: float
    components: Dict[int, PlaceValue]
    mahler: MahlerResult
    residual: float
    solenoid_residual: float
    formulas: Dict[str, str] = field(default_factory=dict)

    def to_dict(self, scale: float = 1.0) -> dict:
        return {
            "input": format_poly(self.input),
            "dim": self.input.dim,
            "rho_total": self.rho_total / scale,
            "rho_infinity": self.rho_infinity / scale,
            "components": {str(p): v.value / scale for p, v in sorted(self.components.items())},
            "multiplicities": {str(p): v.multiplicity for p, v in sorted(self.components.items())},
            "mahler": {
                "value": self.mahler.value / scale,
                "error": self.mahler.error_estimate / scale,
                "method": self.mahler.method,
                "grid": self.mahler.grid_size,
                "excluded_points": self.mahler.excluded_points,
                "converged": self.mahler.converged,
            },
            "residual": self.residual / scale,
            "solenoid_residual": self.solenoid_residual / scale,
            "formulas": dict(self.formulas),
        }


def decompose(f: LaurentPoly, target_tol: float = 1e-6) -> EntropyReport:
    """Split the entropy of Z[Z^d]/(f) into the archimedean part and per-prime parts."""
    _require(f)
    if not f.is_integral():
        raise ValueError("decompose needs integer coefficients; use solenoid_entropy for rational f")
    sol = solenoid_entropy(f, target_tol)
    components = {int(v.place): v for v in sol.local}
    total = sol.mahler.value
    residual = abs(total - sol.value - math.fsum(v.value for v in components.values()))
    return EntropyReport(
        input=f,
        rho_total=total,
        rho_infinity=sol.value,
        components=components,
        mahler=sol.mahler,
        residual=residual,
        solenoid_residual=sol.residual,
        formulas={
            "rho_total": f"log Mahler measure ({sol.mahler.method})",
            "rho_p": "p-content * log p",
            "rho_infinity": "Mahler measure minus sum of local factors",
        },
    )


def lind_ward(a: RationalMatrix, p) -> PlaceValue:
    """Local factor of t - a at p, i.e. -k log p with p^k the largest p-power in a
    denominator of the characteristic polynomial of a."""
    p = Prime(p)
    if a.det() == 0:
        raise ValueError("a is singular: a must lie in GL_n(Q)")
    chi = char_poly(a)
    k = max(0, max(-vp(c, p) for c in chi.coefficients()))
    result = PlaceValue(p, -k)
    check = local_factor(chi, p)
    if check != result:  # pragma: no cover - monic chi makes these agree
        raise AssertionError(f"Lind-Ward factor {result} disagrees with local factor {check}")
    return result


# ---------------------------------------------------------------------------
# von Neumann rank of finitely presented modules


@dataclass(frozen=True)
class ModulePresentation:
    """Cokernel of the relation rows: the module Z[Z^d]^n / (relations)."""

    generators: int
    relations: Tuple[Tuple[LaurentPoly, ...], ...] = ()
    dim: Optional[int] = None

    def __post_init__(self):
        if self.generators < 1:
            raise ValueError("a presentation needs at least one generator")
        dims = {f.dim for row in self.relations for f in row}
        if self.dim is not None:
            dims.add(self.dim)
        if len(dims) > 1:
            raise DimensionError(f"relation entries have inconsistent dimensions {sorted(dims)}")
        for row in self.relations:
            if len(row) != self.generators:
                raise DimensionError(f"relation {row} has {len(row)} entries, expected {self.generators}")
        object.__setattr__(self, "relations", tuple(tuple(r) for r in self.relations))
        object.__setattr__(self, "dim", dims.pop() if dims else (self.dim or 1))


def _eval_exact(f: LaurentPoly, point: Sequence[int]) -> Fraction:
    total = Fraction(0)
    for exp, c in f.items():
        term = c
        for x, e in zip(point, exp):
            term *= Fraction(x) ** e
        total += term
    return total


def _rank_rational(rows: List[List[Fraction]]) -> int:
    a = [list(r) for r in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(rank + 1, len(a)):
            if a[i][col]:
                q = a[i][col] / a[rank][col]
                a[i] = [x - q * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def evaluation_ranks(m: ModulePresentation, seed: int = 0, trials: int = 5,
                     magnitude: int = 2**20) -> List[int]:
    """Rank of the relation matrix at random nonzero integer points, one per trial."""
    rng = random.Random(seed)
    ranks = []
    for _ in range(trials):
        point = [rng.choice((-1, 1)) * rng.randint(1, magnitude) for _ in range(m.dim)]
        rows = [[_eval_exact(f, point) for f in row] for row in m.relations]
        ranks.append(_rank_rational(rows))
    return ranks


def von_neumann_rank(m: ModulePresentation, seed: int = 0, trials: int = 5) -> int:
    """Generators minus the rank of the relation matrix over Q(x_1, ..., x_d).

    The fraction-field rank is the maximum over random evaluations
    (Schwartz-Zippel).
    """
    if not m.relations:
        return m.generators
    return m.generators - max(evaluation_ranks(m, seed, trials))
