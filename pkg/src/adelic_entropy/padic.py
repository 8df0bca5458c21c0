"""p-adic valuations, p-contents and local factors of group-ring elements.

Local factors are kept exact as an integer multiplicity of ``log p``; the
float value is only produced on request.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Dict, FrozenSet, Iterable, List, Union

from .errors import GuardError, ZeroPolynomialError
from .laurent import LaurentPoly

UINT64_LIMIT = 2**64
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = [p for p in range(2, 1000) if all(p % q for q in range(2, int(p**0.5) + 1))]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES[:12]:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Prime(int):
    """An ``int`` known to be prime (checked on construction)."""

    def __new__(cls, p):
        if isinstance(p, Prime):
            return p
        p = int(p)
        if p >= 2**63:
            raise GuardError(f"primes above 2^63 are not supported: {p}")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        return super().__new__(cls, p)

    def __repr__(self):
        return f"Prime({int(self)})"

    @property
    def log(self) -> float:
        return math.log(self)


INFINITY = "inf"
Place = Union[Prime, str]


@dataclass(frozen=True)
class PlaceValue:
    """Value attached to a place.

    For a finite place the value is ``multiplicity * log p`` with the integer
    multiplicity stored exactly; for the archimedean place ``real`` holds it.
    """

    place: Place
    multiplicity: int = 0
    real: float | None = None

    @property
    def is_finite(self) -> bool:
        return self.place != INFINITY

    @property
    def value(self) -> float:
        if self.is_finite:
            return self.multiplicity * math.log(self.place) if self.multiplicity else 0.0
        return float(self.real or 0.0)

    def __add__(self, other: "PlaceValue") -> "PlaceValue":
        if other.place != self.place:
            raise ValueError("cannot add values at different places")
        if self.is_finite:
            return PlaceValue(self.place, self.multiplicity + other.multiplicity)
        return PlaceValue(INFINITY, real=self.value + other.value)


def vp(q, p) -> int:
    """Exponent of ``p`` in the nonzero rational ``q``."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("valuation of zero undefined")
    p = int(p)
    e = 0
    num, den = abs(q.numerator), q.denominator
    while num % p == 0:
        num //= p
        e += 1
    while den % p == 0:
        den //= p
        e -= 1
    return e


def _require_nonzero(f: LaurentPoly):
    if f.is_zero():
        raise ZeroPolynomialError("the zero polynomial has no p-content")


def p_content(f: LaurentPoly, p) -> int:
    """min over coefficients of vp; for integral f, the largest k with p^-k f integral."""
    _require_nonzero(f)
    return min(vp(c, p) for c in f.coefficients())


def local_factor(f: LaurentPoly, p) -> PlaceValue:
    p = Prime(p)
    return PlaceValue(p, p_content(f, p))


def content_gcd_lcm(f: LaurentPoly):
    """(gcd of reduced numerators, lcm of reduced denominators) of the coefficients."""
    _require_nonzero(f)
    g = reduce(math.gcd, (abs(c.numerator) for c in f.coefficients()))
    l = reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c in f.coefficients()))
    return g, l


# ---------------------------------------------------------------------------
# factoring 64-bit integers


def _pollard_rho(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        c = rng.randrange(1, n)
        y = x = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def factor(n: int) -> Dict[int, int]:
    """Prime factorisation of 1 <= n < 2^64: trial division, then Miller-Rabin / Pollard rho."""
    if n < 1:
        raise ValueError("factor expects a positive integer")
    if n >= UINT64_LIMIT:
        raise GuardError(f"{n} exceeds the 64-bit factoring bound")
    out: Dict[int, int] = {}
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    rng = random.Random(n)
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m, rng)
        stack.extend((d, m // d))
    return dict(sorted(out.items()))


def relevant_primes(f: LaurentPoly) -> FrozenSet[Prime]:
    """Primes p with a nonzero local factor at f."""
    g, l = content_gcd_lcm(f)
    primes = set(factor(g)) | set(factor(l))
    return frozenset(Prime(p) for p in primes)


def local_factors(f: LaurentPoly) -> List[PlaceValue]:
    """Nonzero local factors of f, ordered by prime."""
    return [local_factor(f, p) for p in sorted(relevant_primes(f))]


def log_of_places(values: Iterable[PlaceValue]) -> float:
    """Sum of finite-place values, rendered as one log of the exact rational product."""
    num, den = 1, 1
    for v in values:
        if v.multiplicity > 0:
            num *= int(v.place) ** v.multiplicity
        elif v.multiplicity < 0:
            den *= int(v.place) ** (-v.multiplicity)
    return math.log(num) - math.log(den)
