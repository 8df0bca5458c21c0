"""Deterministic polynomial corpora used by the property and acceptance checks."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List

from .laurent import LaurentPoly, parse


def random_integer_poly(rng: random.Random, dim: int = 1, terms: int = 4, coeff: int = 6,
                        spread: int = 3) -> LaurentPoly:
    while True:
        f = LaurentPoly(dim, {
            tuple(rng.randint(-spread, spread) for _ in range(dim)): rng.randint(-coeff, coeff)
            for _ in range(rng.randint(1, terms))
        })
        if not f.is_zero():
            return f


def random_rational_poly(rng: random.Random, dim: int = 1, terms: int = 4, num: int = 12,
                         den: int = 12, spread: int = 3) -> LaurentPoly:
    while True:
        f = LaurentPoly(dim, {
            tuple(rng.randint(-spread, spread) for _ in range(dim)):
                Fraction(rng.randint(-num, num), rng.randint(1, den))
            for _ in range(rng.randint(1, terms))
        })
        if not f.is_zero():
            return f


def integer_univariate(count: int = 50, seed: int = 20240101) -> List[LaurentPoly]:
    """Nonzero integer Laurent polynomials in one variable, with a nontrivial scalar content mixed in."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        f = random_integer_poly(rng, 1, terms=5, coeff=9)
        out.append(f * rng.choice((1, 1, 2, 3, 4, 6, 10, 12)))
    return out


def rational_univariate(count: int = 100, seed: int = 20240202) -> List[LaurentPoly]:
    rng = random.Random(seed)
    return [random_rational_poly(rng, 1, terms=5) for _ in range(count)]


def window_corpus(count: int = 50, seed: int = 20240303) -> List[LaurentPoly]:
    """Integer polynomials in one and two variables with small supports."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        dim = 1 if k % 2 == 0 else 2
        out.append(random_integer_poly(rng, dim, terms=4, coeff=7, spread=2))
    return out


def positive_corpus() -> List[LaurentPoly]:
    """Elements g * g^* with g from a fixed list, i.e. positive in the group von Neumann algebra."""
    gs = [("2 + x", 1), ("1 + x", 1), ("2 + 2*x", 1), ("3 + x", 1), ("1 + x + x^2", 1), ("2 + 3*x", 1),
          ("1 + x + y", 2), ("2 + x + y", 2)]
    out = []
    for text, dim in gs:
        g = parse(text, dim)
        out.append(g * g.involution())
    return out


def posent_corpus() -> List[LaurentPoly]:
    return [parse(t, d) for t, d in [("1 + x", 1), ("1 + x + x^2", 1), ("2 + x", 1), ("1 + 3*x^2", 1),
                                     ("1 + x + y", 2), ("1 - x*y", 2), ("3 + x + x^-1 + y", 2)]]
