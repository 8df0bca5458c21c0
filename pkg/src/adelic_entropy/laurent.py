"""Exact sparse Laurent polynomials over Q in d commuting variables.

An element of the group ring Q[Z^d] is stored as a map from exponent
vectors (tuples of ints) to nonzero ``Fraction`` coefficients.  Values are
immutable; every operation returns a new polynomial.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .errors import DimensionError, GuardError, ParseError

Exponent = Tuple[int, ...]

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

_SHORT_NAMES = "xyzw"


def variable_names(dim: int) -> Tuple[str, ...]:
    if dim <= len(_SHORT_NAMES):
        return tuple(_SHORT_NAMES[:dim])
    return tuple(f"x{i}" for i in range(1, dim + 1))


def _check_exponent(exp: Exponent) -> Exponent:
    for e in exp:
        if e < INT64_MIN or e > INT64_MAX:
            raise GuardError(f"exponent {e} overflows a signed 64-bit integer")
    return exp


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("floating-point coefficients are not allowed; use Fraction or int")
    return Fraction(c)


class LaurentPoly:
    """Sparse element of Q[Z^d].

    >>> f = LaurentPoly(1, {(0,): 2, (1,): 1})
    >>> str(f * f.involution())
    '2*x^-1 + 5 + 2*x'
    """

    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, dim: int, terms: Mapping[Sequence[int], object] | None = None):
        if dim < 1:
            raise DimensionError("dimension must be a positive integer")
        clean: Dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != dim:
                raise DimensionError(f"exponent {exp} does not have length {dim}")
            c = _as_fraction(c)
            if c:
                clean[_check_exponent(exp)] = clean.get(exp, Fraction(0)) + c
        self.dim = dim
        self._terms = {e: clean[e] for e in sorted(clean) if clean[e]}
        self._hash = None

    @classmethod
    def constant(cls, c, dim: int = 1) -> "LaurentPoly":
        return cls(dim, {(0,) * dim: c})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "LaurentPoly":
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def from_coefficients(cls, coeffs: Sequence, low: int = 0) -> "LaurentPoly":
        """Univariate polynomial ``sum(coeffs[k] * x**(low + k))``."""
        return cls(1, {(low + k,): c for k, c in enumerate(coeffs)})

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def support(self) -> Tuple[Exponent, ...]:
        return tuple(self._terms)

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def coefficients(self) -> Tuple[Fraction, ...]:
        return tuple(self._terms.values())

    def is_zero(self) -> bool:
        return not self._terms

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.dim == other.dim and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly.constant(other, self.dim)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, tuple(self._terms.items())))
        return self._hash

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.dim != self.dim:
                raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other, self.dim)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return LaurentPoly(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.dim, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return LaurentPoly(self.dim, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are only defined for monomials")
        result = LaurentPoly.constant(1, self.dim)
        for _ in range(k):
            result = result * self
        return result

    def involution(self) -> "LaurentPoly":
        """Map each group element to its inverse: sum f_g g -> sum f_g g^-1."""
        return LaurentPoly(self.dim, {tuple(-a for a in e): c for e, c in self._terms.items()})

    def shift(self, exp: Sequence[int]) -> "LaurentPoly":
        return LaurentPoly(self.dim, {tuple(a + b for a, b in zip(e, exp)): c for e, c in self._terms.items()})

    def evaluate_on_torus(self, theta: Sequence[float]) -> complex:
        if len(theta) != self.dim:
            raise DimensionError("theta must have one angle per variable")
        total = 0j
        for e, c in self._terms.items():
            phase = 2 * math.pi * sum(a * t for a, t in zip(e, theta))
            total += float(c) * cmath.exp(1j * phase)
        return total

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"LaurentPoly({self.dim}, {format_poly(self)!r})"


# ---------------------------------------------------------------------------
# text grammar

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[A-Za-z][A-Za-z0-9]*)|(?P<op>[-+*/^]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, dim: int):
        self.tokens = _tokenize(text)
        self.i = 0
        self.dim = dim
        self.index = {name: k for k, name in enumerate(variable_names(dim))}

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.take()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            raise ParseError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", tok[2])
        return tok

    def parse(self) -> LaurentPoly:
        if self.peek()[0] == "end":
            raise ParseError("empty polynomial", 0)
        terms: Dict[Exponent, Fraction] = {}
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        while True:
            coeff, exp = self.term()
            terms[exp] = terms.get(exp, Fraction(0)) + sign * coeff
            tok = self.take()
            if tok[0] == "end":
                break
            if tok[0] != "op" or tok[1] not in "+-":
                raise ParseError(f"expected '+' or '-', found {tok[1]!r}", tok[2])
            sign = -1 if tok[1] == "-" else 1
        return LaurentPoly(self.dim, terms)

    def term(self):
        coeff = Fraction(1)
        exp = [0] * self.dim
        tok = self.peek()
        if tok[0] == "num":
            coeff = self.rational()
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "*":
                self.take()
                if self.peek()[0] != "var":
                    raise ParseError("expected a variable after '*'", self.peek()[2])
            elif nxt[0] != "var":
                return coeff, tuple(exp)
        elif tok[0] != "var":
            raise ParseError(f"expected a term, found {tok[1] or 'end of input'!r}", tok[2])
        while True:
            _, name, at = self.expect("var")
            if name not in self.index:
                raise ParseError(f"unknown variable {name!r} for dimension {self.dim}", at)
            power = 1
            if self.peek()[:2] == ("op", "^"):
                self.take()
                power = self.signed_int()
            exp[self.index[name]] += power
            nxt = self.peek()
            if nxt[:2] == ("op", "*") and self.tokens[self.i + 1][0] == "var":
                self.take()
                continue
            break
        _check_exponent(tuple(exp))
        return coeff, tuple(exp)

    def rational(self) -> Fraction:
        num = int(self.expect("num")[1])
        if self.peek()[:2] == ("op", "/"):
            self.take()
            _, text, at = self.expect("num")
            den = int(text)
            if den == 0:
                raise ParseError("zero denominator", at)
            return Fraction(num, den)
        return Fraction(num)

    def signed_int(self) -> int:
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        _, text, at = self.expect("num")
        value = sign * int(text)
        if value < INT64_MIN or value > INT64_MAX:
            raise ParseError(f"exponent {value} overflows a signed 64-bit integer", at)
        return value


def parse(text: str, dim: int) -> LaurentPoly:
    """Parse ``text`` such as ``"5 + 2*x + 2*x^-1"`` into a polynomial in ``dim`` variables."""
    if dim < 1:
        raise DimensionError("dimension must be a positive integer")
    return _Parser(text, dim).parse()


def _format_monomial(exp: Exponent, names) -> str:
    parts = []
    for name, e in zip(names, exp):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f: LaurentPoly) -> str:
    if f.is_zero():
        return "0"
    names = variable_names(f.dim)
    out = []
    for k, (exp, c) in enumerate(f.items()):
        mono = _format_monomial(exp, names)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def mul(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return f * g


def involution(f: LaurentPoly) -> LaurentPoly:
    return f.involution()


def evaluate_on_torus(f: LaurentPoly, theta: Sequence[float]) -> complex:
    return f.evaluate_on_torus(theta)


def product(polys: Iterable[LaurentPoly], dim: int = 1) -> LaurentPoly:
    result = LaurentPoly.constant(1, dim)
    for p in polys:
        result = result * p
    return result


# ---------------------------------------------------------------------------
# rational matrices


@dataclass(frozen=True)
class RationalMatrix:
    rows: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(_as_fraction(x) for x in r) for r in self.rows)
        if any(len(r) != len(rows) for r in rows):
            raise DimensionError("matrix must be square")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self.rows for x in r)

    def det(self) -> Fraction:
        """Exact determinant by Gaussian elimination over Q."""
        a = [list(r) for r in self.rows]
        n = len(a)
        det = Fraction(1)
        for k in range(n):
            piv = next((i for i in range(k, n) if a[i][k]), None)
            if piv is None:
                return Fraction(0)
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                det = -det
            det *= a[k][k]
            for i in range(k + 1, n):
                if a[i][k]:
                    q = a[i][k] / a[k][k]
                    for j in range(k, n):
                        a[i][j] -= q * a[k][j]
        return det


def parse_matrix(text: str) -> RationalMatrix:
    """Read ``n`` on the first line followed by ``n`` rows of whitespace-separated rationals."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty matrix file", 0)
    try:
        n = int(lines[0])
    except ValueError:
        raise ParseError(f"first line must be the matrix size, got {lines[0]!r}", 0) from None
    if n < 1 or len(lines) - 1 != n:
        raise ParseError(f"expected {n} matrix rows, found {len(lines) - 1}")
    rows = []
    for k, line in enumerate(lines[1:], start=1):
        fields = line.split()
        if len(fields) != n:
            raise ParseError(f"row {k} has {len(fields)} entries, expected {n}")
        try:
            rows.append(tuple(Fraction(x) for x in fields))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"row {k} contains a malformed rational") from None
    return RationalMatrix(tuple(rows))


def char_poly(a: RationalMatrix) -> LaurentPoly:
    """det(t*I - a) as a univariate polynomial, by exact Faddeev-LeVerrier."""
    n = a.n
    A = [list(r) for r in a.rows]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M <- A*M + c_{n-k+1} I
        AM = [[sum(A[i][l] * M[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            AM[i][i] += coeffs[n - k + 1]
        M = AM
        tr = sum(sum(A[i][l] * M[l][i] for l in range(n)) for i in range(n))
        coeffs[n - k] = -tr / k
    return LaurentPoly.from_coefficients(coeffs)
