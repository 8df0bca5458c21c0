"""Independent reference computations used to freeze expected values.

Nothing here shares code with the paths under test.
"""

import itertools
import math
from fractions import Fraction


def det_leibniz(a):
    """Permutation expansion; fine up to n = 7."""
    n = len(a)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i in range(n):
            term *= int(a[i][perm[i]])
            if term == 0:
                break
        total += term
    return total


def span_size_mod_p(rows, p):
    """Number of distinct F_p-combinations of the rows, by enumeration."""
    rows = [tuple(int(x) % p for x in r) for r in rows]
    width = len(rows[0]) if rows else 0
    seen = set()
    for coeffs in itertools.product(range(p), repeat=len(rows)):
        v = tuple(sum(c * r[j] for c, r in zip(coeffs, rows)) % p for j in range(width))
        seen.add(v)
    return len(seen)


def mahler_jensen_last_variable(coeffs_constant, n=4000):
    """m(a(theta) + z) = integral of log max(1, |a(theta)|) for a one-variable a.

    ``coeffs_constant`` maps exponents of x to coefficients of a(x).
    Composite midpoint rule over the circle; log max(1, .) is Lipschitz.
    """
    total = 0.0
    for j in range(n):
        t = (j + 0.5) / n
        v = sum(c * complex(math.cos(2 * math.pi * e * t), math.sin(2 * math.pi * e * t))
                for e, c in coeffs_constant.items())
        total += math.log(max(1.0, abs(v)))
    return total / n


def charpoly_cofactor(a):
    """det(t I - a) coefficients (low to high) by cofactor expansion over Q[t]."""

    def pmul(p, q):
        out = [Fraction(0)] * (len(p) + len(q) - 1)
        for i, x in enumerate(p):
            for j, y in enumerate(q):
                out[i + j] += x * y
        return out

    def padd(p, q):
        n = max(len(p), len(q))
        return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]

    def det(m):
        if len(m) == 1:
            return m[0][0]
        total = [Fraction(0)]
        for j in range(len(m)):
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            term = pmul(m[0][j], det(minor))
            if j % 2:
                term = [-x for x in term]
            total = padd(total, term)
        return total

    n = len(a)
    m = [[[-Fraction(a[i][j]), Fraction(1)] if i == j else [-Fraction(a[i][j])] for j in range(n)]
         for i in range(n)]
    coeffs = det(m)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs
