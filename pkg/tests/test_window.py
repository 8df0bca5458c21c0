import math
import random

import numpy as np
import pytest

from adelic_entropy.corpus import random_integer_poly, window_corpus
from adelic_entropy.errors import GuardError, ZeroPolynomialError
from adelic_entropy.laurent import LaurentPoly, parse
from adelic_entropy.window import (
    Window,
    build_restriction,
    build_translates,
    det_bareiss,
    det_exact,
    hadamard_bound,
    peters_bruteforce,
    rank_mod_p,
    scalar_multiples,
    translate_rank,
    vp_det,
)

from oracles import det_leibniz, span_size_mod_p


def R(text, dim, n):
    return build_restriction(parse(text, dim), Window(dim, n))


def test_window_enumeration():
    w = Window(2, 3)
    assert w.volume == 9
    assert w.elements()[:4] == [(0, 0), (0, 1), (0, 2), (1, 0)]
    assert [tuple(c) for c in w.coords()] == w.elements()
    assert w.boundary_count(1) == 8 and w.boundary_count(0) == 0
    with pytest.raises(GuardError):
        Window(2, 65).check_volume()


def test_build_restriction_examples():
    assert R("2 + x", 1, 3).entries.tolist() == [[2, 1, 0], [0, 2, 1], [0, 0, 2]]
    assert R("1", 2, 3).entries.tolist() == np.eye(9, dtype=int).tolist()
    assert R("x", 1, 2).entries.tolist() == [[0, 1], [0, 0]]
    with pytest.raises(ValueError):
        R("1/2 + x", 1, 2)
    with pytest.raises(ZeroPolynomialError):
        build_restriction(LaurentPoly(1), Window(1, 2))


def test_restriction_is_multilevel_toeplitz():
    f = parse("3 - x*y^-1 + 2*y + x^2", 2)
    w = Window(2, 4)
    m = build_restriction(f, w).entries
    pts = w.elements()
    for i, s in enumerate(pts):
        for j, t in enumerate(pts):
            assert m[i, j] == f.coefficient(tuple(b - a for a, b in zip(s, t)))


def test_det_examples():
    for n in range(1, 10):
        assert det_exact(R("2 + x", 1, n)) == 2**n
        assert det_exact(R("7", 1, n)) == 7**n
    assert det_exact(R("7", 2, 3)) == 7**9
    assert det_exact(R("5 + 2*x + 2*x^-1", 1, 3)) == 85
    assert det_exact(R("x", 1, 4)) == 0


def test_vp_det_examples():
    for n in range(1, 8):
        assert vp_det(R("2 + 2*x", 1, n), 2) == n
        assert vp_det(R("1 + 3*x", 1, n), 3) == 0
        assert vp_det(R("x", 1, n), 5) == math.inf


def test_rank_examples():
    for n in range(1, 12):
        assert rank_mod_p(R("1 + x", 1, n), 2) == n
        assert rank_mod_p(R("2", 1, n), 2) == 0
        assert rank_mod_p(R("5 + 2*x + 2*x^-1", 1, n), 2) == n


def test_crt_matches_bareiss_and_leibniz_on_corpus():
    for f in window_corpus():
        for n in range(1, 9 if f.dim == 1 else 3):
            m = build_restriction(f, Window(f.dim, n))
            d = det_exact(m)
            assert d == det_bareiss(m.entries)
            assert d == det_exact(m.transpose())
            if m.size <= 6:
                assert d == det_leibniz(m.entries.tolist())


def test_crt_handles_large_determinants():
    f = parse("97 + 13*x - 41*x^-1 + 5*y", 2)
    m = build_restriction(f, Window(2, 5))
    assert det_exact(m) == det_bareiss(m.entries)
    assert abs(det_exact(m)) <= hadamard_bound(m.entries)
    big = np.array([[10**30, 1], [3, 10**30 + 7]], dtype=object)
    assert det_exact(big) == 10**30 * (10**30 + 7) - 3


def test_rank_invariants():
    rng = random.Random(2)
    for _ in range(20):
        f = random_integer_poly(rng, 2, terms=4, coeff=4, spread=1)
        m = build_restriction(f, Window(2, 4)).entries
        perm_r = np.array(rng.sample(range(16), 16))
        perm_c = np.array(rng.sample(range(16), 16))
        for p in (2, 3, 5):
            r = rank_mod_p(m, p)
            assert 0 <= r <= 16
            assert r == rank_mod_p(m[perm_r][:, perm_c], p) == rank_mod_p(m.T.copy(), p)


def test_scalar_factor_shifts_valuation():
    rng = random.Random(3)
    for _ in range(20):
        g = random_integer_poly(rng, 1, terms=3, coeff=5)
        for n in (2, 5):
            w = Window(1, n)
            a = vp_det(build_restriction(g * 3, w), 3)
            b = vp_det(build_restriction(g, w), 3)
            assert a == b + n or a == b == math.inf


def test_translate_matrix_shape():
    t = build_translates(parse("1 + x", 1), Window(1, 3), 2)
    assert t.entries.shape[0] == 3
    assert t.entries.shape[1] <= 3 * 2
    assert t.columns == ((-2,), (-1,), (0,), (1,))


def test_translate_rank_examples():
    for n in range(1, 9):
        assert translate_rank(parse("1", 1), Window(1, n), 2) == n
        assert translate_rank(parse("1 + x", 1), Window(1, n), 2) == n
        assert translate_rank(parse("1 + x + y", 2), Window(2, n), 2) == n * n
    with pytest.raises(ZeroPolynomialError, match="zero symbol"):
        translate_rank(parse("2 + 4*x", 1), Window(1, 3), 2)


def test_translate_rank_matches_span_enumeration():
    for text, dim, n, p in [("1 + x", 1, 4, 2), ("1 + 2*x + x^2", 1, 3, 3), ("1 + x + y", 2, 2, 2)]:
        t = build_translates(parse(text, dim), Window(dim, n), p)
        assert p ** translate_rank(parse(text, dim), Window(dim, n), p) == span_size_mod_p(t.entries.tolist(), p)


def test_peters_bruteforce_examples():
    zero = LaurentPoly(1)
    assert peters_bruteforce([zero], Window(1, 5), 2) == 0
    E = scalar_multiples(parse("1 + x", 1), 2)
    assert peters_bruteforce(E, Window(1, 3), 2) == pytest.approx(3 * math.log(2), abs=1e-12)
    assert peters_bruteforce([zero, parse("1", 1)], Window(1, 4), 2) == pytest.approx(4 * math.log(2))
    with pytest.raises(GuardError):
        peters_bruteforce(scalar_multiples(parse("1 + x", 1), 5), Window(1, 12), 5)


@pytest.mark.parametrize("text,dim,p", [("1 + x", 1, 2), ("1 + x + x^2", 1, 3), ("2 + x", 1, 3),
                                        ("1 + x + y", 2, 2), ("1 - x*y", 2, 3)])
def test_bruteforce_equals_span_count(text, dim, p):
    f = parse(text, dim)
    E = scalar_multiples(f, p)
    for n in range(1, 6):
        w = Window(dim, n)
        if len(E) ** w.volume > 2**24:
            break
        expected = translate_rank(f, w, p) * math.log(p)
        assert peters_bruteforce(E, w, p) == pytest.approx(expected, abs=1e-12)
