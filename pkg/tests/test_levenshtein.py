import math
import warnings

import numpy as np
import pytest

from sumdist.errors import DomainError, PoleError, RangeWarning, SegmentError
from sumdist.levenshtein import (
    degree_split,
    design_threshold,
    in_s_interval,
    inverse_bound,
    lev_bound,
    levenshtein_polynomial,
    levenshtein_polynomial_from_jacobi,
    max_size,
    quadrature_system,
    s_interval,
    select_degree,
    solve_s,
    verify_quadrature,
)
from sumdist.polyops import Polynomial, gegenbauer_expand


def test_degree_split():
    assert degree_split(1) == (1, 0)
    assert degree_split(2) == (1, 1)
    assert degree_split(3) == (2, 0)
    assert degree_split(4) == (2, 1)


def test_design_threshold():
    for n in (3, 7, 20):
        assert design_threshold(n, 1) == 2
        assert design_threshold(n, 2) == n + 1
        assert design_threshold(n, 3) == 2 * n
        assert design_threshold(n, 4) == n * (n + 3) // 2
    assert design_threshold(6, 4) == 27
    with pytest.raises(DomainError):
        design_threshold(5, 5)


def test_select_degree_segments():
    n = 6
    assert select_degree(n, 2).m == 1
    assert select_degree(n, n).m == 1
    assert select_degree(n, n + 1).m == 2
    assert select_degree(n, 2 * n - 1).m == 2
    assert select_degree(n, 2 * n).m == 3
    assert select_degree(n, max_size(n)).m == 3
    for N in (1, max_size(n) + 1):
        with pytest.raises(SegmentError):
            select_degree(n, N)


def test_lev_bound_values():
    for n in (3, 8):
        assert lev_bound(n, -1.0, 1) == pytest.approx(2.0)
        assert lev_bound(n, 0.0, 2) == pytest.approx(2 * n)
    assert lev_bound(5, 0.2, 3) == pytest.approx(16.0, rel=1e-14)


def test_lev_bound_pole_and_range():
    with pytest.raises(PoleError):
        lev_bound(4, 0.25, 2)
    with pytest.warns(RangeWarning):
        lev_bound(5, 0.3, 3)


def test_inverse_bound_is_reciprocal():
    for m in (1, 2, 3):
        lo, hi = s_interval(7, m)
        for s in np.linspace(lo, hi, 5)[1:-1]:
            assert inverse_bound(7, s, m) * lev_bound(7, s, m) == pytest.approx(1.0)


def test_solve_s_examples():
    assert solve_s(5, 16, 3) == pytest.approx(0.2, abs=1e-15)
    for n in (3, 10):
        assert solve_s(n, n + 1, 1) == pytest.approx(-1 / n)
        assert solve_s(n, 2 * n, 2) == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(SegmentError):
        solve_s(5, 30, 3)


def test_solve_s_inverts_lev_bound():
    with warnings.catch_warnings():
        warnings.simplefilter("error", RangeWarning)
        for n in range(3, 41):
            for m in (1, 2, 3):
                lo, hi = design_threshold(n, m), design_threshold(n, m + 1)
                for N in np.linspace(lo, hi, 7):
                    s = solve_s(n, N, m)
                    if m == 2 and N == hi:
                        continue  # s = 0 endpoint is shared with m = 3
                    assert abs(lev_bound(n, s, m) - N) < 1e-9 * N


def test_solve_s_large_n_stable():
    # N near n(n+3)/2 at large n: compare to the quadratic solved in exact rationals
    from fractions import Fraction

    n, N = 5000, 5000 * 5003 // 2 - 7
    s = solve_s(n, N, 3)
    a, b, c = Fraction(n * (N - n - 1)), Fraction(n * (n - 1)), Fraction(2 * n - N)
    val = a * Fraction(s) ** 2 + b * Fraction(s) + c
    assert abs(float(val)) < 1e-9 * abs(float(c))


def test_quadrature_system_examples():
    sys = quadrature_system(5, 0.2, 3)
    assert sys.nodes == pytest.approx((-0.6, 0.2))
    assert sum(sys.weights) == pytest.approx(1 - 1 / 16)
    assert sys.N1 == pytest.approx(16.0)
    assert sys.in_range
    sys = quadrature_system(3, 0, 2)
    assert sys.nodes == (-1.0, 0.0)
    assert sys.weights == pytest.approx((1 / 6, 2 / 3))
    assert sys.N1 == pytest.approx(6.0)
    for n in (3, 9):
        sys = quadrature_system(n, -1 / n, 1)
        assert sys.weights[0] == pytest.approx(n / (n + 1))


def test_quadrature_system_structure():
    for n in range(3, 21):
        for m in (1, 2, 3):
            lo, hi = s_interval(n, m)
            for s in np.linspace(lo, hi, 6)[1:-1]:
                sys = quadrature_system(n, s, m)
                assert list(sys.nodes) == sorted(sys.nodes)
                assert sys.nodes[-1] == s
                assert (sys.nodes[0] == -1.0) == (sys.eps == 1)
                assert all(w > 0 for w in sys.weights)
                assert sum(sys.weights) == pytest.approx(1 - sys.inv_N1, abs=1e-10)


def test_m2_weights_match_N1_forms():
    # the N1-based forms, evaluated away from the pole
    n, s = 7, -0.05
    sys = quadrature_system(n, s, 2)
    N1 = sys.N1
    rho0 = (N1 - n - 1) / (N1 * n + N1 - 4 * n)
    rho1 = n * (N1 - 2) ** 2 / (N1 * (N1 * n + N1 - 4 * n))
    assert sys.weights == pytest.approx((rho0, rho1))


def test_quadrature_system_domain():
    with pytest.raises(DomainError):
        quadrature_system(4, 1.0, 1)
    with pytest.raises(DomainError):
        quadrature_system(4, 0.1, 4)


def test_levenshtein_polynomial_roots():
    p = levenshtein_polynomial(6, -0.4, 1)
    assert p.coeffs == pytest.approx((0.4, 1.0))
    p = levenshtein_polynomial(6, -0.1, 2)
    assert p.coeffs == pytest.approx(Polynomial.from_roots([-1.0, -0.1]).coeffs)
    p = levenshtein_polynomial(5, 0.2, 3)
    assert p.coeffs == pytest.approx(Polynomial.from_roots([-0.6, -0.6, 0.2]).coeffs)
    f = gegenbauer_expand(p, 5)
    assert p(1.0) / f[0] == pytest.approx(16.0, rel=1e-10)


def test_jacobi_route_proportional():
    for n in (3, 5, 12):
        for m in (1, 2, 3):
            lo, hi = s_interval(n, m)
            s = (lo + hi) / 2
            a = np.array(levenshtein_polynomial(n, s, m).coeffs)
            b = np.array(levenshtein_polynomial_from_jacobi(n, s, m).coeffs)
            assert len(a) == len(b)
            np.testing.assert_allclose(b / b[-1], a, atol=1e-10)


def test_levenshtein_expansion_positive():
    for n in range(3, 21):
        for m in (1, 2, 3):
            lo, hi = s_interval(n, m)
            for s in np.linspace(lo, hi, 7)[1:-1]:
                f = gegenbauer_expand(levenshtein_polynomial(n, s, m), n)
                assert all(c > 0 for c in f.coeffs)


def test_verify_quadrature_examples():
    sys = quadrature_system(6, -0.5, 1)
    assert verify_quadrature(sys, Polynomial([1.0])) < 1e-15
    assert verify_quadrature(sys, Polynomial([0.0, 1.0])) < 1e-15
    rng = np.random.default_rng(11)
    sys = quadrature_system(7, 0.1, 3)
    for _ in range(20):
        assert verify_quadrature(sys, Polynomial(rng.standard_normal(4))) < 1e-10
    with pytest.raises(DomainError):
        verify_quadrature(sys, Polynomial([0, 0, 0, 0, 1]))


def test_segment_endpoints_continuity():
    for n in range(3, 30):
        for m in (1, 2, 3):
            D = design_threshold(n, m)
            s = solve_s(n, D, m)
            assert in_s_interval(n, s, m)
            assert lev_bound(n, s, m) == pytest.approx(D, rel=1e-9)
