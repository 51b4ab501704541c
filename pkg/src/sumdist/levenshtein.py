"""Levenshtein bounds of degree 1..3, their node/weight systems and quadrature.

Degree ``m = 2k - 1 + eps`` with ``eps`` in {0, 1}. The bound of degree ``m``
governs code sizes in ``[D*(n, m), D*(n, m + 1))``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import DomainError, PoleError, RangeWarning, SegmentError
from .polyops import Polynomial, gegenbauer_expand, jacobi_adjacent_eval

DEGREES = (1, 2, 3)
_TOL = 1e-12


def degree_split(m: int) -> tuple[int, int]:
    """Return ``(k, eps)`` with ``m == 2k - 1 + eps``."""
    k = (m + 1) // 2
    return k, m - 2 * k + 1


def design_threshold(n: int, m: int) -> int:
    """Delsarte-Goethals-Seidel size D*(n, m) of the smallest m-design."""
    if n < 2:
        raise DomainError(f"dimension must be >= 2, got {n}")
    if m not in (1, 2, 3, 4):
        raise DomainError(f"design threshold is exposed for m in 1..4, got {m}")
    k, eps = degree_split(m)
    return math.comb(n + k - 2 + eps, n - 1) + math.comb(n + k - 2, n - 1)


def max_size(n: int) -> int:
    """Largest N covered by the degree-3 machinery, n(n+3)/2."""
    return design_threshold(n, 4)


@dataclass(frozen=True)
class DegreeSelector:
    n: int
    N: int
    m: int
    segment: tuple[int, int]


def select_degree(n: int, N: int) -> DegreeSelector:
    """Pick the degree whose segment contains N (left-closed segments).

    The last segment is closed on the right so that N = n(n+3)/2 is covered.
    """
    if n < 2:
        raise DomainError(f"dimension must be >= 2, got {n}")
    top = max_size(n)
    if N < 2 or N > top:
        raise SegmentError(f"N={N} outside [2, {top}] for n={n}")
    for m in DEGREES:
        lo, hi = design_threshold(n, m), design_threshold(n, m + 1)
        if lo <= N < hi or (m == 3 and N == hi):
            return DegreeSelector(n, N, m, (lo, hi))
    raise SegmentError(f"no segment for n={n}, N={N}")  # unreachable for n >= 2


def s_interval(n: int, m: int) -> tuple[float, float]:
    """Separations for which L_m(n, s) stays inside the degree-m segment."""
    if m == 1:
        return -1.0, -1.0 / n
    if m == 2:
        return -1.0 / n, 0.0
    if m == 3:
        return 0.0, (math.sqrt(n + 3) - 1) / (n + 2)
    raise DomainError(f"degree must be 1, 2 or 3, got {m}")


def _check_degree(m: int) -> None:
    if m not in DEGREES:
        raise DomainError(f"degree must be 1, 2 or 3, got {m}")


def _bound_parts(n: int, s: float, m: int) -> tuple[float, float]:
    """Numerator and denominator of L_m(n, s)."""
    if m == 1:
        return s - 1.0, s
    if m == 2:
        return 2.0 * n * (1.0 - s), 1.0 - n * s
    return n * (1.0 - s) * ((n + 1) * s + 2.0), 1.0 - n * s * s


def inverse_bound(n: int, s: float, m: int) -> float:
    """1 / L_m(n, s); smooth in s, including across the pole of L_m."""
    _check_degree(m)
    num, den = _bound_parts(n, s, m)
    return den / num


def in_s_interval(n: int, s: float, m: int) -> bool:
    lo, hi = s_interval(n, m)
    return lo - _TOL <= s <= hi + _TOL


def lev_bound(n: int, s: float, m: int) -> float:
    """Levenshtein bound L_m(n, s) on the size of a code with separation s."""
    _check_degree(m)
    if n < 2:
        raise DomainError(f"dimension must be >= 2, got {n}")
    num, den = _bound_parts(n, s, m)
    if abs(den) <= 1e-15 * max(1.0, abs(num)):
        raise PoleError(f"L_{m}({n}, s) has a pole at s={s}")
    if not in_s_interval(n, s, m):
        warnings.warn(
            f"s={s} outside the degree-{m} interval {s_interval(n, m)} for n={n}",
            RangeWarning,
            stacklevel=2,
        )
    return num / den


def solve_s(n: int, N: float, m: int) -> float:
    """The separation s with L_m(n, s) = N."""
    _check_degree(m)
    lo, hi = design_threshold(n, m), design_threshold(n, m + 1)
    if not (lo <= N <= hi):
        raise SegmentError(f"N={N} outside degree-{m} segment [{lo}, {hi}] for n={n}")
    if m == 1:
        return -1.0 / (N - 1)
    if m == 2:
        return (N - 2 * n) / (n * (N - 2))
    # n(N-n-1) s^2 + n(n-1) s + (2n - N) = 0; b > 0, so the larger root is c/q
    b = n * (n - 1)
    c = 2 * n - N
    disc = b * b - 4 * n * (N - n - 1) * c
    q = -(b + math.sqrt(disc)) / 2
    return c / q


@dataclass(frozen=True)
class LevenshteinSystem:
    """Nodes and weights of the quadrature attached to L_m(n, s)."""

    n: int
    m: int
    k: int
    eps: int
    s: float
    N1: float
    inv_N1: float
    nodes: tuple[float, ...]
    weights: tuple[float, ...]
    in_range: bool


def quadrature_system(n: int, s: float, m: int) -> LevenshteinSystem:
    _check_degree(m)
    if n < 2:
        raise DomainError(f"dimension must be >= 2, got {n}")
    s = float(s)
    if not -1.0 <= s < 1.0:
        raise DomainError(f"separation must lie in [-1, 1), got {s}")
    k, eps = degree_split(m)
    num, den = _bound_parts(n, s, m)
    if num == 0.0:
        raise PoleError(f"degree-{m} system degenerates at s={s}")
    inv = den / num
    N1 = math.inf if inv == 0.0 else 1.0 / inv
    if m == 1:
        nodes = (s,)
        weights = (1.0 / (1.0 - s),)
    elif m == 2:
        # equivalent to (N1-n-1)/(N1 n+N1-4n) and n(N1-2)^2/(N1(N1 n+N1-4n)),
        # but finite across the pole s = 1/n
        nodes = (-1.0, s)
        weights = ((1 + n * s) / (2 * n * (1 + s)), (n - 1) / (n * (1 - s * s)))
    else:
        q = 1 + 2 * s + n * s * s
        nodes = (-(1 + s) / (1 + n * s), s)
        weights = (
            (1 + n * s) ** 3 / (n * ((n + 1) * s + 2) * q),
            (n - 1) / (n * (1 - s) * q),
        )
    lo, hi = design_threshold(n, m), design_threshold(n, m + 1)
    rel = 1e-9 * hi
    ok = in_s_interval(n, s, m) and inv > 0 and lo - rel <= N1 <= hi + rel
    return LevenshteinSystem(n, m, k, eps, s, N1, inv, nodes, weights, ok)


def node_multiplicities(sys: LevenshteinSystem) -> tuple[tuple[float, int], ...]:
    """Roots of the Levenshtein polynomial with their multiplicities."""
    if sys.m == 1:
        return ((sys.s, 1),)
    if sys.m == 2:
        return ((-1.0, 1), (sys.s, 1))
    return ((sys.nodes[0], 2), (sys.s, 1))


def levenshtein_polynomial(n: int, s: float, m: int) -> Polynomial:
    """Monic f_m^{(n,s)} built from its root structure."""
    sys = quadrature_system(n, s, m)
    roots = [a for a, mult in node_multiplicities(sys) for _ in range(mult)]
    return Polynomial.from_roots(roots)


def levenshtein_polynomial_from_jacobi(n: int, s: float, m: int) -> Polynomial:
    """f_m^{(n,s)} from the adjacent-Jacobi representation (not monic).

    (t+1)^eps (P_k(t) P_{k-1}(s) - P_k(s) P_{k-1}(t))^2 / (t - s)
    """
    _check_degree(m)
    k, eps = degree_split(m)
    # interpolate P_k and P_{k-1} exactly on k+1 Chebyshev points
    xs = np.cos(np.pi * (np.arange(k + 1) + 0.5) / (k + 1))
    pk = npoly.polyfit(xs, jacobi_adjacent_eval(n, eps, k, xs), k)
    pk1 = npoly.polyfit(xs, jacobi_adjacent_eval(n, eps, k - 1, xs), k)
    inner = npoly.polysub(
        pk * jacobi_adjacent_eval(n, eps, k - 1, s), pk1 * jacobi_adjacent_eval(n, eps, k, s)
    )
    num = npoly.polymul(inner, inner)
    if eps:
        num = npoly.polymul(num, [1.0, 1.0])
    quot, _ = npoly.polydiv(num, [-s, 1.0])
    return Polynomial(quot)


def verify_quadrature(sys: LevenshteinSystem, p: Polynomial) -> float:
    """Residual of f_0 = f(1)/N1 + sum_i rho_i f(alpha_i)."""
    if p.degree > sys.m:
        raise DomainError(f"quadrature is exact only up to degree {sys.m}, got {p.degree}")
    f0 = gegenbauer_expand(p, sys.n)[0]
    rhs = p(1.0) * sys.inv_N1 + math.fsum(w * p(a) for w, a in zip(sys.weights, sys.nodes))
    return abs(f0 - rhs)
