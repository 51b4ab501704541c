"""Upper and lower bounds on the sum of distances of a spherical code.

All energies use the potential ``L(t) = -sqrt(2(1-t))`` (negative distance),
so an energy lower bound is an upper bound on the sum of distances ``tau``
and vice versa. The quadrature pipeline is authoritative; the printed closed
forms are kept as cross-checks.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import discrepancy
from .errors import ConsistencyError, DomainError, RangeWarning, SegmentError
from .levenshtein import (
    LevenshteinSystem,
    in_s_interval,
    node_multiplicities,
    quadrature_system,
    select_degree,
    solve_s,
)
from .polyops import Polynomial, gegenbauer_expand

SQRT2 = math.sqrt(2.0)
GRID_POINTS = 512


def potential(t):
    """L(t) = -||x - y|| for unit vectors with inner product t."""
    return -np.sqrt(2.0 * (1.0 - np.asarray(t, dtype=float)))


def potential_derivative(t: float, j: int) -> float:
    """j-th derivative of L at t < 1."""
    falling = 1.0
    for i in range(j):
        falling *= 0.5 - i
    return -SQRT2 * falling * (-1.0) ** j * (1.0 - t) ** (0.5 - j)


# ---------------------------------------------------------------- closed forms


def tau1(n: int, N: int) -> float:
    return N * math.sqrt(2.0 * N * (N - 1))


def tau2(n: int, N: int) -> float:
    num = 2 * N * (N - n - 1) + (N - 2) * math.sqrt(2.0 * n * N * (n - 1) * (N - 2))
    return N * num / (N * n + N - 4 * n)


def tau3(n: int, N: int) -> float:
    A1 = N * n**3 + (2 * N - 1) * n**2 - (N - 1) * (7 * N - 2) * n + (N - 1) ** 2 * (2 * N + 3)
    B1 = math.sqrt(float(n) * (n - 1) * N * (N - n - 1))
    D = n**2 * (n - 1) ** 2 + 4 * n * (N - n - 1) * (N - 2 * n)
    return N * math.sqrt(2.0 * N * (n * A1 + 2 * (N - n - 1) ** 2 * B1) / D)


_TAU = {1: tau1, 2: tau2, 3: tau3}


def ulb_closed(n: int, N: int) -> float:
    """Upper bound on tau(n, N) from the printed degree-1..3 formulas."""
    return _TAU[select_degree(n, N).m](n, N)


def uub1(n: int, N: int, s: float) -> float:
    return N * (N - 1) * math.sqrt(2.0 * (1.0 - s))


def uub2(n: int, N: int, s: float, printed: bool = False) -> float:
    """Degree-2 lower bound on tau.

    With ``printed=True`` the last numerator term lacks its factor N, exactly
    as typeset; that variant does not match its own derivation.
    """
    last = (n - 1) * math.sqrt(2.0 * (1.0 - s))
    if not printed:
        last *= N
    return N * (2 * N * (1 - n * s * s) - 2 * n * (1 - s * s) + last) / (n * (1 - s * s))


def uub3_printed(n: int, N: int, s: float) -> float:
    """Degree-3 expression as typeset. It equals the energy bound, i.e. -tau."""
    A2 = (1 + n * s) ** 5 * (1 - s) + (n - 1) ** 2 * ((n + 1) * s + 2)
    B2 = (n - 1) * math.sqrt((1 - s) * (1 + n * s) * ((n + 1) * s + 2))
    A4 = (
        n * (n + 2) * (n + 3) * s**4
        + 2 * (3 * n * n + 13 * n + 8) * s**3
        + 2 * (n * n + 12 * n + 23) * s**2
        + 2 * (2 * n * n + 5 * n + 17) * s
        + 9 * n
        + 3
    )
    B4 = 2 * (n - 1) * ((n + 1) * s + 2) * ((n - 2) * s * s - 2 * n * s - 1)
    C4 = 2 * n * (n + 2) * s**3 - (n * n - 5 * n - 2) * s * s - 6 * n * s - n - 5
    A5 = N * (1 - n * s * s) - n * (1 - s) * ((n + 1) * s + 2)
    B5 = ((n + 1) * s + 2) / (1 + n * s)
    A6 = (1 - s) * (A2 + 2 * (1 + n * s) ** 2 * B2) / (1 + n * s)
    q = 1 + 2 * s + n * s * s
    num = N * (A5 * ((1 - s) * (1 + n * s) * A4 + B4 * math.sqrt((1 - s) * B5)) - 2 * N * q * C4 * math.sqrt(A6))
    return num / (n * (1 - s) * q * q * C4 * math.sqrt(2 * B5))


def uub3(n: int, N: int, s: float) -> float:
    return -uub3_printed(n, N, s)


def uub_closed(n: int, N: int, s: float, printed: bool = False) -> float:
    """Lower bound on tau for codes with separation s, from the closed forms.

    ``printed=True`` returns the degree-2 and degree-3 expressions exactly as
    typeset (diagnostics only).
    """
    m = select_degree(n, N).m
    if m == 1:
        return uub1(n, N, s)
    if m == 2:
        return uub2(n, N, s, printed=printed)
    return uub3_printed(n, N, s) if printed else uub3(n, N, s)


# -------------------------------------------------------------------- pipeline


@dataclass(frozen=True)
class Witness:
    """Intermediate quantities of one quadrature-route evaluation."""

    s: float
    N1: float
    nodes: tuple[float, ...]
    weights: tuple[float, ...]
    lam: Optional[float] = None
    f_at_1: Optional[float] = None
    f_gegenbauer: tuple[float, ...] = ()
    branch: Optional[str] = None


def _energy_part(sys: LevenshteinSystem) -> float:
    return math.fsum(w * float(potential(a)) for w, a in zip(sys.weights, sys.nodes))


def ulb_witness(n: int, N: int) -> tuple[float, Witness]:
    m = select_degree(n, N).m
    s = solve_s(n, N, m)
    sys = quadrature_system(n, s, m)
    tau = -N * N * _energy_part(sys)
    return tau, Witness(s, sys.N1, sys.nodes, sys.weights)


def ulb_pipeline(n: int, N: int) -> float:
    """Upper bound on tau via N^2 sum_i rho_i L(alpha_i) with nodes solved from N."""
    return ulb_witness(n, N)[0]


def hermite_interpolant(sys: LevenshteinSystem) -> Polynomial:
    """g_T: degree m-1 polynomial matching L (and L' at double nodes) on the node multiset."""
    rows, rhs = [], []
    m = sys.m
    for a, mult in node_multiplicities(sys):
        for j in range(mult):
            row = [0.0] * m
            for k in range(j, m):
                row[k] = math.perm(k, j) * a ** (k - j)
            rows.append(row)
            rhs.append(potential_derivative(a, j))
    return Polynomial(np.linalg.solve(np.array(rows), np.array(rhs)))


def lp_polynomial(sys: LevenshteinSystem) -> tuple[Polynomial, float, str]:
    """f = -lambda f_m + g_T with lambda = max_i g_i / l_i over 1 <= i <= m-1."""
    fm = Polynomial.from_roots([a for a, mult in node_multiplicities(sys) for _ in range(mult)])
    g = hermite_interpolant(sys)
    if sys.m == 1:
        return g, 0.0, "constant"
    ell = gegenbauer_expand(fm, sys.n)
    gg = gegenbauer_expand(g, sys.n)
    ratios = [gg[i] / ell[i] for i in range(1, sys.m)]
    i_best = int(np.argmax(ratios))
    lam = ratios[i_best]
    return g - lam * fm, lam, f"f{i_best + 1}=0"


def uub_witness(n: int, N: int, s: float, check: bool = True) -> tuple[float, Witness, bool]:
    """Lower bound on tau for N-point codes with max inner product s.

    Returns ``(tau_bound, witness, in_range)``.
    """
    sel = select_degree(n, N)
    m = sel.m
    sys = quadrature_system(n, s, m)
    if sys.inv_N1 > 0 and N * sys.inv_N1 > 1.0 + 1e-9:
        raise SegmentError(
            f"separation s too small for this cardinality: N={N} exceeds L_{m}({n}, {s}) = {sys.N1:.10g}"
        )
    in_range = in_s_interval(n, s, m) and sys.in_range
    f, lam, branch = lp_polynomial(sys)
    coeffs = gegenbauer_expand(f, n)
    f1 = float(f(1.0))
    energy = (N * sys.inv_N1 - 1.0) * N * f1 + N * N * _energy_part(sys)
    tau = -energy
    if check:
        _check_lp_conditions(sys, f, coeffs, lam, N, tau)
    wit = Witness(sys.s, sys.N1, sys.nodes, sys.weights, lam, f1, coeffs.coeffs, branch)
    return tau, wit, in_range


def _check_lp_conditions(sys, f, coeffs, lam, N, tau) -> None:
    scale = max(abs(c) for c in coeffs.coeffs)
    if lam < -1e-12:
        raise ConsistencyError(f"negative interpolation multiplier {lam}")
    for i in range(1, len(coeffs.coeffs)):
        if coeffs[i] > 1e-12 * scale:
            raise ConsistencyError(f"Gegenbauer coefficient f_{i} = {coeffs[i]} is positive")
    if sys.m == 3:
        if abs(coeffs[1]) > 1e-9 * abs(coeffs[0]):
            raise ConsistencyError(f"f_1 = {coeffs[1]} not zero for degree 3")
        if not coeffs[2] < 0:
            raise ConsistencyError(f"f_2 = {coeffs[2]} not negative for degree 3")
    grid = np.linspace(-1.0, sys.s, GRID_POINTS)
    gap = f(grid) - potential(grid)
    if gap.min() < -1e-9 * scale:
        raise ConsistencyError(f"f falls below the potential by {-gap.min()} on [-1, s]")
    # the same bound read off directly: N^2 f_0 - N f(1)
    direct = -(N * N * coeffs[0] - N * float(f(1.0)))
    if abs(direct - tau) > 1e-9 * abs(tau):
        raise ConsistencyError(f"quadrature route {tau} and direct route {direct} disagree")


def uub_pipeline(n: int, N: int, s: float) -> float:
    """Lower bound on tau via the Hermite-interpolant LP polynomial.

    Outside the proved separation interval the value is still computed; a
    RangeWarning is emitted.
    """
    tau, _, in_range = uub_witness(n, N, s)
    if not in_range:
        warnings.warn(f"s={s} outside the proved interval for n={n}, N={N}", RangeWarning, stacklevel=2)
    return tau


def uub_interval(n: int, N: int) -> tuple[float, float]:
    """Separations for which the lower bound on tau is proved at this (n, N)."""
    m = select_degree(n, N).m
    if m == 1:
        return -1.0 / (N - 1), -1.0 / n
    if m == 2:
        return (N - 2 * n) / (n * (N - 2)), 0.0
    return solve_s(n, N, 3), (math.sqrt(n + 3) - 1) / (n + 2)


# -------------------------------------------------------------------- reports


@dataclass(frozen=True)
class BoundReport:
    """ULB/UUB values for one (n, N[, s]) with both computation routes."""

    n: int
    N: int
    m: int
    segment: tuple[int, int]
    ulb: float
    ulb_closed: float
    s: Optional[float] = None
    uub: Optional[float] = None
    uub_closed: Optional[float] = None
    uub_printed: Optional[float] = None
    in_range: bool = True
    ulb_witness: Optional[Witness] = None
    uub_witness: Optional[Witness] = None
    flags: tuple[str, ...] = field(default_factory=tuple)


def bound_report(n: int, N: int, s: Optional[float] = None) -> BoundReport:
    sel = select_degree(n, N)
    ulb, uw = ulb_witness(n, N)
    closed = ulb_closed(n, N)
    flags = []
    if abs(ulb - closed) > 1e-9 * abs(ulb):
        raise ConsistencyError(f"ULB routes disagree: pipeline {ulb}, closed form {closed}")
    if s is None:
        return BoundReport(n, N, sel.m, sel.segment, ulb, closed, ulb_witness=uw)
    uub, ww, in_range = uub_witness(n, N, s)
    uclosed = uub_closed(n, N, s)
    uprinted = uub_closed(n, N, s, printed=True) if sel.m >= 2 else uclosed
    if abs(uub - uclosed) > 1e-8 * abs(uub):
        raise ConsistencyError(f"UUB routes disagree: pipeline {uub}, closed form {uclosed}")
    if abs(uprinted - uub) > 1e-8 * abs(uub):
        flags.append(f"printed degree-{sel.m} formula differs from pipeline")
    if not in_range:
        flags.append("s outside proved interval")
    return BoundReport(
        n, N, sel.m, sel.segment, ulb, closed, float(s), uub, uclosed, uprinted,
        in_range, uw, ww, tuple(flags),
    )


# ----------------------------------------------------------------- asymptotics

ASYMPTOTIC_REGIMES = ("lb1a", "lb2a", "lb3a", "intro")


def asymptotic_reference(n: int, N: int, which: str) -> float:
    """Truncated large-n expansion of the bound in the named regime."""
    if which == "lb1a":
        expected, value = 1, SQRT2 * N * N - N / SQRT2
    elif which == "lb2a":
        d = N / n
        expected, value = 2, SQRT2 * N * N - 2 * (1 - d - (1 - 1.5 * d) / SQRT2) * N
    elif which == "lb3a":
        d = N / n**2
        expected, value = 3, SQRT2 * N * N - math.sqrt(2 * d) / 8 * N**1.5
    elif which == "intro":
        expected, value = None, SQRT2 * N * N - N**1.5 / (4 * SQRT2)
    else:
        raise DomainError(f"unknown regime {which!r}; choose from {ASYMPTOTIC_REGIMES}")
    if expected is not None:
        try:
            m = select_degree(n, N).m
        except SegmentError:
            m = None
        if m != expected:
            warnings.warn(f"regime {which} does not match the segment of N={N}", RangeWarning, stacklevel=2)
    return value


def trivial_bound(n: int, N: int) -> float:
    """N^2 W(S^{n-1}): the bound every code obeys since discrepancy is nonnegative."""
    return N * N * discrepancy.mean_distance(n)


def separation_bound(N: int, s: float) -> float:
    """N(N-1) sqrt(2(1-s)): every distinct pair is at least that far apart."""
    return uub1(0, N, s)


@dataclass(frozen=True)
class Sandwich:
    """Bounds lower <= tau <= upper for a code with N points and separation s."""

    lower: float
    upper: float
    lower_source: str
    upper_source: str
    in_range: bool

    def holds(self, tau: float, rtol: float = 1e-12) -> bool:
        slack = rtol * abs(tau)
        return self.lower - slack <= tau <= self.upper + slack


def sandwich(n: int, N: int, s: float) -> Sandwich:
    """Best available bounds on tau.

    Inside [2, n(n+3)/2] these are the LP bounds of the matching degree; the lower
    one is kept outside the proved s-interval whenever its sign conditions still
    hold. Otherwise the mean-distance and minimum-distance bounds are used.
    """
    try:
        m = select_degree(n, N).m
    except SegmentError:
        return Sandwich(separation_bound(N, s), trivial_bound(n, N), "min-distance", "mean-distance", True)
    upper = ulb_pipeline(n, N)
    try:
        lower, _, in_range = uub_witness(n, N, s)
        source = f"lp-degree-{m}"
    except (SegmentError, ConsistencyError):
        # either s is too small for N points, or s is so far out of range that the
        # LP sign conditions fail; the polynomial then certifies nothing
        lower, source, in_range = separation_bound(N, s), "min-distance", False
    return Sandwich(lower, upper, source, f"lp-degree-{m}", in_range)


__all__ = [
    "BoundReport",
    "Witness",
    "asymptotic_reference",
    "bound_report",
    "Sandwich",
    "potential",
    "sandwich",
    "separation_bound",
    "tau1",
    "tau2",
    "tau3",
    "trivial_bound",
    "ulb_closed",
    "ulb_pipeline",
    "uub_closed",
    "uub_interval",
    "uub_pipeline",
    "uub_witness",
]
