"""Stolarsky-type identities on the sphere and on the Hamming cube."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from scipy.special import bernoulli

from .errors import DomainError, ParityError

# D_b grows like 2^n sqrt(n); beyond this length it no longer fits in a float
FLOAT_SAFE_LENGTH = 1000
# below this argument gamma is evaluated directly; above, by asymptotic series
_SERIES_FROM = 60.0


@dataclass(frozen=True)
class SphereConstants:
    n: int
    W: float
    c_n: float


def _bernoulli_poly(k: int, x: float) -> float:
    b = bernoulli(k)
    return math.fsum(math.comb(k, j) * b[j] * x ** (k - j) for j in range(k + 1))


def log_gamma_ratio(z: float, a: float, b: float) -> float:
    """log(Gamma(z + a) / Gamma(z + b)) without the cancellation of two lgamma calls."""
    if z < _SERIES_FROM:
        return math.log(math.gamma(z + a) / math.gamma(z + b))
    total = (a - b) * math.log(z)
    for k in range(1, 9):
        coef = (_bernoulli_poly(k + 1, a) - _bernoulli_poly(k + 1, b)) / (k * (k + 1))
        total += (-1) ** (k + 1) * coef / z**k
    return total


def mean_distance(n: int) -> float:
    """Average Euclidean distance between two uniform points of S^{n-1}.

    By the duplication formula this is sqrt(2) Gamma(z)^2 / (Gamma(z - 1/4) Gamma(z + 1/4))
    with z = n/2, a ratio close to 1 that is evaluated directly.
    """
    if n < 2:
        raise DomainError(f"dimension must be >= 2, got {n}")
    z = n / 2
    return math.sqrt(2.0) * math.exp(log_gamma_ratio(z, 0.0, -0.25) - log_gamma_ratio(z, 0.25, 0.0))


def stolarsky_constant(n: int) -> float:
    """c_n in c_n D(C) = W - tau/N^2."""
    if n < 2:
        raise DomainError(f"dimension must be >= 2, got {n}")
    return (n - 1) * math.sqrt(math.pi) * math.exp(log_gamma_ratio(n / 2, -0.5, 0.0))


def sphere_constants(n: int) -> SphereConstants:
    return SphereConstants(n, mean_distance(n), stolarsky_constant(n))


def spherical_discrepancy(tau: float, n: int, N: int) -> float:
    """Quadratic cap discrepancy of an N-point code with distance sum tau.

    A negative result (possible for synthetic inputs) triggers a warning.
    """
    if tau < 0:
        raise DomainError("sum of distances must be nonnegative")
    D = (mean_distance(n) - tau / (N * N)) / stolarsky_constant(n)
    if D < -1e-12:
        warnings.warn(f"negative discrepancy {D}: tau exceeds N^2 W", RuntimeWarning, stacklevel=2)
    return D


# ----------------------------------------------------------------- binary cube


@dataclass(frozen=True)
class LambdaPotential:
    """Exact values lambda(0..n) of the Hamming-space Stolarsky kernel."""

    n: int
    table: tuple[int, ...]

    def __getitem__(self, w: int) -> int:
        return self.table[w]


@lru_cache(maxsize=None)
def lambda_table(n: int) -> LambdaPotential:
    """lambda(2i-1) = lambda(2i) = 2^(n-2i) i C(2i, i); lambda(0) = 0.

    For odd n the last entry lambda(n) is the same expression at i = (n+1)/2,
    i.e. i C(2i, i) / 2.
    """
    if n < 1:
        raise DomainError(f"length must be >= 1, got {n}")
    table = [0] * (n + 1)
    for i in range(1, n // 2 + 1):
        table[2 * i - 1] = table[2 * i] = 2 ** (n - 2 * i) * i * math.comb(2 * i, i)
    if n % 2:
        i = (n + 1) // 2
        table[n] = i * math.comb(2 * i, i) // 2
    return LambdaPotential(n, tuple(table))


def binary_constant(n: int) -> Fraction:
    """n C(2n, n) / 2^(n+1): the discrepancy of a single point."""
    return Fraction(n * math.comb(2 * n, n), 2 ** (n + 1))


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def lambda_mean_exact(d) -> Fraction:
    """<lambda> = (1/N) sum_w A_w lambda(w), exact over the stored counts."""
    lam = lambda_table(d.n)
    total = sum((_as_fraction(a) * lam[w] for w, a in enumerate(d.counts) if a), Fraction(0))
    return total / d.N


def lambda_mean(d) -> float:
    return float(lambda_mean_exact(d))


def binary_discrepancy_exact(d) -> Fraction:
    """D_b of a binary code from its distance distribution, as an exact rational."""
    return binary_constant(d.n) - lambda_mean_exact(d)


def binary_discrepancy(d) -> float:
    return float(binary_discrepancy_exact(d))


def lambda_mean_bound_spherical(spec, n: int) -> float:
    """Upper bound 2^(n-1)/N^2 sqrt(n/pi) tau on <lambda> for even n.

    ``spec`` is the spherical embedding of the binary code.
    """
    if n % 2:
        raise ParityError(f"bound is stated for even length only, got n={n}")
    from .families import sum_of_distances

    tau = sum_of_distances(spec)
    return math.ldexp(math.sqrt(n / math.pi) * tau / spec.N**2, n - 1)


@dataclass(frozen=True)
class LambdaLPBound:
    relaxed: float
    intermediate: int | None


def lambda_lp_bound(n: int) -> LambdaLPBound:
    """Bounds on <lambda> valid for every code of odd length n = 2l - 1.

    ``intermediate`` equals lambda(l) = 2^(n-l) (l/2) C(l, l/2) and is only
    defined for even l.
    """
    if n % 2 == 0:
        raise ParityError(f"bound is stated for odd length only, got n={n}")
    l = (n + 1) // 2
    relaxed = math.ldexp(math.sqrt(l / math.pi), n) / math.sqrt(2.0)
    inter = None
    if l % 2 == 0:
        inter = 2 ** (n - l) * (l // 2) * math.comb(l, l // 2)
    return LambdaLPBound(relaxed, inter)
