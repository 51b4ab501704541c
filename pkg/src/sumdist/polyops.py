"""Polynomials in the monomial basis and their Gegenbauer expansions.

Gegenbauer polynomials here are the zonal polynomials of S^{n-1},
normalized so that ``P_i(1) == 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import DomainError

MAX_DEGREE = 8


@dataclass(frozen=True)
class Polynomial:
    """Dense real polynomial; ``coeffs[k]`` multiplies ``t**k``."""

    coeffs: tuple[float, ...]

    def __init__(self, coeffs: Iterable[float]):
        c = [float(x) for x in coeffs]
        while len(c) > 1 and c[-1] == 0.0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c) if c else (0.0,))

    @classmethod
    def from_roots(cls, roots: Sequence[float], scale: float = 1.0) -> "Polynomial":
        return cls(scale * npoly.polyfromroots(roots)) if len(roots) else cls([scale])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t):
        return npoly.polyval(t, self.coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(npoly.polyadd(self.coeffs, other.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(npoly.polysub(self.coeffs, other.coeffs))

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return Polynomial(npoly.polymul(self.coeffs, other.coeffs))
        return Polynomial(np.asarray(self.coeffs) * float(other))

    __rmul__ = __mul__

    def __neg__(self) -> "Polynomial":
        return self * -1.0

    def derivative(self) -> "Polynomial":
        return Polynomial(npoly.polyder(self.coeffs))


@dataclass(frozen=True)
class GegenbauerExpansion:
    """Coefficients ``f_i`` with ``p(t) = sum_i f_i P_i^{(n)}(t)``."""

    n: int
    coeffs: tuple[float, ...]

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return sum(f * gegenbauer_eval(self.n, i, t) for i, f in enumerate(self.coeffs))

    def __getitem__(self, i: int) -> float:
        return self.coeffs[i] if i < len(self.coeffs) else 0.0


def _check_dimension(n: int) -> None:
    if n < 2:
        raise DomainError(f"dimension must be >= 2, got {n}")


def gegenbauer_eval(n: int, i: int, t):
    """Evaluate P_i^{(n)}(t) by the three-term recurrence.

    Works elementwise on arrays.
    """
    _check_dimension(n)
    if i < 0:
        raise DomainError(f"degree must be >= 0, got {i}")
    t = np.asarray(t, dtype=float)
    prev, cur = np.ones_like(t), t.copy()
    if i == 0:
        return prev if prev.ndim else float(prev)
    for j in range(1, i):
        prev, cur = cur, ((2 * j + n - 2) * t * cur - j * prev) / (j + n - 2)
    return cur if cur.ndim else float(cur)


def jacobi_adjacent_eval(n: int, eps: int, i: int, t):
    """Jacobi polynomial with parameters ((n-1)/2, (n-3)/2 + eps), scaled to 1 at t = 1."""
    _check_dimension(n)
    if eps not in (0, 1):
        raise DomainError(f"eps must be 0 or 1, got {eps}")
    a = (n - 1) / 2
    b = (n - 3) / 2 + eps
    t = np.asarray(t, dtype=float)
    prev = np.ones_like(t)
    cur = (a + 1) + (a + b + 2) * (t - 1) / 2
    at_one = 1.0 if i == 0 else a + 1
    if i == 0:
        cur = prev
    for j in range(1, i):
        c = 2 * j + a + b
        a1 = 2 * (j + 1) * (j + a + b + 1) * c
        a2 = (c + 1) * (a * a - b * b)
        a3 = c * (c + 1) * (c + 2)
        a4 = 2 * (j + a) * (j + b) * (c + 2)
        prev, cur = cur, ((a2 + a3 * t) * cur - a4 * prev) / a1
        at_one *= (j + 1 + a) / (j + 1)
    out = cur / at_one
    return out if out.ndim else float(out)


def gegenbauer_monomials(n: int, d: int) -> np.ndarray:
    """Rows k = 0..d hold the monomial coefficients of P_k^{(n)}."""
    _check_dimension(n)
    rows = np.zeros((d + 1, d + 1))
    rows[0, 0] = 1.0
    if d >= 1:
        rows[1, 1] = 1.0
    for j in range(1, d):
        shifted = np.roll(rows[j], 1)
        shifted[0] = 0.0
        rows[j + 1] = ((2 * j + n - 2) * shifted - j * rows[j - 1]) / (j + n - 2)
    return rows


def gegenbauer_expand(p: Polynomial, n: int) -> GegenbauerExpansion:
    if p.degree > MAX_DEGREE:
        raise DomainError(f"degree {p.degree} exceeds {MAX_DEGREE}")
    d = p.degree
    basis = gegenbauer_monomials(n, d)
    # basis.T is upper triangular: column k holds P_k
    coeffs = np.linalg.solve(basis.T, np.asarray(p.coeffs, dtype=float))
    return GegenbauerExpansion(n, tuple(float(c) for c in coeffs))
