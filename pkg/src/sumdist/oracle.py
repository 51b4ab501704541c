"""Brute-force references: explicit point sets, exhaustive Hamming-space
sums and a Monte Carlo estimate of the spherical cap discrepancy.

Nothing here reuses the closed forms it is meant to check.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy.special import betainc

from .errors import DomainError, InfeasibleParametersError
from .families import SrgParameters, codewords_to_array

DEFAULT_SEED = 20220131
BRUTE_MAX_LENGTH = 14


@dataclass(frozen=True)
class PointSet:
    n: int
    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != self.n:
            raise DomainError(f"expected an (N, {self.n}) array, got shape {pts.shape}")
        norms = np.linalg.norm(pts, axis=1)
        if np.abs(norms - 1.0).max() > 1e-12:
            raise DomainError("points must have unit norm")
        object.__setattr__(self, "points", pts)

    @property
    def N(self) -> int:
        return self.points.shape[0]

    def gram(self) -> np.ndarray:
        return self.points @ self.points.T

    def sum_of_distances(self) -> float:
        diff = self.points[:, None, :] - self.points[None, :, :]
        return math.fsum(np.sqrt((diff * diff).sum(axis=2)).ravel())


def _unit_rows(x: np.ndarray) -> np.ndarray:
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def simplex_points(n: int) -> PointSet:
    """n+1 vertices of a regular simplex inscribed in S^{n-1}."""
    if n < 2:
        raise DomainError(f"dimension must be >= 2, got {n}")
    centered = np.eye(n + 1) - 1.0 / (n + 1)
    # orthonormal basis of the hyperplane sum(x) = 0
    q, _ = np.linalg.qr(centered[:, :n])
    coords = centered @ q
    return PointSet(n, _unit_rows(coords))


def biorthogonal_points(n: int) -> PointSet:
    if n < 2:
        raise DomainError(f"dimension must be >= 2, got {n}")
    eye = np.eye(n)
    return PointSet(n, np.vstack([eye, -eye]))


def _check_srg_adjacency(p: SrgParameters, adj: np.ndarray) -> None:
    v = p.v
    if adj.shape != (v, v):
        raise InfeasibleParametersError(f"adjacency shape {adj.shape} does not match v={v}")
    if not np.array_equal(adj, adj.T) or np.any(np.diag(adj)) or not np.isin(adj, (0, 1)).all():
        raise InfeasibleParametersError("adjacency must be symmetric 0/1 with zero diagonal")
    eye = np.eye(v, dtype=adj.dtype)
    expected = p.k * eye + p.a * adj + p.c * (1 - eye - adj)
    if not np.array_equal(adj @ adj, expected):
        raise InfeasibleParametersError(f"adjacency is not an SRG{(p.v, p.k, p.a, p.c)}")


def srg_points(p: SrgParameters, adjacency, eigenspace: str = "first") -> PointSet:
    """Rows of the orthogonal projector onto an adjacency eigenspace, normalized."""
    adj = np.asarray(adjacency, dtype=np.int64)
    _check_srg_adjacency(p, adj)
    r1, r2 = p.eigenvalues()
    theta = {"first": r1, "second": r2}.get(eigenspace)
    if theta is None:
        raise DomainError(f"eigenspace must be 'first' or 'second', got {eigenspace!r}")
    vals, vecs = np.linalg.eigh(adj.astype(float))
    basis = vecs[:, np.abs(vals - theta) < 1e-8]
    return PointSet(basis.shape[1], _unit_rows(basis))


def petersen_adjacency() -> np.ndarray:
    """Kneser graph K(5, 2): 2-subsets of a 5-set, adjacent when disjoint."""
    pairs = list(itertools.combinations(range(5), 2))
    return np.array([[int(not set(p) & set(q)) for q in pairs] for p in pairs], dtype=np.int64)


def cube_embedding_points(codewords) -> PointSet:
    bits = codewords_to_array(codewords)
    n = bits.shape[1]
    return PointSet(n, (1.0 - 2.0 * bits) / math.sqrt(n))


def _pack(bits: np.ndarray) -> np.ndarray:
    return (bits << np.arange(bits.shape[1], dtype=np.int64)).sum(axis=1)


def _popcount(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint64)
    count = np.zeros(x.shape, dtype=np.int64)
    while np.any(x):
        count += (x & np.uint64(1)).astype(np.int64)
        x >>= np.uint64(1)
    return count


def brute_binary_discrepancy(codewords) -> Fraction:
    """sum_t sum_x (|B(x,t) & C|/N - v(t)/2^n)^2, exactly, by enumerating the cube."""
    bits = codewords_to_array(codewords)
    N, n = bits.shape
    if n > BRUTE_MAX_LENGTH:
        raise DomainError(f"exhaustive evaluation limited to n <= {BRUTE_MAX_LENGTH}, got {n}")
    code = _pack(bits)
    xs = np.arange(2**n, dtype=np.int64)
    dist = _popcount(xs[:, None] ^ code[None, :])
    counts = np.zeros((2**n, n + 1), dtype=np.int64)
    np.add.at(counts, (np.repeat(xs, N), dist.ravel()), 1)
    in_ball = np.cumsum(counts, axis=1)
    vol = np.cumsum([math.comb(n, i) for i in range(n + 1)])
    diff = (2**n) * in_ball - N * vol[None, :]
    total = int((diff.astype(object) ** 2).sum())
    return Fraction(total, N * N * 4**n)


def brute_lambda_mean(codewords) -> Fraction:
    """<lambda> from the kernel lambda(w) = mu(0) - mu(w), mu(w) = sum_t |B(x,t) & B(y,t)|.

    Computed by enumeration, independently of any closed form for lambda.
    """
    bits = codewords_to_array(codewords)
    N, n = bits.shape
    if n > BRUTE_MAX_LENGTH:
        raise DomainError(f"exhaustive evaluation limited to n <= {BRUTE_MAX_LENGTH}, got {n}")
    lam = brute_lambda_kernel(n)
    code = _pack(bits)
    d = _popcount(code[:, None] ^ code[None, :])
    return Fraction(int(sum(lam[w] for w in d.ravel())), N * N)


def brute_lambda_kernel(n: int) -> list[int]:
    xs = np.arange(2**n, dtype=np.int64)
    from_zero = _popcount(xs)
    mu = []
    for w in range(n + 1):
        from_y = _popcount(xs ^ ((1 << w) - 1))
        far = np.maximum(from_zero, from_y)
        # z lies in both balls of radius t exactly for t >= far
        mu.append(int((n + 1 - far).sum()))
    return [mu[0] - m for m in mu]


def cap_measure(n: int, t) -> np.ndarray:
    """Normalized surface measure of the cap {y : x.y >= t} on S^{n-1}."""
    t = np.asarray(t, dtype=float)
    half = 0.5 * betainc((n - 1) / 2, 0.5, 1.0 - t * t)
    return np.where(t >= 0, half, 1.0 - half)


def monte_carlo_cap_discrepancy(
    ps: PointSet, samples: int = 10**6, seed: Optional[int] = DEFAULT_SEED, shards: int = 1,
    chunk: int = 200_000,
) -> tuple[float, float]:
    """Estimate of int_{-1}^{1} int_S (|C & cap|/N - sigma(cap))^2 dsigma dt and its standard error.

    Each shard draws from its own child of ``SeedSequence(seed)``, so the result
    depends only on ``(seed, shards, samples)``.
    """
    if samples < 10**4:
        raise DomainError(f"need at least 10^4 samples, got {samples}")
    children = np.random.SeedSequence(seed).spawn(shards)
    per_shard = [samples // shards + (1 if i < samples % shards else 0) for i in range(shards)]
    total = 0.0
    total_sq = 0.0
    for child, count in zip(children, per_shard):
        rng = np.random.default_rng(child)
        left = count
        while left:
            size = min(chunk, left)
            x = _unit_rows(rng.standard_normal((size, ps.n)))
            t = rng.uniform(-1.0, 1.0, size)
            frac = (x @ ps.points.T >= t[:, None]).mean(axis=1)
            g = 2.0 * (frac - cap_measure(ps.n, t)) ** 2
            total += g.sum()
            total_sq += (g * g).sum()
            left -= size
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0)
    return mean, math.sqrt(var / samples)
