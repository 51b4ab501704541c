"""Code families summarized by inner-product spectra or distance distributions.

All families here are distance-invariant, so a per-point spectrum fixes the
sum of distances exactly without building coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DistributionValidationError, DomainError, InfeasibleParametersError

_SUM_TOL = 1e-9


@dataclass(frozen=True)
class InnerProductSpectrum:
    """Per-point inner-product profile: ``(value, multiplicity)`` pairs.

    Multiplicities are average per-point counts and sum to N - 1.
    """

    n: int
    N: int
    entries: tuple[tuple[float, float], ...]

    def __post_init__(self):
        values = [v for v, _ in self.entries]
        if any(v >= 1.0 or v < -1.0 - 1e-15 for v in values):
            raise DistributionValidationError(f"inner products must lie in [-1, 1): {values}")
        if len(set(values)) != len(values):
            raise DistributionValidationError(f"repeated inner-product values: {values}")
        total = math.fsum(m for _, m in self.entries)
        if abs(total - (self.N - 1)) > _SUM_TOL * max(1, self.N):
            raise DistributionValidationError(f"multiplicities sum to {total}, expected {self.N - 1}")

    @property
    def s(self) -> float:
        """Separation: the largest inner product between distinct points."""
        return max(v for v, m in self.entries if m > 0)

    def frame_potential(self) -> float:
        """sum_{i,j} (z_i . z_j)^2, diagonal included."""
        return self.N * (1.0 + math.fsum(m * v * v for v, m in self.entries))


def make_spectrum(n: int, N: int, entries: Iterable[tuple[float, float]]) -> InnerProductSpectrum:
    merged: dict[float, float] = {}
    for v, m in entries:
        if m:
            merged[float(v)] = merged.get(float(v), 0.0) + float(m)
    return InnerProductSpectrum(n, N, tuple(sorted(merged.items(), reverse=True)))


def sum_of_distances(spec: InnerProductSpectrum) -> float:
    """tau = N sum_j m_j sqrt(2(1 - s_j)), over ordered pairs."""
    return spec.N * math.fsum(m * math.sqrt(2.0 * (1.0 - v)) for v, m in spec.entries)


# -------------------------------------------------------------- equiangular


def equiangular_spectrum(M: int, s: float, n: int) -> InnerProductSpectrum:
    """The 2M unit vectors +-v_i spanned by M equiangular lines with angle arccos s."""
    if M < 2 or not 0.0 < s < 1.0:
        raise DomainError(f"need M >= 2 and 0 < s < 1, got M={M}, s={s}")
    return make_spectrum(n, 2 * M, [(s, M - 1), (-s, M - 1), (-1.0, 1)])


def de_caen_parameters(r: int) -> tuple[int, int, float]:
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    n = 3 * 2 ** (2 * r - 1) - 1
    N = 4 * (n + 1) ** 2 // 9
    return n, N, 1.0 / (2**r + 1)


def de_caen_spectrum(r: int) -> InnerProductSpectrum:
    n, N, s = de_caen_parameters(r)
    return equiangular_spectrum(N // 2, s, n)


# ------------------------------------------------- strongly regular graphs


@dataclass(frozen=True)
class SrgParameters:
    v: int
    k: int
    a: int
    c: int

    @property
    def delta(self) -> int:
        return (self.a - self.c) ** 2 + 4 * (self.k - self.c)

    def eigenvalues(self) -> tuple[float, float]:
        root = math.sqrt(self.delta)
        return (self.a - self.c + root) / 2, (self.a - self.c - root) / 2

    def dimensions(self) -> tuple[float, float]:
        v, k, a, c = self.v, self.k, self.a, self.c
        shift = ((v - 1) * (c - a) - 2 * k) / math.sqrt(self.delta)
        return (v - 1 + shift) / 2, (v - 1 - shift) / 2

    def validate(self) -> None:
        v, k, a, c = self.v, self.k, self.a, self.c
        if not (0 < k < v - 1):
            raise InfeasibleParametersError(f"valency {k} impossible for {v} vertices")
        if k * (k - a - 1) != (v - k - 1) * c:
            raise InfeasibleParametersError(f"k(k-a-1) != (v-k-1)c for {self}")
        if self.delta <= 0:
            raise InfeasibleParametersError(f"discriminant {self.delta} <= 0 for {self}")
        for d in self.dimensions():
            if d < 1 - 1e-6 or abs(d - round(d)) > 1e-6:
                raise InfeasibleParametersError(f"eigenspace dimension {d} not a positive integer for {self}")


def srg_embedding(p: SrgParameters, eigenspace: str = "first") -> InnerProductSpectrum:
    """Project the standard basis onto the r1 ("first") or r2 ("second") eigenspace."""
    p.validate()
    r1, r2 = p.eigenvalues()
    n1, n2 = (round(d) for d in p.dimensions())
    if eigenspace == "first":
        theta, dim = r1, n1
    elif eigenspace == "second":
        theta, dim = r2, n2
    else:
        raise DomainError(f"eigenspace must be 'first' or 'second', got {eigenspace!r}")
    far = p.v - 1 - p.k
    return make_spectrum(dim, p.v, [(theta / p.k, p.k), (-(1 + theta) / far, far)])


def srg_sum_formula(p: SrgParameters, eigenspace: str = "first") -> float:
    """N(sqrt(2k(k - theta)) + sqrt(2(N-1-k)(N+theta-k)))."""
    theta = p.eigenvalues()[0 if eigenspace == "first" else 1]
    N, k = p.v, p.k
    return N * (math.sqrt(2 * k * (k - theta)) + math.sqrt(2 * (N - 1 - k) * (N + theta - k)))


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = 2
    while p * p <= q:
        if q % p == 0:
            while q % p == 0:
                q //= p
            return q == 1
        p += 1
    return True


def _check_field(m: int, q: int, m_min: int = 2) -> None:
    if m < m_min:
        raise DomainError(f"m must be >= {m_min}, got {m}")
    if not is_prime_power(q):
        raise DomainError(f"q must be a prime power, got {q}")


def quadric_srg(m: int, q: int) -> SrgParameters:
    """Collinearity graph of points on a nondegenerate quadric in PG(2m, q)."""
    _check_field(m, q)
    v = (q ** (2 * m) - 1) // (q - 1)
    k = q * (q ** (2 * m - 2) - 1) // (q - 1)
    a = q * q * (q ** (2 * m - 4) - 1) // (q - 1) + q - 1
    c = (q ** (2 * m - 2) - 1) // (q - 1)
    p = SrgParameters(v, k, a, c)
    p.validate()
    return p


def hyperbolic_srg(m: int, q: int) -> SrgParameters:
    """Collinearity graph of points on a hyperbolic quadric in PG(2m-1, q)."""
    _check_field(m, q)
    v = (q ** (2 * m - 1) - 1) // (q - 1) + q ** (m - 1)
    k = q * (q ** (2 * m - 3) - 1) // (q - 1) + q ** (m - 1)
    a = k - q ** (2 * m - 3) - 1
    if k % q:
        raise InfeasibleParametersError(f"k={k} not divisible by q={q}")
    p = SrgParameters(v, k, a, k // q)
    p.validate()
    return p


# -------------------------------------------------------------- binary codes


@dataclass(frozen=True)
class BinaryDistanceDistribution:
    """Average number ``counts[w]`` of codewords at Hamming distance w from a codeword.

    Counts are floats, or Fractions when built from explicit codewords so that
    discrepancies stay exact.
    """

    n: int
    N: int
    counts: tuple[float, ...]

    def __post_init__(self):
        if len(self.counts) != self.n + 1:
            raise DistributionValidationError(f"need {self.n + 1} counts, got {len(self.counts)}")
        if any(a < 0 for a in self.counts):
            raise DistributionValidationError("negative distance count")
        if abs(self.counts[0] - 1) > _SUM_TOL:
            raise DistributionValidationError(f"A_0 = {self.counts[0]}, expected 1")
        total = math.fsum(self.counts)
        if abs(total - self.N) > _SUM_TOL * self.N:
            raise DistributionValidationError(f"distance counts sum to {total}, expected N = {self.N}")


def distribution_from_weights(n: int, N: int, weights: dict[float, float]) -> BinaryDistanceDistribution:
    """Build a distribution from ``{distance: count}``; non-integral distances are rejected."""
    total = math.fsum(weights.values())
    if abs(total - N) > _SUM_TOL * N:
        raise DistributionValidationError(f"distance counts sum to {total:g}, expected N = {N}")
    counts = [0.0] * (n + 1)
    for w, a in weights.items():
        if abs(w - round(w)) > 1e-9 or not 0 <= round(w) <= n:
            raise DistributionValidationError(f"distance {w} is not an integer in [0, {n}]")
        counts[round(w)] += a
    return BinaryDistanceDistribution(n, N, tuple(counts))


def sidelnikov(r: int) -> BinaryDistanceDistribution:
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    N = 2 ** (4 * r)
    n, rem = divmod(N - 1, 2**r + 1)
    w1, rem1 = divmod(2 ** (4 * r - 1) - 2 ** (2 * r - 1), 2**r + 1)
    w2, rem2 = divmod(2 ** (4 * r - 1) + 2 ** (3 * r - 1), 2**r + 1)
    assert rem == rem1 == rem2 == 0
    return distribution_from_weights(n, N, {0: 1, w1: N - n - 1, w2: n})


def sidelnikov_separation(r: int) -> float:
    d = sidelnikov(r)
    w1 = min(w for w, a in enumerate(d.counts) if w and a)
    return 1.0 - 2.0 * w1 / d.n


def kerdock(m: int) -> BinaryDistanceDistribution:
    if m < 2:
        raise DomainError(f"m must be >= 2, got {m}")
    n = 2 ** (2 * m)
    rt = 2**m
    side = n * (n // 2 - 1)
    return distribution_from_weights(
        n, n * n, {0: 1, n: 1, (n - rt) // 2: side, (n + rt) // 2: side, n // 2: 2 * (n - 1)}
    )


def dual_bch_printed(r: int) -> BinaryDistanceDistribution:
    """Weight distribution of the dual 2-error-correcting BCH code, as typeset.

    The even-r variant does not sum to 2^(2r) and raises
    DistributionValidationError.
    """
    if r < 3:
        raise DomainError(f"r must be >= 3, got {r}")
    n = 2**r - 1
    N = 2 ** (2 * r)
    h = (n + 1) / 2
    if r % 2:
        root = math.sqrt((n + 1) / 2)
        off = math.sqrt(n + 1) / (2 * math.sqrt(2))
        weights = {0: 1, h + root: n * ((n + 1) / 4 - off), h - root: n * ((n + 1) / 4 + off), h: n * (n + 3) / 2}
    else:
        s1 = math.sqrt(n + 1)
        s2 = math.sqrt((n + 1) / 2)
        weights = {
            0: 1,
            h - s1: 0.5 * n * s1 * (math.sqrt((n + 1) / 4) + 1),
            h + s1: 0.5 * n * s1 * (math.sqrt((n + 1) / 4) - 1),
            h - s2: n * s1 * (s1 + 1) / 3,
            h + s2: n * s1 * (s1 - 1) / 3,
            h: n * ((n + 1) / 4 + 1),
        }
    return distribution_from_weights(n, N, weights)


# primitive polynomials over GF(2), bit i = coefficient of x^i
_PRIMITIVE = {3: 0b1011, 4: 0b10011, 5: 0b100101, 6: 0b1000011, 7: 0b10000011, 8: 0b100011101, 9: 0b1000010001, 10: 0b10000001001}


def _trace_codewords(r: int) -> tuple[np.ndarray, np.ndarray]:
    """Bit matrices of x -> Tr(a x) and x -> Tr(b x^3) over GF(2^r)*, one row per a (resp. b)."""
    if r not in _PRIMITIVE:
        raise DomainError(f"enumeration supported for 3 <= r <= 10, got {r}")
    size = 2**r
    n = size - 1
    poly = _PRIMITIVE[r]
    exp = np.zeros(2 * n, dtype=np.int64)
    log = np.zeros(size, dtype=np.int64)
    x = 1
    for i in range(n):
        exp[i] = x
        log[x] = i
        x <<= 1
        if x & size:
            x ^= poly
    exp[n:] = exp[:n]
    # trace of alpha^j: sum of the conjugates alpha^(j 2^t)
    tr_exp = np.zeros(n, dtype=np.int64)
    for j in range(n):
        acc = 0
        for t in range(r):
            acc ^= exp[(j * 2**t) % n]
        tr_exp[j] = acc
    assert set(np.unique(tr_exp)) <= {0, 1}
    js = np.arange(n)
    # rows: a = 0, alpha^0, ..., alpha^(n-1); column x = alpha^j
    lin = np.zeros((size, n), dtype=np.int64)
    cub = np.zeros((size, n), dtype=np.int64)
    for e in range(n):
        lin[e + 1] = tr_exp[(e + js) % n]
        cub[e + 1] = tr_exp[(e + 3 * js) % n]
    return lin, cub


def dual_bch_enumerated(r: int) -> BinaryDistanceDistribution:
    """Weight distribution of {(Tr(a x + b x^3))_x : a, b in GF(2^r)} by enumeration."""
    lin, cub = _trace_codewords(r)
    n = 2**r - 1
    wl = lin.sum(axis=1)
    wc = cub.sum(axis=1)
    # |u xor v| = |u| + |v| - 2 u.v
    weights = wl[:, None] + wc[None, :] - 2 * (lin @ cub.T)
    hist = np.bincount(weights.ravel(), minlength=n + 1)
    N = int(hist.sum())
    if N != 2 ** (2 * r) or hist[0] != 1:
        raise DistributionValidationError(f"enumeration produced {N} words with {hist[0]} zero words")
    return BinaryDistanceDistribution(n, N, tuple(float(h) for h in hist))


def dual_bch(r: int) -> BinaryDistanceDistribution:
    """Odd r: the typeset distribution. Even r: enumerated, since the typeset one is invalid."""
    if r < 3:
        raise DomainError(f"r must be >= 3, got {r}")
    return dual_bch_printed(r) if r % 2 else dual_bch_enumerated(r)


def weight_two(n: int) -> BinaryDistanceDistribution:
    """All C(n, 2) words of Hamming weight 2."""
    if n < 3:
        raise DomainError(f"n must be >= 3, got {n}")
    return distribution_from_weights(n, math.comb(n, 2), {0: 1, 2: 2 * (n - 2), 4: math.comb(n - 2, 2)})


def distribution_from_codewords(codewords: Sequence[str] | Sequence[Sequence[int]]) -> BinaryDistanceDistribution:
    """Average distance distribution of an explicit code."""
    bits = codewords_to_array(codewords)
    N, n = bits.shape
    dist = (bits[:, None, :] != bits[None, :, :]).sum(axis=2)
    hist = np.bincount(dist.ravel(), minlength=n + 1)
    return BinaryDistanceDistribution(n, N, tuple(Fraction(int(h), N) for h in hist))


def codewords_to_array(codewords) -> np.ndarray:
    rows = [[int(ch) for ch in w] if isinstance(w, str) else list(w) for w in codewords]
    if not rows:
        raise DomainError("empty code")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise DomainError("codewords have different lengths")
    arr = np.asarray(rows, dtype=np.int64)
    if not np.isin(arr, (0, 1)).all():
        raise DomainError("codewords must be 0/1")
    return arr


def spherical_embedding(d: BinaryDistanceDistribution) -> InnerProductSpectrum:
    """Spectrum of the +-1/sqrt(n) image of a binary code."""
    return make_spectrum(d.n, d.N, [(1.0 - 2.0 * w / d.n, a) for w, a in enumerate(d.counts) if w and a])


def binary_sum_of_distances(d: BinaryDistanceDistribution) -> float:
    """(2N / sqrt n) sum_w A_w sqrt(w)."""
    return 2.0 * d.N / math.sqrt(d.n) * math.fsum(a * math.sqrt(w) for w, a in enumerate(d.counts))


def parse_codewords(text: str) -> list[str]:
    """Codewords from text: one 0/1 string per line, '#' comments, blank lines skipped.

    Lines must have equal length and codewords must be distinct.
    """
    words, seen = [], {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if set(line) - {"0", "1"}:
            raise DomainError(f"line {lineno}: not a 0/1 string: {line!r}")
        if words and len(line) != len(words[0]):
            raise DomainError(f"line {lineno}: length {len(line)} differs from {len(words[0])}")
        if line in seen:
            raise DomainError(f"line {lineno}: duplicate of line {seen[line]}")
        seen[line] = lineno
        words.append(line)
    if not words:
        raise DomainError("no codewords found")
    return words
