import itertools
import math

import numpy as np
import pytest

from sumdist.bounds import sandwich, ulb_closed, uub_pipeline
from sumdist.errors import DistributionValidationError, DomainError, InfeasibleParametersError
from sumdist.families import (
    BinaryDistanceDistribution,
    InnerProductSpectrum,
    SrgParameters,
    binary_sum_of_distances,
    de_caen_parameters,
    de_caen_spectrum,
    distribution_from_codewords,
    distribution_from_weights,
    dual_bch,
    dual_bch_enumerated,
    dual_bch_printed,
    equiangular_spectrum,
    hyperbolic_srg,
    is_prime_power,
    kerdock,
    make_spectrum,
    parse_codewords,
    quadric_srg,
    sidelnikov,
    sidelnikov_separation,
    spherical_embedding,
    srg_embedding,
    srg_sum_formula,
    sum_of_distances,
    weight_two,
)

SQRT2 = math.sqrt(2)


def test_spectrum_validation():
    with pytest.raises(DistributionValidationError):
        InnerProductSpectrum(3, 4, ((1.0, 3.0),))
    with pytest.raises(DistributionValidationError):
        InnerProductSpectrum(3, 4, ((0.1, 1.0), (0.1, 2.0)))
    with pytest.raises(DistributionValidationError):
        InnerProductSpectrum(3, 4, ((0.1, 2.0),))
    spec = make_spectrum(3, 4, [(-1 / 3, 1), (-1 / 3, 2)])
    assert spec.entries == ((-1 / 3, 3.0),)
    assert spec.s == -1 / 3


def test_sum_of_distances_simplex_and_cross():
    for n in (2, 5, 30):
        spec = make_spectrum(n, n + 1, [(-1 / n, n)])
        assert sum_of_distances(spec) == pytest.approx((n + 1) * n * math.sqrt(2 * (n + 1) / n), rel=1e-14)
        spec = make_spectrum(n, 2 * n, [(0.0, 2 * n - 2), (-1.0, 1)])
        assert sum_of_distances(spec) == pytest.approx(4 * n + 4 * SQRT2 * n * (n - 1), rel=1e-14)


def test_equiangular():
    spec = equiangular_spectrum(2, 1 / 3, 3)
    assert spec.N == 4
    expected = 4 * (math.sqrt(4 / 3) + math.sqrt(8 / 3) + 2)
    assert sum_of_distances(spec) == pytest.approx(expected, rel=1e-14)
    with pytest.raises(DomainError):
        equiangular_spectrum(1, 0.2, 3)
    with pytest.raises(DomainError):
        equiangular_spectrum(5, 1.0, 3)


def test_de_caen():
    assert de_caen_parameters(3) == (95, 4096, 1 / 9)
    assert de_caen_parameters(4) == (383, 65536, 1 / 17)
    assert de_caen_parameters(1) == (5, 16, 1 / 3)
    assert sum_of_distances(de_caen_spectrum(3)) == pytest.approx(2.368643e7, rel=5e-6)
    assert sum_of_distances(de_caen_spectrum(4)) == pytest.approx(6.071317e9, rel=5e-6)
    # r = 7: N ~ 2.7e8 multiplicities, checked against the closed form in exact rationals
    n, N, s = de_caen_parameters(7)
    M = N // 2
    expected = N * ((M - 1) * (math.sqrt(2 - 2 * s) + math.sqrt(2 + 2 * s)) + 2)
    assert sum_of_distances(de_caen_spectrum(7)) == pytest.approx(expected, rel=1e-12)


def test_equiangular_growth_limit():
    # M = 2(n-1) lines at angle arccos(1/3): tau/N^2 -> (1 + sqrt2)/sqrt3
    vals = []
    for n in (10, 100, 10**4):
        M = 2 * (n - 1)
        vals.append(sum_of_distances(equiangular_spectrum(M, 1 / 3, n)) / (2 * M) ** 2)
    limit = (1 + SQRT2) / math.sqrt(3)
    assert abs(vals[-1] - limit) < abs(vals[0] - limit)
    assert vals[-1] == pytest.approx(limit, rel=1e-4)


def test_srg_parameters():
    p = SrgParameters(10, 3, 0, 1)
    assert p.eigenvalues() == pytest.approx((1.0, -2.0))
    assert p.dimensions() == pytest.approx((5.0, 4.0))
    with pytest.raises(InfeasibleParametersError):
        SrgParameters(10, 3, 1, 1).validate()
    with pytest.raises(InfeasibleParametersError):
        SrgParameters(10, 9, 8, 0).validate()


def test_petersen_embedding():
    p = SrgParameters(10, 3, 0, 1)
    spec = srg_embedding(p, "first")
    assert spec.n == 5
    assert dict(spec.entries) == pytest.approx({1 / 3: 3.0, -1 / 3: 6.0})
    tau = 10 * (math.sqrt(12) + math.sqrt(96))
    assert sum_of_distances(spec) == pytest.approx(10 * (3 * math.sqrt(4 / 3) + 6 * math.sqrt(8 / 3)), rel=1e-14)
    assert sum_of_distances(spec) == pytest.approx(srg_sum_formula(p), rel=1e-12)
    assert sum_of_distances(spec) == pytest.approx(tau, rel=1e-14)
    assert tau == pytest.approx(132.6206, abs=1e-4)
    second = srg_embedding(p, "second")
    assert second.n == 4
    assert sum_of_distances(second) == pytest.approx(srg_sum_formula(p, "second"), rel=1e-12)
    with pytest.raises(DomainError):
        srg_embedding(p, "third")


def test_quadric_and_hyperbolic_parameters():
    p = quadric_srg(2, 2)
    assert (p.v, p.k, p.a, p.c) == (15, 6, 1, 3)
    assert p.eigenvalues() == pytest.approx((1.0, -3.0))
    assert p.dimensions() == pytest.approx((9.0, 5.0))
    p = hyperbolic_srg(2, 2)
    assert (p.v, p.k, p.a, p.c) == (9, 4, 1, 2)
    for m in (2, 3, 4):
        for q in (2, 3, 4, 5, 7, 8, 9):
            r1, r2 = quadric_srg(m, q).eigenvalues()
            assert (r1, r2) == pytest.approx((q ** (m - 1) - 1, -(q ** (m - 1)) - 1))
    with pytest.raises(DomainError):
        quadric_srg(2, 6)
    with pytest.raises(DomainError):
        hyperbolic_srg(1, 2)


def test_is_prime_power():
    assert [q for q in range(1, 30) if is_prime_power(q)] == [
        2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29,
    ]


def test_frame_potential_tight():
    for m in (2, 3, 4):
        for q in (2, 3, 4):
            for p in (quadric_srg(m, q), hyperbolic_srg(m, q)):
                for eig in ("first", "second"):
                    spec = srg_embedding(p, eig)
                    assert spec.frame_potential() == pytest.approx(spec.N**2 / spec.n, rel=1e-9)


def test_distribution_validation():
    with pytest.raises(DistributionValidationError):
        BinaryDistanceDistribution(3, 4, (1, 2, 1))
    with pytest.raises(DistributionValidationError):
        BinaryDistanceDistribution(2, 4, (2, 1, 1))
    with pytest.raises(DistributionValidationError):
        BinaryDistanceDistribution(2, 4, (1, 4, -1))
    with pytest.raises(DistributionValidationError):
        distribution_from_weights(4, 4, {0: 1, 2.5: 3})
    with pytest.raises(DistributionValidationError):
        distribution_from_weights(4, 4, {0: 1, 2: 2})


def test_sidelnikov():
    d = sidelnikov(1)
    assert (d.n, d.N) == (5, 16)
    assert d.counts == (1, 0, 10, 0, 5, 0)
    for r in range(1, 6):
        d = sidelnikov(r)
        assert sum(int(a) for a in d.counts) == 2 ** (4 * r)
    assert sidelnikov_separation(1) == pytest.approx(0.2)
    assert sum_of_distances(spherical_embedding(sidelnikov(2))) == pytest.approx(92334.5230, rel=5e-9)
    assert sum_of_distances(spherical_embedding(sidelnikov(1))) == pytest.approx(345.4941208, rel=5e-10)


def test_kerdock():
    d = kerdock(2)
    assert (d.n, d.N) == (16, 256)
    assert d.counts[0] == d.counts[16] == 1
    assert d.counts[6] == d.counts[10] == 112
    assert d.counts[8] == 30
    assert sum(d.counts) == 256


def test_weight_two():
    d = weight_two(4)
    assert d.N == 6 and d.counts[2] == 4 and d.counts[4] == 1
    words = ["".join("1" if i in pair else "0" for i in range(7)) for pair in itertools.combinations(range(7), 2)]
    assert distribution_from_codewords(words).counts == pytest.approx(weight_two(7).counts)


def test_dual_bch_odd_matches_enumeration():
    for r in (3, 5, 7):
        printed = dual_bch_printed(r)
        enum = dual_bch_enumerated(r)
        assert printed.counts == pytest.approx(enum.counts)
        assert dual_bch(r).counts == printed.counts


def test_dual_bch_even():
    with pytest.raises(DistributionValidationError, match="356"):
        dual_bch_printed(4)
    d = dual_bch(4)
    assert {w: int(a) for w, a in enumerate(d.counts) if a} == {0: 1, 4: 15, 6: 100, 8: 75, 10: 60, 12: 5}
    d = dual_bch(6)
    assert {w: int(a) for w, a in enumerate(d.counts) if a} == {
        0: 1, 24: 210, 28: 1512, 32: 1071, 36: 1176, 40: 126,
    }
    with pytest.raises(DomainError):
        dual_bch(2)


def test_dual_bch_linear_check():
    # enumeration yields a linear code: weights equal distances, so A_w must be integers
    for r in (4, 6, 8):
        d = dual_bch_enumerated(r)
        assert all(float(a).is_integer() for a in d.counts)
        assert sum(d.counts) == 2 ** (2 * r)


def test_spherical_embedding_matches_binary_formula():
    for d in (sidelnikov(2), kerdock(2), dual_bch(5), weight_two(9)):
        spec = spherical_embedding(d)
        assert sum_of_distances(spec) == pytest.approx(binary_sum_of_distances(d), rel=1e-13)


def test_full_cube_embedding_direct():
    for n in (3, 6, 10):
        d = distribution_from_weights(n, 2**n, {w: math.comb(n, w) for w in range(n + 1)})
        bits = np.array(list(itertools.product((0, 1), repeat=n)), dtype=float)
        pts = (1 - 2 * bits) / math.sqrt(n)
        diff = pts[:, None, :] - pts[None, :, :]
        direct = math.fsum(np.sqrt((diff**2).sum(axis=2)).ravel())
        assert sum_of_distances(spherical_embedding(d)) == pytest.approx(direct, rel=1e-12)


def test_family_sandwich(quiet_range):
    for r in (1, 2, 3):
        d = sidelnikov(r)
        spec = spherical_embedding(d)
        tau = sum_of_distances(spec)
        assert uub_pipeline(d.n, d.N, spec.s) <= tau * (1 + 1e-12)
        assert tau <= ulb_closed(d.n, d.N) * (1 + 1e-12)
    for r in (3, 4, 5):
        n, N, s = de_caen_parameters(r)
        tau = sum_of_distances(de_caen_spectrum(r))
        assert uub_pipeline(n, N, s) <= tau <= ulb_closed(n, N)
    for d in (kerdock(2), kerdock(3), dual_bch(4), dual_bch(5), weight_two(10)):
        spec = spherical_embedding(d)
        assert sandwich(d.n, d.N, spec.s).holds(sum_of_distances(spec))
    # s = 0.6 is far outside the degree-3 interval for n = 10 and the LP certificate fails
    sw = sandwich(10, 45, 0.6)
    assert sw.lower_source == "min-distance" and not sw.in_range


def test_kerdock_deficit_toward_limit():
    limit = 1 / (4 * SQRT2)
    deficits = []
    for m in range(2, 7):
        d = kerdock(m)
        tau = binary_sum_of_distances(d)
        deficits.append((SQRT2 * d.N**2 - tau) / d.N**1.5)
    gaps = [abs(x - limit) for x in deficits]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] / limit < 0.05


def test_parse_codewords():
    text = "# header\n0011\n\n0101  # trailing\n1111\n"
    assert parse_codewords(text) == ["0011", "0101", "1111"]
    with pytest.raises(DomainError, match="duplicate"):
        parse_codewords("01\n01\n")
    with pytest.raises(DomainError, match="length"):
        parse_codewords("01\n011\n")
    with pytest.raises(DomainError, match="0/1"):
        parse_codewords("012\n")
    with pytest.raises(DomainError):
        parse_codewords("# nothing\n\n")
