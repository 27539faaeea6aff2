import random
from fractions import Fraction

import pytest

import oracles
from bernray import (
    FrechetClass,
    PairMoments,
    bivariate_extreme_densities,
    bivariate_mixture,
    bivariate_summary,
    bivariate_weight_of,
    margin_bounds_given_mu2,
    pair_bounds,
)
from conftest import random_class

F = Fraction
HALF = F(1, 2)


def test_bivariate_extremes_symmetric_half():
    cls = FrechetClass([HALF, HALF])
    lower, upper = bivariate_extreme_densities(cls)
    assert lower.values == (0, HALF, HALF, 0)
    assert upper.values == (HALF, 0, 0, HALF)


def test_bivariate_extremes_are_valid_members():
    rng = random.Random(53)
    for _ in range(25):
        cls = random_class(rng, 2)
        for f in bivariate_extreme_densities(cls):
            assert sum(f.values) == 1
            assert all(v >= 0 for v in f.values)
            assert oracles.direct_margins(list(f.values)) == list(cls.p)


def test_summary_symmetric_half():
    s = bivariate_summary(FrechetClass([HALF, HALF]))
    assert (s.moment_lo, s.moment_hi) == (0, HALF)
    assert (s.rho_lo, s.rho_hi) == (-1, 1)
    assert (s.theta_lo, s.theta_hi) == (-4, 4)


def test_summary_quarter_three_quarter():
    # q1 + q2 = 1 boundary case
    s = bivariate_summary(FrechetClass([F(1, 4), F(3, 4)]))
    assert s.moment_lo == 0
    assert s.moment_hi == F(1, 4)
    assert s.rho_lo == -1
    assert s.rho_hi == F(1, 3)


def test_summary_moment_range_equals_frechet_formulas():
    rng = random.Random(59)
    for _ in range(40):
        cls = random_class(rng, 2)
        s = bivariate_summary(cls)
        p1, p2 = cls.p
        assert s.moment_lo == max(p1 + p2 - 1, F(0))
        assert s.moment_hi == min(p1, p2)
        # extreme densities attain the endpoints
        lower, upper = bivariate_extreme_densities(cls)
        assert lower.values[3] == s.moment_lo
        assert upper.values[3] == s.moment_hi


def test_summary_is_label_symmetric():
    rng = random.Random(61)
    for _ in range(20):
        cls = random_class(rng, 2)
        swapped = FrechetClass([cls.p[1], cls.p[0]])
        a, b = bivariate_summary(cls), bivariate_summary(swapped)
        for name in ("moment_lo", "moment_hi", "theta_lo", "theta_hi", "rho_lo", "rho_hi"):
            assert getattr(a, name) == getattr(b, name), name


def test_pair_bounds_agree_with_bivariate_closed_form():
    rng = random.Random(67)
    for _ in range(15):
        cls = random_class(rng, 2)
        pb = pair_bounds(cls)
        s = bivariate_summary(cls)
        assert pb.moment_lo[0] == s.moment_lo
        assert pb.moment_hi[0] == s.moment_hi
        # moment endpoints are exact; correlation endpoints may differ by the
        # square-root approximation of two different radicands
        assert abs(pb.rho_lo[0] - s.rho_lo) < F(1, 10**45)
        assert abs(pb.rho_hi[0] - s.rho_hi) < F(1, 10**45)


def test_pair_bounds_m3_rows_match_marginalized_bivariate(skew3, skew3_rays):
    pb = pair_bounds(skew3, skew3_rays)
    for k, (i, j) in enumerate(pb.pairs):
        sub = FrechetClass([skew3.p[i - 1], skew3.p[j - 1]])
        s = bivariate_summary(sub)
        assert pb.moment_lo[k] == s.moment_lo
        assert pb.moment_hi[k] == s.moment_hi


def test_mixture_weight_round_trip():
    rng = random.Random(71)
    for _ in range(20):
        cls = random_class(rng, 2)
        lam = F(rng.randint(0, 10), 10)
        f = bivariate_mixture(cls, lam)
        assert bivariate_weight_of(cls, f) == lam


def test_mixture_weight_symmetric_independence_is_midpoint():
    # for p = (1/2, 1/2) the mixture segment passes through independence
    cls = FrechetClass([HALF, HALF])
    from bernray import Density

    assert bivariate_weight_of(cls, Density(2, [F(1, 4)] * 4)) == HALF


def test_mixture_weight_rejects_out_of_segment_origin_mass():
    cls = FrechetClass([HALF, HALF])
    from bernray import Density

    with pytest.raises(ValueError):
        bivariate_weight_of(cls, Density(2, [F(9, 10), F(0), F(0), F(1, 10)]))


def test_margin_bounds_given_mu2_m2():
    mb = margin_bounds_given_mu2(2, PairMoments(2, [F(1, 4)]))
    assert mb.lo == (F(1, 4), F(1, 4))
    assert mb.hi == (F(1), F(1))
    z = margin_bounds_given_mu2(2, PairMoments(2, [F(0)]))
    assert z.lo == (F(0), F(0))
    assert z.hi == (F(1), F(1))
    o = margin_bounds_given_mu2(2, PairMoments(2, [F(1)]))
    assert o.lo == (F(1), F(1))
    assert o.hi == (F(1), F(1))


def test_margin_bounds_cover_direct_constructions():
    # any explicit density with the target pair moments must have margins
    # inside the reported range
    rng = random.Random(73)
    for _ in range(10):
        m = rng.choice([2, 3])
        weights = [F(rng.randint(0, 3)) for _ in range(1 << m)]
        weights[rng.randrange(1 << m)] += 1
        total = sum(weights)
        f = [w / total for w in weights]
        mu2 = PairMoments(m, oracles.direct_pair_moments(f))
        mb = margin_bounds_given_mu2(m, mu2)
        margins = oracles.direct_margins(f)
        for i in range(m):
            assert mb.lo[i] <= margins[i] <= mb.hi[i]
