"""Attainable ranges of pairwise association in a margin-fixed class.

Two independent routes to the same quantities, kept separate on purpose so
they can be cross-checked exactly:

* ray route: row-wise minima and maxima of the pair-moment map of the ray
  matrix give the exact attainable range of every E[X_i X_j];
* closed-form route (bivariate only): the pointwise extremal CDFs
  max(F_1 + F_2 - 1, 0) and min(F_1, F_2) pin the two extreme densities, and
  with them the interaction-coefficient and correlation ranges, split by
  whether q_1 + q_2 exceeds 1.

Also here: the attainable range of each margin when all pair moments are
prescribed instead (the transposed problem over the pair-moment cone).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cone import (
    DIMENSION_CAP,
    MomentMap,
    RayMatrix,
    build_h2,
    extreme_rays,
    margin_rays,
    moment_map,
)
from .frechet import (
    CorrelationSpec,
    Density,
    FrechetClass,
    PairMoments,
    exact_sqrt,
    pair_list,
)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class PairBounds:
    """Exact attainable moment range plus its correlation rendering for every
    coordinate pair of a class."""

    m: int
    pairs: tuple[tuple[int, int], ...]
    moment_lo: tuple[Fraction, ...]
    moment_hi: tuple[Fraction, ...]
    rho_lo: tuple[Fraction, ...]
    rho_hi: tuple[Fraction, ...]


def pair_bounds(cls: FrechetClass, rays: RayMatrix | None = None) -> PairBounds:
    """Row min/max of the pair-moment map over the class rays. The moment
    endpoints are exact rationals; the correlation endpoints go through the
    square-root policy."""
    if rays is None:
        rays = margin_rays(cls)
    amap = moment_map(rays, 2)
    lo, hi, rlo, rhi = [], [], [], []
    for (i, j), row in zip(amap.labels, amap.entries):
        mn, mx = min(row), max(row)
        lo.append(mn)
        hi.append(mx)
        scale = exact_sqrt(
            cls.p[i - 1] * (1 - cls.p[i - 1]) * cls.p[j - 1] * (1 - cls.p[j - 1])
        )
        centre = cls.p[i - 1] * cls.p[j - 1]
        rlo.append((mn - centre) / scale)
        rhi.append((mx - centre) / scale)
    return PairBounds(
        cls.m,
        tuple((i, j) for i, j in amap.labels),
        tuple(lo),
        tuple(hi),
        tuple(rlo),
        tuple(rhi),
    )


# ---------------------------------------------------------------------------
# bivariate closed forms


@dataclass(frozen=True)
class BivariateSummary:
    """Everything the two-margin case admits in closed form."""

    cls: FrechetClass
    lower: Density  # pointwise-minimal CDF member
    upper: Density  # pointwise-maximal CDF member
    moment_lo: Fraction
    moment_hi: Fraction
    theta_lo: Fraction
    theta_hi: Fraction
    rho_lo: Fraction
    rho_hi: Fraction


def bivariate_extreme_densities(cls: FrechetClass) -> tuple[Density, Density]:
    """Differenced extremal CDFs: max(F_1 + F_2 - 1, 0) and min(F_1, F_2).

    Support order (0,0), (1,0), (0,1), (1,1)."""
    if cls.m != 2:
        raise ValueError("extreme densities in closed form need exactly two margins")
    p1, p2 = cls.p
    q1, q2 = cls.q
    low = max(q1 + q2 - 1, ZERO)
    lower = Density(2, (low, q2 - low, q1 - low, low + 1 - q1 - q2))
    high = min(q1, q2)
    upper = Density(2, (high, q2 - high, q1 - high, high + 1 - q1 - q2))
    return lower, upper


def bivariate_summary(cls: FrechetClass) -> BivariateSummary:
    """Closed-form moment, interaction and correlation ranges, with the case
    split on q_1 + q_2 relative to 1 (labels swapped internally so that the
    larger q is second; all reported quantities are label-symmetric)."""
    if cls.m != 2:
        raise ValueError("closed-form ranges need exactly two margins")
    lower, upper = bivariate_extreme_densities(cls)
    p1, p2 = cls.p
    q1, q2 = cls.q
    if q2 < q1:
        p1, p2 = p2, p1
        q1, q2 = q2, q1
    denom = q1 * q2 * p1 * p2
    if q1 + q2 <= 1:
        theta_lo = -1 / (p1 * p2)
    else:
        theta_lo = (q1 + q2 - 1 - q1 * q2) / denom
    theta_hi = 1 / (p1 * q2)
    if q1 + q2 <= 1:
        rho_lo = -exact_sqrt(q1 * q2 / (p1 * p2))
    else:
        rho_lo = -exact_sqrt(p1 * p2 / (q1 * q2))
    rho_hi = exact_sqrt(p2 * q1 / (p1 * q2))
    return BivariateSummary(
        cls,
        lower,
        upper,
        moment_lo=max(cls.p[0] + cls.p[1] - 1, ZERO),
        moment_hi=min(cls.p[0], cls.p[1]),
        theta_lo=theta_lo,
        theta_hi=theta_hi,
        rho_lo=rho_lo,
        rho_hi=rho_hi,
    )


def bivariate_mixture(cls: FrechetClass, weight_lower: Fraction) -> Density:
    """The member lambda f_lower + (1 - lambda) f_upper."""
    lam = Fraction(weight_lower)
    if not 0 <= lam <= 1:
        raise ValueError(f"mixture weight {lam} outside [0, 1]")
    lower, upper = bivariate_extreme_densities(cls)
    vals = tuple(lam * a + (1 - lam) * b for a, b in zip(lower.values, upper.values))
    return Density(2, vals)


def bivariate_weight_of(cls: FrechetClass, f: Density) -> Fraction:
    """Recover the mixture weight of a bivariate member from its mass at the
    origin; exact, and unique because the two extreme densities differ there."""
    if f.m != 2:
        raise ValueError("weight recovery is bivariate only")
    lower, upper = bivariate_extreme_densities(cls)
    denom = lower.values[0] - upper.values[0]
    if denom == 0:
        raise ArithmeticError("degenerate class: extreme densities coincide at the origin")
    lam = (f.values[0] - upper.values[0]) / denom
    if not 0 <= lam <= 1:
        raise ValueError("density is not a mixture of the two extreme densities")
    return lam


# ---------------------------------------------------------------------------
# margins attainable under prescribed pair moments


@dataclass(frozen=True)
class MarginBounds:
    """Attainable range of every P(X_i = 1) across unit-mass vectors with the
    prescribed pair moments."""

    m: int
    lo: tuple[Fraction, ...]
    hi: tuple[Fraction, ...]
    rays: RayMatrix
    first_moment_map: MomentMap


def margin_bounds_given_mu2(
    m: int, mu2: PairMoments, m_cap: int = DIMENSION_CAP
) -> MarginBounds:
    """Row min/max of the first-order moment map over the pair-moment cone
    rays. Raises EmptyConeError when the prescription admits no mass at all."""
    from .cone import pair_moment_rays

    rays = pair_moment_rays(m, mu2, m_cap=m_cap)
    amap = moment_map(rays, 1)
    lo = tuple(min(row) for row in amap.entries)
    hi = tuple(max(row) for row in amap.entries)
    return MarginBounds(m, lo, hi, rays, amap)
