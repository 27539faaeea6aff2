"""Extreme rays of margin-constrained Bernoulli cones.

A class with margins p defines the cone {f >= 0 : H f = 0}, where row i of H
vanishes exactly on the vectors whose normalized i-th margin is p_i. Its
extreme rays, normalized to unit mass, are finitely many densities; every
member of the class is a convex combination of them. The same machinery with
pair-product rows characterizes the vectors with prescribed second-order
moments instead of margins.

Enumeration is the double description method run over exact integers:
start from the nonnegative orthant (unit rays), insert the hyperplanes one at
a time in ascending row order, combine adjacent rays across the hyperplane,
decide adjacency by an exact rank test on the tight constraints, and gcd-reduce
every ray to its primitive integer representative. No floats anywhere.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .frechet import Density, FrechetClass, PairMoments, subset_list
from .tensor import as_fraction

DIMENSION_CAP = 6


class DimensionCapError(ValueError):
    """Ray enumeration refused because m exceeds the configured cap."""


class EmptyConeError(ValueError):
    """The constraint cone contains no nonzero nonnegative vector."""


@dataclass(frozen=True)
class ConstraintMatrix:
    """Homogeneous equality constraints over the canonical support order.

    kind "margins": one row per coordinate, entry p_i at points with x_i = 0
    and -q_i at points with x_i = 1 (the odds form gamma_i (1 - x_i) - x_i
    scaled by q_i, so each row is that form times a positive scalar).

    kind "pair-moments": one row per pair (i, j), entry mu_ij at points with
    x_i x_j = 0 and -(1 - mu_ij) at points with x_i x_j = 1. The boundary
    values mu_ij = 0 and mu_ij = 1 degenerate to the direct constraints
    "no mass where x_i x_j = 1" and "no mass where x_i x_j = 0".
    """

    m: int
    kind: str
    rows: tuple[tuple[Fraction, ...], ...]
    labels: tuple[tuple[int, ...], ...]


def build_h(cls: FrechetClass) -> ConstraintMatrix:
    """Margin constraints of a class. At support point x, row i equals
    p_i - x_i."""
    m = cls.m
    rows = []
    for i in range(m):
        p_i = cls.p[i]
        rows.append(tuple(p_i - ((j >> i) & 1) for j in range(1 << m)))
    return ConstraintMatrix(m, "margins", tuple(rows), tuple((i + 1,) for i in range(m)))


def build_h2(m: int, mu2: PairMoments) -> ConstraintMatrix:
    """Pair-moment constraints. At support point x, the row for (i, j) equals
    mu_ij - x_i x_j; mu values must lie in [0, 1]."""
    if mu2.m != m:
        raise ValueError("pair-moment dimension does not match m")
    rows = []
    for (i, j), mu in zip(itertools.combinations(range(m), 2), mu2.values):
        mask = (1 << i) | (1 << j)
        rows.append(tuple(mu - (1 if (k & mask) == mask else 0) for k in range(1 << m)))
    return ConstraintMatrix(m, "pair-moments", tuple(rows), tuple((i, j) for i, j in subset_list(m, 2)))


@dataclass(frozen=True)
class RayMatrix:
    """Extreme rays of a constraint cone, one Density per column,
    columns sorted lexicographically by value."""

    m: int
    kind: str
    columns: tuple[Density, ...]

    @property
    def n_rays(self) -> int:
        return len(self.columns)

    def column_values(self) -> list[tuple[Fraction, ...]]:
        return [c.values for c in self.columns]


@dataclass(frozen=True)
class MomentMap:
    """Selected raw moments of every ray: rows are interaction subsets of one
    order, columns follow the ray matrix that produced the map."""

    m: int
    order: int
    labels: tuple[tuple[int, ...], ...]
    entries: tuple[tuple[Fraction, ...], ...]
    rays: RayMatrix


# ---------------------------------------------------------------------------
# double description over primitive integer vectors


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[tuple[int, ...]]:
    out = []
    for row in rows:
        denom = 1
        for v in row:
            denom = denom * v.denominator // gcd(denom, v.denominator)
        ints = [int(v * denom) for v in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        out.append(tuple(ints))
    return out


def _primitive(vec: list[int]) -> tuple[int, ...]:
    g = 0
    for v in vec:
        g = gcd(g, v)
    if g > 1:
        return tuple(v // g for v in vec)
    return tuple(vec)


def _int_rank(rows: list[list[int]]) -> int:
    """Rank of a small integer matrix by fraction-free elimination."""
    mat = [row[:] for row in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for col in range(cols):
        pivot = None
        for r in range(rank, len(mat)):
            if mat[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pv = mat[rank][col]
        for r in range(rank + 1, len(mat)):
            factor = mat[r][col]
            if factor:
                mat[r] = [pv * a - factor * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def _double_description(int_rows: list[tuple[int, ...]], n: int) -> list[tuple[int, ...]]:
    """Extreme rays of {f >= 0 : row . f = 0 for every row}, as primitive
    integer vectors. Rows are inserted in the order given."""
    rays: list[tuple[int, ...]] = []
    supports: list[int] = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        rays.append(tuple(e))
        supports.append(1 << j)

    processed: list[tuple[int, ...]] = []
    for row in int_rows:
        t = len(processed)
        pos: list[int] = []
        neg: list[int] = []
        keep_rays: list[tuple[int, ...]] = []
        keep_sup: list[int] = []
        values: list[int] = []
        for idx, ray in enumerate(rays):
            s = sum(a * b for a, b in zip(row, ray) if b)
            values.append(s)
            if s == 0:
                keep_rays.append(ray)
                keep_sup.append(supports[idx])
            elif s > 0:
                pos.append(idx)
            else:
                neg.append(idx)

        new_rays: dict[tuple[int, ...], int] = {}
        max_union = t + 2
        for ip in pos:
            sp = supports[ip]
            vp = values[ip]
            rp = rays[ip]
            for ineg in neg:
                union = sp | supports[ineg]
                width = union.bit_count()
                if width > max_union:
                    continue
                if t and not _adjacent(processed, union, width):
                    continue
                vn = -values[ineg]
                rn = rays[ineg]
                combo = _primitive([vp * b + vn * a for a, b in zip(rp, rn)])
                if combo not in new_rays:
                    mask = 0
                    for k, v in enumerate(combo):
                        if v:
                            mask |= 1 << k
                    new_rays[combo] = mask

        rays = keep_rays + list(new_rays.keys())
        supports = keep_sup + list(new_rays.values())
        processed.append(row)
        if not rays:
            break
    return rays


def _adjacent(processed: list[tuple[int, ...]], union: int, width: int) -> bool:
    # Two extreme rays of the current cone span a 2-face iff the constraints
    # tight at both (processed hyperplanes plus the shared zero coordinates)
    # have rank n - 2; eliminating the unit rows reduces that to the processed
    # rows restricted to the support union having rank (union size) - 2.
    cols = []
    u = union
    while u:
        low = u & -u
        cols.append(low.bit_length() - 1)
        u ^= low
    sub = [[row[c] for c in cols] for row in processed]
    return _int_rank(sub) == width - 2


def extreme_rays(matrix: ConstraintMatrix, m_cap: int = DIMENSION_CAP) -> RayMatrix:
    """Enumerate the extreme rays of {f >= 0 : matrix rows . f = 0} and
    normalize each to a unit-mass Density.

    Refuses m above the cap (default 6); raise the cap explicitly to run the
    larger benchmarks. Deterministic: insertion in stored row order, columns
    sorted lexicographically by value.
    """
    if matrix.m > m_cap:
        raise DimensionCapError(
            f"ray enumeration for m={matrix.m} exceeds the cap of {m_cap}; "
            "pass a larger m_cap to force it"
        )
    n = 1 << matrix.m
    int_rows = _integer_rows(matrix.rows)
    primitive = _double_description(int_rows, n)
    densities = []
    for vec in primitive:
        total = sum(vec)
        densities.append(Density(matrix.m, [Fraction(v, total) for v in vec]))
    densities.sort(key=lambda d: d.values)
    return RayMatrix(matrix.m, matrix.kind, tuple(densities))


def moment_map(rays: RayMatrix, order: int) -> MomentMap:
    """Raw moments of the given interaction order for every ray column."""
    if not 1 <= order <= rays.m:
        raise ValueError(f"moment order {order} outside 1..{rays.m}")
    subsets = list(itertools.combinations(range(rays.m), order))
    entries = []
    for subset in subsets:
        mask = 0
        for c in subset:
            mask |= 1 << c
        row = []
        for col in rays.columns:
            row.append(sum(v for j, v in enumerate(col.values) if (j & mask) == mask))
        entries.append(tuple(row))
    labels = tuple(tuple(c + 1 for c in subset) for subset in subsets)
    return MomentMap(rays.m, order, labels, tuple(entries), rays)


def margin_rays(cls: FrechetClass, m_cap: int = DIMENSION_CAP) -> RayMatrix:
    """Extreme ray densities of the class itself."""
    return extreme_rays(build_h(cls), m_cap=m_cap)


def pair_moment_rays(m: int, mu2: PairMoments, m_cap: int = DIMENSION_CAP) -> RayMatrix:
    """Extreme ray densities of the cone with prescribed pair moments.

    Raises EmptyConeError when only the origin satisfies the constraints,
    which happens for genuinely incompatible mu2 prescriptions."""
    rays = extreme_rays(build_h2(m, mu2), m_cap=m_cap)
    if rays.n_rays == 0:
        raise EmptyConeError(f"no nonzero f >= 0 attains the pair moments {mu2.values}")
    return rays
