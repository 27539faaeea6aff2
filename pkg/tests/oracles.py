"""Independent oracles the tests check the library against.

Everything here deliberately avoids the library's own algorithms: vertex
enumeration by brute-force basis inspection instead of double description,
LP optima by scanning vertices, projection by grid descent in floats, and
moments by direct summation over support points.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import sqrt

ZERO = Fraction(0)
ONE = Fraction(1)


def solve_square(rows, rhs):
    """Exact solve of a square system; None if singular."""
    n = len(rows)
    aug = [[Fraction(v) for v in rows[i]] + [Fraction(rhs[i])] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = ONE / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def _row_reduce(rows, rhs):
    """RREF of [rows | rhs]. Returns (reduced_rows, reduced_rhs) with zero
    rows dropped, or None when the system is inconsistent."""
    nrows, ncols = len(rows), len(rows[0])
    aug = [[Fraction(v) for v in rows[i]] + [Fraction(rhs[i])] for i in range(nrows)]
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if aug[r][col] != 0), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        inv = ONE / aug[rank][col]
        aug[rank] = [v * inv for v in aug[rank]]
        for r in range(nrows):
            if r != rank and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[rank])]
        rank += 1
    for r in range(rank, nrows):
        if aug[r][ncols] != 0:
            return None
    return [row[:ncols] for row in aug[:rank]], [row[ncols] for row in aug[:rank]]


def bfs_vertices(rows, rhs):
    """All vertices of {x >= 0 : rows x = rhs} as exact tuples, by trying
    every column basis of the row-reduced system. Empty set when infeasible."""
    ncols = len(rows[0])
    reduced = _row_reduce(rows, rhs)
    if reduced is None:
        return set()
    rows, rhs = reduced
    nrows = len(rows)
    if nrows == 0:
        # only the trivial constraint 0 = 0 remains; the origin is the sole
        # vertex of {x >= 0}
        return {tuple([ZERO] * ncols)}
    found = set()
    for basis in itertools.combinations(range(ncols), nrows):
        sub = [[rows[i][c] for c in basis] for i in range(nrows)]
        sol = solve_square(sub, rhs)
        if sol is None or any(v < 0 for v in sol):
            continue
        full = [ZERO] * ncols
        for c, v in zip(basis, sol):
            full[c] = v
        found.add(tuple(full))
    return found


def lp_min_by_vertices(rows, rhs, cost):
    """Exact LP minimum over a bounded polytope by scanning its vertices.
    Returns (value, argmin vertex) or None when infeasible."""
    best = None
    arg = None
    for v in bfs_vertices(rows, rhs):
        val = sum(c * x for c, x in zip(cost, v))
        if best is None or val < best:
            best, arg = val, v
    if best is None:
        return None
    return best, arg


def class_polytope_rows(p):
    """Constraint rows of {f >= 0, margins p, unit mass} over the canonical
    support order, by direct indicator construction."""
    m = len(p)
    n = 1 << m
    rows = []
    for i in range(m):
        # margin row: sum over points with x_i = 1 equals p_i
        rows.append([ONE if (j >> i) & 1 else ZERO for j in range(n)])
    rows.append([ONE] * n)
    rhs = [Fraction(v) for v in p] + [ONE]
    return rows, rhs


def pair_polytope_rows(m, mu2):
    """Constraint rows of {f >= 0, pair moments mu2, unit mass}."""
    n = 1 << m
    rows = []
    rhs = []
    for (i, j), mu in zip(itertools.combinations(range(m), 2), mu2):
        mask = (1 << i) | (1 << j)
        rows.append([ONE if (k & mask) == mask else ZERO for k in range(n)])
        rhs.append(Fraction(mu))
    rows.append([ONE] * n)
    rhs.append(ONE)
    return rows, rhs


def direct_margins(values):
    """Margins by direct summation over support points."""
    n = len(values)
    m = n.bit_length() - 1
    return [sum(v for j, v in enumerate(values) if (j >> i) & 1) for i in range(m)]


def direct_pair_moments(values):
    """Pair moments by direct summation, lexicographic pair order."""
    n = len(values)
    m = n.bit_length() - 1
    out = []
    for i, j in itertools.combinations(range(m), 2):
        mask = (1 << i) | (1 << j)
        out.append(sum(v for k, v in enumerate(values) if (k & mask) == mask))
    return out


def grid_projection_distance(columns, weights, target, resolution=8, shrink_rounds=60):
    """Brute-force projection oracle over the column-weight simplex.

    Full composition grid at the given resolution seeds an incumbent; pairwise
    mass moves with geometrically shrinking step refine around it. Float
    arithmetic; accuracy well below 1e-7 for the smooth quadratics involved.
    Returns the Euclidean distance (in the weighted metric) of the best point.
    """
    ncols = len(columns)
    wf = [float(w) for w in weights]
    tf = [float(t) for t in target]
    cols = [[float(v) for v in col] for col in columns]

    def dist_sq(lam):
        total = 0.0
        for k in range(len(tf)):
            acc = 0.0
            for i in range(ncols):
                if lam[i]:
                    acc += cols[i][k] * lam[i]
            d = acc - tf[k]
            total += wf[k] * d * d
        return total

    best_lam = None
    best_val = None
    for comp in _compositions(resolution, ncols):
        lam = [c / resolution for c in comp]
        val = dist_sq(lam)
        if best_val is None or val < best_val:
            best_val, best_lam = val, lam

    step = 1.0 / resolution
    for _ in range(shrink_rounds):
        improved = True
        while improved:
            improved = False
            for i in range(ncols):
                if best_lam[i] < step - 1e-15:
                    continue
                for j in range(ncols):
                    if i == j:
                        continue
                    cand = list(best_lam)
                    cand[i] -= step
                    cand[j] += step
                    val = dist_sq(cand)
                    if val < best_val - 1e-18:
                        best_val, best_lam = val, cand
                        improved = True
        step *= 0.5
        if step < 1e-12:
            break
    return sqrt(best_val)


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def witness_bijections(m):
    """Candidate printed-row -> canonical-index bijections: an optional global
    complement composed with a coordinate permutation."""
    for complement in (True, False):
        for perm in itertools.permutations(range(m)):
            mapping = []
            for k in range(1 << m):
                bits = [(k >> i) & 1 for i in range(m)]
                if complement:
                    bits = [1 - b for b in bits]
                permuted = [0] * m
                for i in range(m):
                    permuted[perm[i]] = bits[i]
                idx = 0
                for i, bit in enumerate(permuted):
                    idx |= bit << i
                mapping.append(idx)
            yield complement, perm, mapping


def pair_order_candidates(m, targets):
    """Plausible readings of a printed pair-moment vector: subscripts written
    in lexicographic order, or attached in the moment operator's natural row
    order (colex: sorted by the larger coordinate first). The two coincide
    for m <= 3. Yields target vectors re-expressed in lexicographic order."""
    targets = list(targets)
    lex = list(itertools.combinations(range(1, m + 1), 2))
    colex = sorted(lex, key=lambda ij: (ij[1], ij[0]))
    candidates = [
        targets,
        [targets[colex.index(pair)] for pair in lex],
        [targets[lex.index(pair)] for pair in colex],
    ]
    seen = []
    for reordered in candidates:
        if reordered not in seen:
            seen.append(reordered)
            yield reordered


def witness_check(printed_values, p, mu2_target, tol=Fraction(5, 10**4)):
    """Does some global support bijection make the printed reference density
    hit the class margins and pair-moment targets within tol? Returns the
    first passing (complement, permutation) or None."""
    m = len(p)
    vals = [Fraction(v) for v in printed_values]
    if abs(sum(vals) - 1) > tol:
        return None
    p = [Fraction(v) for v in p]
    t = [Fraction(v) for v in mu2_target]
    for complement, perm, mapping in witness_bijections(m):
        w = [ZERO] * (1 << m)
        for k, v in enumerate(vals):
            w[mapping[k]] += v
        if any(abs(a - b) > tol for a, b in zip(direct_margins(w), p)):
            continue
        if any(abs(a - b) > tol for a, b in zip(direct_pair_moments(w), t)):
            continue
        return complement, perm
    return None
