"""Exact rational linear programming in equality standard form.

Solves min c.x subject to A x = b, x >= 0 with a two-phase tableau simplex.
Pivoting is Bland's rule throughout (lowest eligible index enters, lowest
basic index breaks ratio ties), which makes every run deterministic and
cycle-free. All arithmetic is Fraction; infeasibility comes back with a
rational Farkas certificate y (y.A >= 0 componentwise, y.b < 0) that is
re-verified in exact arithmetic before it is returned.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class LpResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: tuple[Fraction, ...] | None
    objective: Fraction | None
    certificate: tuple[Fraction, ...] | None
    pivots: int


class CertificateError(AssertionError):
    """Internal consistency failure: a Farkas certificate did not verify."""


def verify_farkas(
    rows: Sequence[Sequence[Fraction]],
    b: Sequence[Fraction],
    y: Sequence[Fraction],
) -> bool:
    """Check y.A >= 0 componentwise and y.b < 0, exactly."""
    ncols = len(rows[0]) if rows else 0
    for j in range(ncols):
        if sum(y[i] * rows[i][j] for i in range(len(rows))) < 0:
            return False
    return sum(yi * bi for yi, bi in zip(y, b)) < 0


def solve_lp(
    rows: Sequence[Sequence[Fraction]],
    b: Sequence[Fraction],
    c: Sequence[Fraction] | None = None,
) -> LpResult:
    """Two-phase exact simplex. c defaults to the zero objective
    (pure feasibility)."""
    nrows = len(rows)
    if nrows == 0:
        raise ValueError("need at least one constraint row")
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows) or len(b) != nrows:
        raise ValueError("ragged constraint system")
    cost = [Fraction(v) for v in (c if c is not None else [ZERO] * ncols)]
    if len(cost) != ncols:
        raise ValueError("objective length does not match columns")

    # Sign-adjust so the right-hand side is nonnegative; remember the flips
    # to map the certificate back to the caller's row orientation.
    flip = [(-ONE if b[i] < 0 else ONE) for i in range(nrows)]
    tab = []
    for i in range(nrows):
        s = flip[i]
        tab.append([s * Fraction(v) for v in rows[i]] + [ZERO] * nrows + [s * Fraction(b[i])])
    for i in range(nrows):
        tab[i][ncols + i] = ONE

    total = ncols + nrows  # artificials occupy columns ncols .. total-1
    basis = list(range(ncols, total))

    # Phase 1: minimize the artificial sum. Reduced costs start as
    # c1_j - sum of column j over the rows (artificial columns start basic).
    obj = [ZERO] * (total + 1)
    for j in range(ncols):
        obj[j] = -sum(tab[i][j] for i in range(nrows))
    obj[total] = -sum(tab[i][total] for i in range(nrows))

    pivots = 0
    pivots += _run_phase(tab, obj, basis, total, allowed=total)

    infeas = -obj[total]  # phase-1 optimum
    if infeas > 0:
        y = [ZERO] * nrows
        for i in range(nrows):
            # reduced cost of artificial i is 1 - y_i at optimum
            y[i] = (ONE - obj[ncols + i]) * flip[i]
        cert = tuple(-v for v in y)
        if not verify_farkas(rows, b, cert):
            raise CertificateError("phase-1 dual certificate failed exact verification")
        return LpResult("infeasible", None, None, cert, pivots)

    # Drive any leftover artificials out of the basis; a row where no real
    # column can pivot is a redundant constraint and is dropped.
    drop: list[int] = []
    for i in range(nrows):
        if basis[i] >= ncols:
            target = next((j for j in range(ncols) if tab[i][j] != 0), None)
            if target is None:
                drop.append(i)
            else:
                _pivot(tab, obj, basis, i, target)
                pivots += 1
    if drop:
        for i in reversed(drop):
            del tab[i], basis[i]

    # Phase 2 on the real objective, artificial columns frozen out.
    obj = cost[:] + [ZERO] * nrows + [ZERO]
    for i, bi in enumerate(basis):
        cb = obj[bi]
        if cb:
            row = tab[i]
            for j in range(total + 1):
                if row[j]:
                    obj[j] -= cb * row[j]
    status = _run_phase(tab, obj, basis, total, allowed=ncols, detect_unbounded=True)
    if status == "unbounded":
        return LpResult("unbounded", None, None, None, pivots)
    pivots += status

    x = [ZERO] * ncols
    for i, bi in enumerate(basis):
        if bi < ncols:
            x[bi] = tab[i][total]
    objective = sum(ci * xi for ci, xi in zip(cost, x) if xi)
    return LpResult("optimal", tuple(x), objective, None, pivots)


def _run_phase(tab, obj, basis, total, allowed, detect_unbounded=False):
    """Bland-rule pivoting until no reduced cost is negative. Returns the
    pivot count, or "unbounded" when asked to detect an unbounded column."""
    pivots = 0
    while True:
        enter = next((j for j in range(allowed) if obj[j] < 0), None)
        if enter is None:
            return pivots
        leave = None
        best = None
        for i in range(len(tab)):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][total] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            if detect_unbounded:
                return "unbounded"
            raise ArithmeticError("phase 1 cannot be unbounded")
        _pivot(tab, obj, basis, leave, enter)
        pivots += 1


def _pivot(tab, obj, basis, row, col):
    pr = tab[row]
    pv = pr[col]
    if pv != 1:
        inv = ONE / pv
        tab[row] = pr = [v * inv for v in pr]
    for r in tab:
        if r is pr:
            continue
        f = r[col]
        if f:
            for j, v in enumerate(pr):
                if v:
                    r[j] -= f * v
    f = obj[col]
    if f:
        for j, v in enumerate(pr):
            if v:
                obj[j] -= f * v
    basis[row] = col
