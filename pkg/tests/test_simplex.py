import random
from fractions import Fraction

import oracles
from bernray.simplex import solve_lp, verify_farkas

F = Fraction


def test_feasible_simple_system():
    # x1 + x2 = 1, x1 - x2 = 0 -> (1/2, 1/2)
    res = solve_lp([[F(1), F(1)], [F(1), F(-1)]], [F(1), F(0)])
    assert res.status == "optimal"
    assert res.x == (F(1, 2), F(1, 2))


def test_feasible_with_negative_rhs():
    # -x1 = -3 with x1 >= 0
    res = solve_lp([[F(-1), F(0)], [F(0), F(1)]], [F(-3), F(2)])
    assert res.status == "optimal"
    assert res.x == (F(3), F(2))


def test_objective_minimization():
    # minimize x3 over x1+x2+x3=1, all >= 0: any vertex with x3=0
    res = solve_lp([[F(1), F(1), F(1)]], [F(1)], c=[F(0), F(0), F(1)])
    assert res.status == "optimal"
    assert res.objective == 0
    assert res.x[2] == 0


def test_unbounded_detected():
    # minimize -x1 subject to x1 - x2 = 0: x1 can grow without bound
    res = solve_lp([[F(1), F(-1)]], [F(0)], c=[F(-1), F(0)])
    assert res.status == "unbounded"


def test_redundant_rows_ok():
    rows = [[F(1), F(1)], [F(2), F(2)]]
    res = solve_lp(rows, [F(1), F(2)])
    assert res.status == "optimal"
    assert sum(res.x) == 1


def test_infeasible_produces_verified_certificate():
    # x1 + x2 = 1 and x1 + x2 = 2 cannot both hold
    rows = [[F(1), F(1)], [F(1), F(1)]]
    b = [F(1), F(2)]
    res = solve_lp(rows, b)
    assert res.status == "infeasible"
    assert res.x is None
    y = res.certificate
    # y . rows >= 0 componentwise and y . b < 0: checked again here by hand
    for j in range(2):
        assert sum(y[i] * rows[i][j] for i in range(2)) >= 0
    assert sum(y[i] * b[i] for i in range(2)) < 0
    assert verify_farkas(rows, b, y)


def test_verify_farkas_rejects_bogus():
    rows = [[F(1), F(1)]]
    b = [F(1)]
    assert not verify_farkas(rows, b, [F(1)])  # y.b = 1, not negative
    assert not verify_farkas([[F(-1), F(1)]], [F(-1)], [F(1)])  # y.A has a negative entry


def test_matches_vertex_oracle_on_random_feasible():
    rng = random.Random(41)
    for _ in range(30):
        ncols = rng.randint(3, 6)
        nrows = rng.randint(1, min(3, ncols - 1))
        x0 = [F(rng.randint(0, 4)) for _ in range(ncols)]
        rows = [[F(rng.randint(-3, 3)) for _ in range(ncols)] for _ in range(nrows)]
        b = [sum(r[j] * x0[j] for j in range(ncols)) for r in rows]
        # bound the polytope so the vertex oracle is exhaustive
        rows.append([F(1)] * ncols)
        b.append(sum(x0))
        cost = [F(rng.randint(-5, 5)) for _ in range(ncols)]
        res = solve_lp(rows, b, c=cost)
        assert res.status == "optimal"
        oracle = oracles.lp_min_by_vertices(rows, b, cost)
        assert oracle is not None
        assert res.objective == oracle[0]


def test_certificates_on_random_infeasible():
    rng = random.Random(43)
    checked = 0
    while checked < 15:
        ncols = rng.randint(2, 5)
        nrows = rng.randint(2, 4)
        rows = [[F(rng.randint(-3, 3)) for _ in range(ncols)] for _ in range(nrows)]
        b = [F(rng.randint(-4, 4)) for _ in range(nrows)]
        res = solve_lp(rows, b)
        if res.status != "infeasible":
            continue
        assert verify_farkas(rows, b, res.certificate)
        checked += 1


def test_solution_satisfies_system_exactly():
    rng = random.Random(47)
    for _ in range(20):
        ncols = rng.randint(2, 6)
        x0 = [F(rng.randint(0, 3), rng.randint(1, 3)) for _ in range(ncols)]
        rows = [[F(rng.randint(-2, 3)) for _ in range(ncols)] for _ in range(2)]
        rows.append([F(1)] * ncols)
        b = [sum(r[j] * x0[j] for j in range(ncols)) for r in rows]
        res = solve_lp(rows, b)
        assert res.status == "optimal"
        for r, bv in zip(rows, b):
            assert sum(rv * xv for rv, xv in zip(r, res.x)) == bv
        assert all(v >= 0 for v in res.x)
