from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from fpoly.exact_lp import (
    CyclingError, Infeasible, LinearProgram, Optimal, Unbounded, check_certificate, solve,
)
from fpoly.gallery import example3_graph
from fpoly.matching import enumerate_all

F = Fraction


def beale():
    return LinearProgram.build(
        [F(-3, 4), 20, F(-1, 2), 6],
        [([F(1, 4), -8, -1, 9], "<=", 0),
         ([F(1, 2), -12, F(-1, 2), 3], "<=", 0),
         ([0, 0, 1, 0], "<=", 1)])


def test_minimize_single_bound():
    lp = LinearProgram.build([1], [([1], ">=", F(1, 3))])
    out = solve(lp)
    assert out == Optimal(F(1, 3), (F(1, 3),), out.dual)
    assert check_certificate(lp, out)


def test_wrong_optimum_rejected():
    lp = LinearProgram.build([1], [([1], ">=", F(1, 3))])
    assert not check_certificate(lp, Optimal(F(1, 2), (F(1, 2),), (F(1),)))
    assert not check_certificate(lp, Optimal(F(1, 2), (F(1, 2),), None))
    # dual alone cannot vouch for a wrong point
    assert not check_certificate(lp, Optimal(F(1, 2), (F(1, 2),), (F(1, 2),)))


def test_infeasible_with_farkas():
    lp = LinearProgram.build([0], [([1], "<=", 0), ([1], ">=", 1)])
    out = solve(lp)
    assert isinstance(out, Infeasible)
    assert check_certificate(lp, out)
    assert not check_certificate(lp, Infeasible((F(0), F(0))))


def test_unbounded_ray():
    lp = LinearProgram.build([-1, 0], [([1, -1], "<=", 1)])
    out = solve(lp)
    assert isinstance(out, Unbounded)
    assert check_certificate(lp, out)


def test_maximize_and_free_variables():
    lp = LinearProgram.build([1, 1], [([1, 1], "<=", 4), ([1, -1], "=", 1)],
                             direction="max", lower_bounds=[None, None])
    out = solve(lp)
    assert out.value == 4 and out.point == (F(5, 2), F(3, 2))
    assert check_certificate(lp, out)


def test_shifted_lower_bounds():
    lp = LinearProgram.build([2, 3], [([1, 1], ">=", 1)], lower_bounds=[F(1, 2), -1])
    out = solve(lp)
    # x2 at its bound -1 forces x1 >= 2
    assert out.value == 1 and out.point == (F(2), F(-1))
    assert check_certificate(lp, out)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        LinearProgram.build([1, 2], [([1], "<=", 1)])
    lp = LinearProgram.build([1], [([1], ">=", 0)])
    with pytest.raises(ValueError):
        check_certificate(lp, Optimal(F(0), (F(0), F(0)), (F(0),)))


def test_beale_cycles_without_anticycling_and_terminates_with_bland():
    with pytest.raises(CyclingError):
        solve(beale(), rule="dantzig")
    out = solve(beale())
    assert out.value == F(-5, 4)
    assert check_certificate(beale(), out)


def test_example3_colouring_lp_direct():
    g = example3_graph(1)
    cols = [M for M in enumerate_all(g) if M.edges]
    lp = LinearProgram.build(
        [1] * len(cols),
        [([1 if e in M.edges else 0 for M in cols], "=", 1) for e in range(g.edge_count)])
    out = solve(lp)
    assert out.value == F(5, 3)
    assert check_certificate(lp, out)


def test_deterministic():
    lp = beale()
    assert solve(lp) == solve(lp)


def test_redundant_equalities():
    lp = LinearProgram.build([1, 2], [([1, 1], "=", 2), ([2, 2], "=", 4), ([1, 0], "<=", 5)])
    out = solve(lp)
    assert out.value == 2 and check_certificate(lp, out)


small = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@st.composite
def random_lps(draw):
    n = draw(st.integers(1, 4))
    m = draw(st.integers(1, 4))
    rows = [(draw(st.lists(small, min_size=n, max_size=n)),
             draw(st.sampled_from(["<=", ">=", "="])), draw(small)) for _ in range(m)]
    obj = draw(st.lists(small, min_size=n, max_size=n))
    return LinearProgram.build(obj, rows, direction=draw(st.sampled_from(["min", "max"])))


@settings(max_examples=300, deadline=None)
@given(random_lps())
def test_random_lps_certified_and_match_scipy(lp):
    out = solve(lp)
    assert check_certificate(lp, out)
    sign = -1 if lp.direction == "max" else 1
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for r in lp.rows:
        coeffs = [float(a) for a in r.coefficients]
        if r.relation == "<=":
            A_ub.append(coeffs); b_ub.append(float(r.rhs))
        elif r.relation == ">=":
            A_ub.append([-a for a in coeffs]); b_ub.append(-float(r.rhs))
        else:
            A_eq.append(coeffs); b_eq.append(float(r.rhs))
    res = linprog(sign * np.array([float(c) for c in lp.objective]),
                  A_ub=A_ub or None, b_ub=b_ub or None, A_eq=A_eq or None, b_eq=b_eq or None,
                  bounds=[(0, None)] * lp.variable_count, method="highs")
    if isinstance(out, Optimal):
        assert res.status == 0
        assert abs(sign * res.fun - float(out.value)) < 1e-7
    elif isinstance(out, Infeasible):
        assert res.status == 2
    else:
        assert res.status == 3
