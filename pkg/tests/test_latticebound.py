import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from furstenberg.errors import UsageError
from furstenberg.latticebound import (
    D_formula,
    D_limit,
    LatticeSet,
    bep_check,
    bound_evaluators,
    d_raw,
    easy_bound,
    kakeya_bound,
    lattice_lower_bound_check,
    path,
    path_multiplicity_audit,
    path_stages,
    set_bound,
    solve_degree,
    upper_bound_example,
)


def test_bep_orientation():
    # weight moves from a lower index to a zero higher index
    assert bep_check(LatticeSet(2, [(0, 0), (0, 1)]))
    res = bep_check(LatticeSet(2, [(0, 0), (1, 0)]))
    assert not res and res.witness["missing"] == [0, 1]


def test_path_examples():
    assert path((2, 1, 0)) == [(2, 0, 1), (1, 1, 1), (0, 2, 1)]
    stages = path_stages((2, 0, 2, 0))
    assert [len(s) for s in stages] == [2, 0, 2]
    # two slice points sharing a PATH point
    shared = set(path((2, 0, 2, 0))) & set(path((0, 2, 2, 0)))
    assert (0, 2, 0, 2) in shared
    assert path_multiplicity_audit([(2, 0, 2, 0), (0, 2, 2, 0)]) == 2
    with pytest.raises(UsageError):
        path((1, 1))


@given(st.integers(2, 5).flatmap(lambda n: st.tuples(*[st.integers(0, 4)] * (n - 1)).map(lambda t: t + (0,))))
def test_path_size_is_weight(lam):
    pts = path(lam)
    assert len(pts) == len(set(pts)) == sum(lam)
    assert all(sum(p) == sum(lam) for p in pts)


@given(st.integers(2, 8), st.floats(1, 1e7))
def test_solve_degree_identity(n, m):
    d, dp, beta = solve_degree(n, m)
    assert math.comb(n - 1 + dp, n - 1) + beta * math.comb(n + dp - 1, n - 2) == pytest.approx(m, rel=1e-9)
    assert 0 <= beta < 1 + 1e-12
    assert dp <= d + 1e-9


@given(st.integers(2, 10), st.floats(1, 1e6))
def test_D_at_least_quarter(n, m):
    assert D_formula(n, m).value >= 0.25 - 1e-12


@pytest.mark.parametrize("n", range(2, 11))
def test_d_monotone_and_inverse_e(n):
    ms = [1.5 ** k for k in range(1, 60)]
    vals = [d_raw(n, m) for m in ms]
    assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
    thresh = (math.e ** 2 * n) ** (n - 1)
    assert d_raw(n, thresh) >= 1 / math.e


def test_D_limit_small_n():
    # measured convergence at m = 1e9 (frozen)
    assert D_limit(2) == 0.5
    assert abs(D_formula(3, 1e9).value - D_limit(3)) < 1e-4
    assert abs(D_formula(4, 1e9).value - D_limit(4)) == pytest.approx(4.99925e-4, rel=1e-3)
    assert abs(D_formula(5, 1e9).value - D_limit(5)) == pytest.approx(2.80928e-3, rel=1e-3)


def test_easy_bound_example():
    rep = easy_bound(3, 1, 3, 3)
    assert rep.value == pytest.approx(math.sqrt(6) * 3, abs=1e-12)
    assert rep.value == pytest.approx(7.3485, abs=1e-4)
    assert easy_bound(2, 1, 3, 2).flags


def test_other_bounds():
    assert kakeya_bound(3, 4).value == Fraction(64, 8)
    rep = set_bound(3, 1, 16, 1 / 16)
    assert rep.intermediates["levels"][0] == 16
    assert rep.value == math.ceil(math.ceil(16 ** 2 / 16) ** 1.5 / 16)
    up = upper_bound_example(2, 1, 5)
    assert up.intermediates["q_infinity_limit"] == pytest.approx(0.5)
    assert bound_evaluators("G", n=3, k=1, q=2).value == 6
    with pytest.raises(UsageError):
        bound_evaluators("nope")


def test_lattice_lower_bound_check_power_lattice():
    pts = [m for m in __import__("itertools").product(range(4), repeat=3) if sum(m) < 3]
    L = LatticeSet(3, pts)
    rep = lattice_lower_bound_check(L)
    assert rep["holds"] and rep["size"] == 10 and rep["slice_size"] == 6
    assert rep["weight_average"] == 4.0
