import itertools
import math
import random

import pytest
import sympy
from hypothesis import given, strategies as st

from furstenberg.corpus import field_of, random_point_set, random_polynomial
from furstenberg.errors import GuardError, NotFiniteDimensionalError, UsageError
from furstenberg.field import field_make
from furstenberg.polyring import Polynomial, parse_polynomial
from furstenberg.zerodim import (
    PointSet,
    QuotientAlgebra,
    extend_scalars,
    hd_algebra,
    initial_algebra,
    monomial_algebra,
    power_algebra,
    rich_dim,
    truncated_homogeneous_algebra,
    vanishing_algebra,
)

X = sympy.symbols("x1:4")


def sympy_leading_monomials(gens, n, p):
    exprs = [sum(c * sympy.prod([X[i] ** e for i, e in enumerate(m)]) for m, c in g.terms) for g in gens]
    G = sympy.groebner(exprs, *X[:n], order="grlex", modulus=p)
    return sorted(sympy.Poly(g, *X[:n]).monoms(order="grlex")[0] for g in G.exprs)


point_sets = st.sampled_from([2, 3, 5]).flatmap(
    lambda p: st.integers(1, 3).flatmap(
        lambda n: st.sets(st.tuples(*[st.integers(0, p - 1)] * n), min_size=1, max_size=10).map(
            lambda pts: PointSet(field_make(p), n, sorted(pts)))))


@given(point_sets)
def test_vanishing_ideal_is_a_groebner_basis_of_I_S(S):
    R = vanishing_algebra(S)
    assert R.dim == len(S)
    # every generator vanishes on S, and dim = |S| forces <gens> = I(S)
    for g in R.reducers.values():
        assert all(g.evaluate_code(a) == 0 for a in S)
    if S.field.is_prime_field:
        assert sympy_leading_monomials(R.reducers.values(), S.n, S.field.p) == sorted(R.leading_monomials)


@given(point_sets, st.data())
def test_normal_form_agrees_on_points(S, data):
    R = vanishing_algebra(S)
    rng = random.Random(data.draw(st.integers(0, 10 ** 6)))
    f = random_polynomial(S.field, S.n, 5, 6, rng)
    nf = R.normal_form(f)
    assert all(m in R.std_index for m in nf.monomials())
    for a in S:
        assert nf.evaluate_code(a) == f.evaluate_code(a)


@pytest.mark.parametrize("l", [2, 3])
def test_multiplicity_algebra_dimension(l):
    rng = random.Random(l)
    for _ in range(15):
        F = field_of(rng.choice((2, 3, 4, 5)))
        n = rng.randint(1, 3)
        S = random_point_set(F, n, rng.randint(1, 5), rng)
        R = vanishing_algebra(S, l)
        assert R.dim == len(S) * math.comb(l + n - 1, n)
        for g in R.reducers.values():
            assert all(g.multiplicity(a) >= l for a in S)


def test_tiny_oracles():
    F = field_make(2)
    S = PointSet(F, 2, [(0, 0), (1, 0), (0, 1), (1, 1)])
    R = vanishing_algebra(S)
    assert R.std == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert {lm: g.to_text() for lm, g in R.reducers.items()} == {
        (0, 2): "1*x2^2 + 1*x2^1", (2, 0): "1*x1^2 + 1*x1^1"}
    assert hd_algebra(R).is_homogeneous
    # a single point: quotient is the field itself
    assert vanishing_algebra(PointSet(F, 3, [(1, 0, 1)])).dim == 1


def test_point_set_validation_names_index():
    F = field_make(3)
    with pytest.raises(UsageError, match="point 2"):
        PointSet(F, 2, [(0, 0), (1, 1), (0, 0)])
    with pytest.raises(UsageError, match="point 0"):
        PointSet(F, 2, [(3, 0)])
    with pytest.raises(UsageError, match="point 1"):
        PointSet(F, 2, [(0, 0), (1,)])


def test_guard():
    F = field_make(5)
    S = PointSet(F, 3, list(itertools.product(range(5), repeat=3)))
    with pytest.raises(GuardError):
        vanishing_algebra(S, 6)


def test_quotient_dim_counts_points_on_variety():
    rng = random.Random(7)
    for _ in range(30):
        F = field_of(rng.choice((2, 3, 4)))
        n = rng.randint(1, 3)
        S = random_point_set(F, n, rng.randint(1, 10), rng)
        f = random_polynomial(F, n, 3, 3, rng)
        hits = sum(1 for a in S if f.evaluate_code(a) == 0)
        assert vanishing_algebra(S).quotient_dim([f]) == hits


def test_hd_ideal_rebuilt_from_scratch_has_same_std():
    rng = random.Random(11)
    for _ in range(20):
        F = field_of(rng.choice((2, 3, 5)))
        S = random_point_set(F, rng.randint(2, 3), rng.randint(2, 9), rng)
        R = vanishing_algebra(S)
        H = hd_algebra(R)
        rebuilt = truncated_homogeneous_algebra(list(H.reducers.values()))
        assert rebuilt.std == R.std
        assert initial_algebra(R).dim == R.dim


def test_truncated_homogeneous_algebra_against_sympy():
    F = field_make(3)
    gens = [parse_polynomial(t, F, 2) for t in ("x1^2 + x2^2", "x1*x2^2")]
    with pytest.raises(NotFiniteDimensionalError):
        truncated_homogeneous_algebra(gens[:1], cap=10)
    gens.append(parse_polynomial("x2^4", F, 2))
    R = truncated_homogeneous_algebra(gens)
    assert sorted(R.leading_monomials) == sympy_leading_monomials(gens, 2, 3)


def test_power_and_monomial_algebras():
    F = field_make(2)
    assert power_algebra(F, 3, 3).dim == math.comb(3 + 2, 3)
    assert monomial_algebra(F, 2, [(2, 0), (1, 1), (0, 3)]).dim == 4
    with pytest.raises(NotFiniteDimensionalError):
        monomial_algebra(F, 2, [(2, 0)])


def test_extend_scalars_and_rich_dim():
    F = field_make(2)
    S = PointSet(F, 2, [(0, 0), (1, 0), (1, 1)])
    R = vanishing_algebra(S)
    R4 = extend_scalars(R, 2)
    assert R4.field.order == 4 and R4.dim == 3
    x1 = Polynomial.variable(F, 2, 0)
    assert rich_dim(R, [x1]) == 1
    assert rich_dim(R, [x1 + Polynomial.constant(F, 2, 1)]) == 2


def test_json_round_trip():
    R = vanishing_algebra(PointSet(field_make(2, 2), 2, [(0, 1), (2, 3), (3, 3)]))
    assert QuotientAlgebra.from_json(R.to_json()).same_as(R)
