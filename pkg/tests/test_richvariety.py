import itertools
import random

import pytest
import sympy
from hypothesis import given, strategies as st

from furstenberg.corpus import field_of, random_point_set
from furstenberg.errors import PreconditionError, UsageError
from furstenberg.field import extend, field_make
from furstenberg.furstsets import q_example, q_example_generators
from furstenberg.polyring import Polynomial
from furstenberg.richvariety import (
    evaluated_minor,
    jm_is_zero,
    projective_points,
    rank_at,
    rich_hyperplanes,
    symbolic_minor,
    sz_mult_verify,
    t_h_matrix,
    theorem_nonzero_case_check,
)
from furstenberg.zerodim import extend_scalars, hd_algebra, power_algebra, rich_dim, vanishing_algebra


def test_q_example_dimension_against_sympy():
    x1, x2 = sympy.symbols("x1 x2")
    exprs = [sum(c * x1 ** m[0] * x2 ** m[1] for m, c in g.terms) for g in q_example_generators()]
    G = sympy.groebner(exprs, x1, x2, order="grlex", modulus=2)
    leads = [sympy.Poly(g, x1, x2).monoms(order="grlex")[0] for g in G.exprs]
    std = [m for m in itertools.product(range(30), repeat=2) if not any(
        m[0] >= a and m[1] >= b for a, b in leads)]
    Q = q_example()
    assert Q.dim == len(std) == 27


def test_q_example_claims():
    Q = q_example()
    # every F_2 line is rich for m = 10
    assert all(rich_dim(Q, [Polynomial.linear_form(Q.field, h)]) >= 10 for h in projective_points(Q.field, 2))
    res = jm_is_zero(Q, 10)
    assert not res.is_zero and res.witness is not None
    Mx = t_h_matrix(Q)
    E = extend(Q.field, 21)
    assert rank_at(Mx, res.witness, E) >= Q.dim - 9
    Q4 = extend_scalars(Q, 2)
    # frozen: x1 + a x2 with a outside F_2 cuts Q down to dimension 3
    for a in (2, 3):
        assert rich_dim(Q4, [Polynomial.linear_form(Q4.field, [1, a])]) == 3
    assert sorted(rich_hyperplanes(Q, 10)) == [[0, 1], [1, 0], [1, 1]]


def test_rank_duality_on_small_algebras():
    rng = random.Random(2)
    for _ in range(10):
        F = field_of(rng.choice((2, 3, 4)))
        R = vanishing_algebra(random_point_set(F, 2, rng.randint(1, 7), rng))
        Mx = t_h_matrix(R)
        for h in itertools.product(range(F.order), repeat=2):
            if any(h):
                assert R.dim - rank_at(Mx, h) == R.quotient_dim([Polynomial.linear_form(F, list(h))])


def _jm_zero_by_symbolic_minors(R, m):
    Mx = t_h_matrix(R)
    size = R.dim - m + 1
    for rows in itertools.combinations(range(R.dim), size):
        for cols in itertools.combinations(range(R.dim), size):
            if symbolic_minor(Mx, rows, cols):
                return False
    return True


def test_jm_matches_symbolic_minors():
    rng = random.Random(4)
    cases = [power_algebra(field_make(2), 2, 2), power_algebra(field_make(3), 2, 2)]
    for _ in range(6):
        F = field_of(rng.choice((2, 3)))
        cases.append(hd_algebra(vanishing_algebra(random_point_set(F, 2, rng.randint(2, 4), rng))))
    for R in cases:
        for m in range(1, R.dim + 1):
            assert jm_is_zero(R, m, seed=m).is_zero == _jm_zero_by_symbolic_minors(R, m)


def test_symbolic_minor_evaluates_consistently():
    R = hd_algebra(vanishing_algebra(random_point_set(field_make(3), 2, 4, random.Random(9))))
    Mx = t_h_matrix(R)
    rows, cols = (0, 1, 2), (1, 2, 3)
    f = symbolic_minor(Mx, rows, cols)
    for h in itertools.product(range(3), repeat=2):
        assert f.evaluate_code(h) == evaluated_minor(Mx, rows, cols, h)


def test_jm_error_bound_and_determinism():
    R = power_algebra(field_make(2), 3, 3)
    a, b = jm_is_zero(R, 3, seed=5), jm_is_zero(R, 3, seed=5)
    assert a.to_json() == b.to_json()
    assert a.is_zero and a.error_bound < 2.0 ** -40
    # no minors of size dim + 1 exist, so J_0 is the zero ideal
    assert jm_is_zero(R, 0).is_zero
    with pytest.raises(UsageError):
        jm_is_zero(R, R.dim + 1)


@given(st.sampled_from([2, 3, 4]).flatmap(lambda q: st.tuples(
    st.just(q),
    st.lists(st.tuples(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(1, q - 1)),
             min_size=1, max_size=5),
    st.sets(st.integers(0, q - 1), min_size=1))))
def test_schwartz_zippel_with_multiplicity(args):
    q, terms, U = args
    F = field_of(q)
    f = Polynomial(F, 2, terms)
    if f:
        assert sz_mult_verify(f, sorted(U))["holds"]


def test_nonzero_case_on_q_example():
    rep = theorem_nonzero_case_check(q_example(), 10, 10)
    assert rep["status"] == "checked"
    assert (rep["lhs"], rep["rhs"], rep["holds"]) == (27, 2, True)
    assert all(c["richness"] == 10 for c in rep["certificates"])


def test_nonzero_case_preconditions():
    R = power_algebra(field_make(2), 2, 3)
    rep = theorem_nonzero_case_check(R, 3, 2)
    assert rep["status"] == "precondition_failed"
    with pytest.raises(PreconditionError):
        theorem_nonzero_case_check(vanishing_algebra(random_point_set(field_make(3), 2, 4, random.Random(0))), 1, 1)


def test_projective_points_count():
    for q, n in ((2, 2), (3, 3), (4, 2)):
        pts = projective_points(field_of(q), n)
        assert len(pts) == (q ** n - 1) // (q - 1)
