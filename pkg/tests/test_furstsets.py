import itertools
import math
import random

import pytest
import sympy

from furstenberg.corpus import field_of, random_point_set
from furstenberg.errors import GuardError, UsageError
from furstenberg.furstsets import (
    Flat,
    build_examples,
    enumerate_directions,
    full_grid,
    furstenberg_m,
    gaussian_binomial,
    hom_furstenberg_m,
    hyper_furstenberg_check_set,
    hyper_hom_check,
    min_furstenberg_search,
    r_n_example,
    r_n_generators,
)
from furstenberg.latticebound import easy_bound
from furstenberg.zerodim import PointSet, hd_algebra, power_algebra, vanishing_algebra


def naive_m(S, k):
    """All affine k-flats from raw spanning tuples, grouped by their linear part."""
    F, n = S.field, S.n
    q = F.order
    vectors = list(itertools.product(range(q), repeat=n))
    directions = {}
    for basis in itertools.combinations(vectors, k):
        span = set()
        for coeffs in itertools.product(range(q), repeat=k):
            v = [0] * n
            for c, b in zip(coeffs, basis):
                v = [F.add(x, F.mul(c, y)) for x, y in zip(v, b)]
            span.add(tuple(v))
        if len(span) == q ** k:
            directions[frozenset(span)] = span
    best = None
    for span in directions.values():
        top = 0
        for a in vectors:
            flat = {tuple(F.add(x, y) for x, y in zip(a, v)) for v in span}
            top = max(top, sum(1 for p in S if p in flat))
        best = top if best is None else min(best, top)
    return best


def test_furstenberg_m_matches_naive_enumeration():
    rng = random.Random(0)
    for _ in range(25):
        q = rng.choice((2, 3, 4))
        n = rng.choice((2, 3)) if q < 4 else 2
        S = random_point_set(field_of(q), n, rng.randint(1, q ** n), rng)
        for k in range(1, n):
            assert furstenberg_m(S, k) == naive_m(S, k)


@pytest.mark.parametrize("q,n,k", [(2, 3, 1), (2, 3, 2), (3, 3, 1), (4, 2, 1), (2, 4, 2), (3, 2, 2)])
def test_direction_count_is_gaussian_binomial(q, n, k):
    dirs = enumerate_directions(field_of(q), n, k)
    assert len(dirs) == len(set(dirs)) == gaussian_binomial(n, k, q)


def test_flat_equations_cut_out_points():
    F = field_of(3)
    flat = Flat(F, [[1, 2, 0]], [1, 1, 1])
    pts = set(flat.points())
    assert len(pts) == 3
    eqs = flat.equations()
    for a in itertools.product(range(3), repeat=3):
        assert (a in pts) == all(e.evaluate_code(a) == 0 for e in eqs) == (a in flat)
    assert Flat(F, [[2, 1, 0]], [2, 0, 1]) == flat
    assert Flat(F, [[2, 1, 0]], [2, 2, 1]) != flat
    with pytest.raises(UsageError):
        Flat(F, [[1, 0, 0], [2, 0, 0]], [0, 0, 0])


def test_corollary_chains():
    rng = random.Random(3)
    for _ in range(15):
        q = rng.choice((2, 3))
        n = rng.choice((2, 3))
        S = random_point_set(field_of(q), n, rng.randint(2, 9), rng)
        for k in range(1, n):
            m = furstenberg_m(S, k)
            assert hom_furstenberg_m(hd_algebra(vanishing_algebra(S)), k) >= m
            if m >= 1:
                assert easy_bound(n, k, m, q).value <= len(S) + 1e-9
        if n == 2 and len(S) <= 5:
            for l in (2, 3):
                H = hd_algebra(vanishing_algebra(S, l))
                assert hom_furstenberg_m(H, 1) >= furstenberg_m(S, 1) * math.comb(l, 1)


def test_easy_bound_on_every_subset_of_small_grids():
    for q, n in ((2, 2), (3, 2)):
        F = field_of(q)
        grid = list(itertools.product(range(q), repeat=n))
        for size in range(1, len(grid) + 1):
            for pts in itertools.islice(itertools.combinations(grid, size), 60):
                S = PointSet(F, n, pts)
                m = furstenberg_m(S, 1)
                if m >= 1:
                    assert easy_bound(n, 1, m, q).value <= len(S) + 1e-9


def test_search_examples():
    assert min_furstenberg_search(2, 2, 1, 1).minimum == 1
    res = min_furstenberg_search(2, 2, 1, 2)
    # frozen: three non-collinear points; at least ceil(sqrt(2) * sqrt(2)) = 2
    assert res.exact and res.minimum == 3 >= 2
    assert res.minimum <= 4
    assert furstenberg_m(PointSet(field_of(2), 2, res.witness), 1) >= 2
    greedy = min_furstenberg_search(3, 3, 1, 2)
    assert not greedy.exact and greedy.flags
    with pytest.raises(GuardError):
        min_furstenberg_search(5, 3, 1, 2)
    with pytest.raises(UsageError):
        min_furstenberg_search(2, 2, 1, 3)


def test_grid_and_power_examples():
    S = full_grid(field_of(3), 2)
    assert len(S) == 9 and furstenberg_m(S, 1) == 3
    R = power_algebra(field_of(2), 2, 3)
    assert hom_furstenberg_m(R, 1) == 3
    assert hyper_hom_check(R, 1, 3) and not hyper_hom_check(R, 1, 4)
    assert build_examples("power", q=2, n=2, d=3).dim == 6
    with pytest.raises(UsageError):
        build_examples("nope")


def test_hyper_check_on_sets():
    S = full_grid(field_of(2), 2)
    assert hyper_furstenberg_check_set(S, 1, 2)
    assert not hyper_furstenberg_check_set(S, 1, 3)
    assert hyper_furstenberg_check_set(S, 2, 3)


def test_r_n_example_values():
    # frozen values: hyperplane richness meets q^N, the dimension exceeds q^(N+1)
    R2, R3 = r_n_example(2, 2), r_n_example(3, 2)
    assert (R2.dim, hom_furstenberg_m(R2, 1)) == (15, 6)
    assert (R3.dim, hom_furstenberg_m(R3, 1)) == (42, 12)


def test_r_n_dimension_against_sympy():
    x1, x2 = sympy.symbols("x1 x2")
    gens = r_n_generators(2, 2)
    exprs = [sum(c * x1 ** m[0] * x2 ** m[1] for m, c in g.terms) for g in gens]
    G = sympy.groebner(exprs, x1, x2, order="grlex", modulus=2)
    leads = [sympy.Poly(g, x1, x2).monoms(order="grlex")[0] for g in G.exprs]
    std = [m for m in itertools.product(range(20), repeat=2)
           if not any(m[0] >= a and m[1] >= b for a, b in leads)]
    assert len(std) == r_n_example(2, 2).dim == 15
