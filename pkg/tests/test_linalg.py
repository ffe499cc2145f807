import random

from hypothesis import given, strategies as st

from furstenberg.field import field_make
from furstenberg.linalg import IncrementalEchelon, determinant, rank, rref


def naive_rank_mod_p(rows, p):
    rows = [list(r) for r in rows]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [v * inv % p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


matrices = st.integers(1, 6).flatmap(lambda c: st.lists(st.lists(st.integers(0, 6), min_size=c, max_size=c),
                                                        min_size=1, max_size=6))


@given(matrices)
def test_rank_matches_naive_elimination(rows):
    F = field_make(7)
    assert rank(F, rows) == naive_rank_mod_p(rows, 7)


@given(matrices)
def test_rref_shape(rows):
    F = field_make(7)
    red, pivots = rref(F, rows)
    assert len(red) == len(pivots)
    for row, c in zip(red, pivots):
        assert row[c] == 1
        assert all(other[c] == 0 for other in red if other is not row)


def test_determinant_against_sympy():
    import sympy
    rng = random.Random(0)
    F = field_make(5)
    for _ in range(30):
        n = rng.randint(1, 5)
        M = [[rng.randrange(5) for _ in range(n)] for _ in range(n)]
        assert determinant(F, M) == int(sympy.Matrix(M).det()) % 5


def test_incremental_echelon_reports_dependencies():
    F = field_make(2, 2)
    ech = IncrementalEchelon(F)
    assert ech.insert([1, 0, 2]) is None
    assert ech.insert([0, 1, 1]) is None
    combo = ech.insert([2, 3, F.add(F.mul(2, 2), 3)])
    assert combo == {0: 2, 1: 3}
