"""Flats of F_q^n, Furstenberg measurements, example algebras and searches.

A :class:`Flat` is identified by the reduced row echelon form of its direction
space together with the coset representative whose pivot coordinates are
zero, which is the lexicographically least point of the flat.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import GuardError, UsageError, guard
from .field import FieldSpec, field_make
from .linalg import rref
from .polyring import Polynomial, ideal_product, monomials_up_to
from .richvariety import projective_points
from .zerodim import PointSet, QuotientAlgebra, power_algebra, truncated_homogeneous_algebra

DIRECTION_GUARD = 10 ** 6
HYPER_GUARD = 10 ** 5
HYPERPLANE_GUARD = 10 ** 5
EXHAUSTIVE_LIMIT = 16
GREEDY_LIMIT = 81


def gaussian_binomial(n: int, k: int, q: int) -> int:
    num, den = 1, 1
    for i in range(k):
        num *= q ** n - q ** i
        den *= q ** k - q ** i
    return num // den


class Flat:
    """Affine subspace: canonical direction (RREF rows) plus canonical translate."""

    __slots__ = ("field", "n", "direction", "pivots", "translate")

    def __init__(self, field: FieldSpec, direction: Sequence[Sequence[int]], point: Sequence[int]):
        n = len(point)
        rows = [list(r) for r in direction]
        if any(len(r) != n for r in rows):
            raise UsageError("direction rows must have the ambient length")
        red, pivots = rref(field, rows)
        if len(red) != len(rows):
            raise UsageError("direction rows are linearly dependent")
        self.field = field
        self.n = n
        self.direction: Tuple[Tuple[int, ...], ...] = tuple(tuple(r) for r in red)
        self.pivots: Tuple[int, ...] = tuple(pivots)
        self.translate = canonical_translate(field, self.direction, self.pivots, point)

    @property
    def k(self) -> int:
        return len(self.direction)

    def key(self) -> tuple:
        return (self.direction, self.translate)

    def __eq__(self, other) -> bool:
        return isinstance(other, Flat) and self.field is other.field and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Flat(k={self.k}, direction={[list(r) for r in self.direction]}, translate={list(self.translate)})"

    def equations(self) -> List[Polynomial]:
        """n - k independent degree-1 equations cutting out the flat."""
        F, n = self.field, self.n
        pivot_set = set(self.pivots)
        eqs = []
        for f in range(n):
            if f in pivot_set:
                continue
            coeffs = [0] * n
            coeffs[f] = 1
            for row, p in zip(self.direction, self.pivots):
                coeffs[p] = F.neg(row[f])
            eqs.append(Polynomial.linear_form(F, coeffs, F.neg(self.translate[f])))
        return eqs

    def points(self) -> List[Tuple[int, ...]]:
        F = self.field
        out = []
        for coeffs in itertools.product(range(F.order), repeat=self.k):
            pt = list(self.translate)
            for a, row in zip(coeffs, self.direction):
                if a:
                    pt = [F.add(x, F.mul(a, y)) for x, y in zip(pt, row)]
            out.append(tuple(pt))
        return out

    def __contains__(self, point) -> bool:
        return canonical_translate(self.field, self.direction, self.pivots, point) == self.translate


def canonical_translate(F: FieldSpec, direction, pivots, point) -> Tuple[int, ...]:
    pt = list(point)
    for row, p in zip(direction, pivots):
        c = pt[p]
        if c:
            pt = [F.sub(x, F.mul(c, y)) for x, y in zip(pt, row)]
    return tuple(pt)


def enumerate_directions(field: FieldSpec, n: int, k: int) -> List[Tuple[Tuple[int, ...], ...]]:
    """One RREF k x n matrix per k-dimensional linear subspace of F^n."""
    if not 0 < k <= n:
        raise UsageError(f"need 0 < k <= n, got k={k}, n={n}")
    q = field.order
    guard(gaussian_binomial(n, k, q), DIRECTION_GUARD, "number of directions")
    out = []
    for pivots in itertools.combinations(range(n), k):
        pivot_set = set(pivots)
        free = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, n) if c not in pivot_set]
        for values in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for r, p in enumerate(pivots):
                rows[r][p] = 1
            for (r, c), v in zip(free, values):
                rows[r][c] = v
            out.append(tuple(tuple(r) for r in rows))
    return out


def linear_flat(field: FieldSpec, direction) -> Flat:
    n = len(direction[0])
    return Flat(field, direction, [0] * n)


class FurstenbergIndex:
    """Translate class of every point of F^n for every k-direction."""

    def __init__(self, field: FieldSpec, n: int, k: int):
        self.field, self.n, self.k = field, n, k
        self.points = list(itertools.product(range(field.order), repeat=n))
        self.point_id = {p: i for i, p in enumerate(self.points)}
        self.directions = enumerate_directions(field, n, k)
        self.classes: List[List[int]] = []
        for d in self.directions:
            pivots = [row.index(1) for row in d]
            ids: Dict[tuple, int] = {}
            self.classes.append([ids.setdefault(canonical_translate(field, d, pivots, p), len(ids))
                                 for p in self.points])

    def m_of_ids(self, ids: Iterable[int]) -> int:
        ids = list(ids)
        best = None
        for cls in self.classes:
            counts = Counter(cls[i] for i in ids)
            top = max(counts.values(), default=0)
            if best is None or top < best:
                best = top
                if best == 0:
                    break
        return best or 0


def furstenberg_m(S: PointSet, k: int) -> int:
    """min over k-directions of the max number of points of S on one translate."""
    F, n = S.field, S.n
    best = None
    for d in enumerate_directions(F, n, k):
        pivots = [row.index(1) for row in d]
        counts = Counter(canonical_translate(F, d, pivots, p) for p in S.points)
        top = max(counts.values(), default=0)
        best = top if best is None else min(best, top)
    return best or 0


def hom_furstenberg_m(R: QuotientAlgebra, k: int) -> int:
    """min over linear k-subspaces V of dim(R restricted to V)."""
    if not R.is_homogeneous:
        raise UsageError("hom_furstenberg_m needs a homogeneous quotient")
    if k == R.n:
        return R.dim
    return min(R.quotient_dim(linear_flat(R.field, d).equations())
               for d in enumerate_directions(R.field, R.n, k))


def hyper_hom_check(R: QuotientAlgebra, d: int, m: int) -> bool:
    """Is h^d (R, m)-rich for every hyperplane equation h over the base field?"""
    if not R.is_homogeneous:
        raise UsageError("hyper_hom_check needs a homogeneous quotient")
    q, n = R.field.order, R.n
    guard((q ** n - 1) // (q - 1), HYPERPLANE_GUARD, "number of hyperplanes")
    for h in projective_points(R.field, n):
        if R.quotient_dim([Polynomial.linear_form(R.field, h) ** d]) < m:
            return False
    return True


def hyper_furstenberg_check_set(S: PointSet, d: int, m: int) -> bool:
    """Exhaustive: for each h some g of degree < d makes h^d + g (S, m)-rich."""
    F, n = S.field, S.n
    mons = monomials_up_to(n, d - 1)
    guard(F.order ** len(mons), HYPER_GUARD, "candidate lower-degree polynomials per hyperplane")
    mono_vals = [[Polynomial.monomial(F, mono).evaluate_code(s) for mono in mons] for s in S.points]
    for h in projective_points(F, n):
        hd_vals = [(Polynomial.linear_form(F, h) ** d).evaluate_code(s) for s in S.points]
        found = False
        for coeffs in itertools.product(range(F.order), repeat=len(mons)):
            hits = 0
            for vals, base in zip(mono_vals, hd_vals):
                v = base
                for c, mv in zip(coeffs, vals):
                    if c and mv:
                        v = F.add(v, F.mul(c, mv))
                if v == 0:
                    hits += 1
            if hits >= m:
                found = True
                break
        if not found:
            return False
    return True


# ------------------------------------------------------------------ examples

def _variables(F: FieldSpec, n: int) -> List[Polynomial]:
    return [Polynomial.variable(F, n, i) for i in range(n)]


def q_example_generators() -> List[Polynomial]:
    F = field_make(2)
    x1, x2 = _variables(F, 2)
    factors = [[x2, x1 ** 8], [x1 + x2, x1 ** 8], [x1, x2 ** 8]]
    gens = factors[0]
    for f in factors[1:]:
        gens = ideal_product(gens, f)
    return gens


def q_example() -> QuotientAlgebra:
    return truncated_homogeneous_algebra(q_example_generators())


def r_n_generators(q: int, N: int) -> List[Polynomial]:
    F = _field_of_order(q)
    x1, x2 = _variables(F, 2)
    big = q ** N
    gens = [x1, x2 ** big]
    for r in range(F.order):
        gens = ideal_product(gens, [x2 + x1.scale(r), x1 ** big])
    return gens


def r_n_example(q: int, N: int) -> QuotientAlgebra:
    guard(q ** (N + 1), 4096, "R_N dimension bound q^(N+1)")
    return truncated_homogeneous_algebra(r_n_generators(q, N))


def full_grid(field: FieldSpec, n: int) -> PointSet:
    return PointSet(field, n, itertools.product(range(field.order), repeat=n))


def _field_of_order(q: int) -> FieldSpec:
    for p in range(2, q + 1):
        if q % p == 0:
            e = round(math.log(q, p))
            if p ** e != q:
                raise UsageError(f"{q} is not a prime power")
            return field_make(p, e)
    raise UsageError(f"{q} is not a prime power")


def build_examples(example_id: str, **params):
    if example_id == "power":
        F = params.get("field") or _field_of_order(params.get("q", 2))
        return power_algebra(F, params["n"], params["d"])
    if example_id == "q-example":
        return q_example()
    if example_id == "r-n":
        return r_n_example(params["q"], params["N"])
    if example_id == "grid":
        F = params.get("field") or _field_of_order(params["q"])
        return full_grid(F, params["n"])
    raise UsageError(f"unknown example {example_id!r}")


# ------------------------------------------------------------------ search

@dataclass
class SearchResult:
    minimum: int
    exact: bool
    witness: List[Tuple[int, ...]]
    flags: List[str]

    def to_json(self) -> dict:
        return {"minimum": self.minimum, "exact": self.exact,
                "witness": [list(p) for p in self.witness], "flags": self.flags}


def min_furstenberg_search(q: int, n: int, k: int, m: int) -> SearchResult:
    """Smallest |S| in F_q^n with m(S) >= m.

    Exhaustive by increasing size when q^n <= 16; a greedy upper bound
    (flagged as such) when q^n <= 81.
    """
    if not 1 <= k <= n:
        raise UsageError("need 1 <= k <= n")
    if not 1 <= m <= q ** k:
        raise UsageError(f"need 1 <= m <= q^k = {q ** k}")
    total = q ** n
    if total > GREEDY_LIMIT:
        raise GuardError(f"search space q^n = {total} exceeds {GREEDY_LIMIT}")
    index = FurstenbergIndex(_field_of_order(q), n, k)
    if total <= EXHAUSTIVE_LIMIT:
        # m(S) is monotone in S, so the first size that works is the minimum
        for size in range(1, total + 1):
            for ids in itertools.combinations(range(total), size):
                if index.m_of_ids(ids) >= m:
                    return SearchResult(size, True, [index.points[i] for i in ids], [])
    chosen: List[int] = []
    while index.m_of_ids(chosen) < m:
        best = max((i for i in range(total) if i not in chosen),
                   key=lambda i: (_score(index, chosen + [i]), -i))
        chosen.append(best)
    return SearchResult(len(chosen), False, [index.points[i] for i in sorted(chosen)],
                        ["upper bound: greedy search"])


def _score(index: FurstenbergIndex, ids: List[int]) -> tuple:
    tops = []
    for cls in index.classes:
        counts = Counter(cls[i] for i in ids)
        tops.append(max(counts.values(), default=0))
    return (min(tops), sum(tops))
