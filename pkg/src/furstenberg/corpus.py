"""Seeded corpora of point sets and algebras shared by tests and the self-test."""

from __future__ import annotations

import itertools
import random
from typing import List, Sequence, Tuple

from .field import FieldSpec, field_make
from .polyring import Polynomial
from .zerodim import PointSet, QuotientAlgebra, hd_algebra, power_algebra, vanishing_algebra

FIELDS = {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1)}


def field_of(q: int) -> FieldSpec:
    return field_make(*FIELDS[q])


def random_point_set(F: FieldSpec, n: int, size: int, rng: random.Random) -> PointSet:
    grid = list(itertools.product(range(F.order), repeat=n))
    size = min(size, len(grid))
    return PointSet(F, n, rng.sample(grid, size))


def random_polynomial(F: FieldSpec, n: int, degree: int, terms: int, rng: random.Random) -> Polynomial:
    acc = {}
    for _ in range(terms):
        m = [0] * n
        for _ in range(rng.randrange(degree + 1)):
            m[rng.randrange(n)] += 1
        acc[tuple(m)] = F.random_code(rng)
    return Polynomial(F, n, acc)


def point_set_corpus(count: int, seed: int, qs: Sequence[int] = (2, 3, 4, 5),
                     max_n: int = 3, max_size: int = 20) -> List[PointSet]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        F = field_of(rng.choice(qs))
        n = rng.randint(1, max_n)
        size = rng.randint(1, max_size)
        out.append(random_point_set(F, n, size, rng))
    return out


def algebra_corpus(seed: int = 0, size: int = 12) -> List[Tuple[str, QuotientAlgebra]]:
    """Small vanishing algebras, their homogenizations, and power algebras."""
    rng = random.Random(seed)
    out: List[Tuple[str, QuotientAlgebra]] = []
    for k in range(size):
        q = rng.choice((2, 3, 4))
        F = field_of(q)
        n = rng.choice((2, 2, 3)) if q < 4 else 2
        S = random_point_set(F, n, rng.randint(2, 8), rng)
        R = vanishing_algebra(S)
        out.append((f"alg{k}_q{q}_n{n}", R))
        out.append((f"hd{k}_q{q}_n{n}", hd_algebra(R)))
    for q, n, d in ((2, 2, 3), (3, 2, 2), (2, 3, 2)):
        out.append((f"power_q{q}_n{n}_d{d}", power_algebra(field_of(q), n, d)))
    return out
