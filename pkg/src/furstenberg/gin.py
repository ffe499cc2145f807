"""Generic initial ideals via random Borel coordinate changes.

Random upper-triangular matrices are drawn over an extension field with at
least 2^16 elements.  Every sample gives a candidate initial ideal.  The
grlex-greatest candidate is returned and disagreement between samples is
reported rather than hidden.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import NotFiniteDimensionalError, UsageError
from .field import FieldSpec, extension_for
from .latticebound import LatticeSet
from .polyring import BorelMatrix, Monomial, Polynomial, divides, grlex_key
from .zerodim import (
    DEFAULT_DEGREE_CAP,
    QuotientAlgebra,
    embed_polynomial,
    homogeneous_initial_data,
    minimalize_monomials,
    monomial_algebra,
)

log = logging.getLogger(__name__)

GENERIC_FIELD_SIZE = 1 << 16


class MonomialIdeal:
    """Monomial ideal stored by its minimal generators (ascending grlex)."""

    def __init__(self, n: int, gens: Iterable[Sequence[int]]):
        gens = [tuple(g) for g in gens]
        if any(len(g) != n for g in gens):
            raise UsageError("generator arity mismatch")
        self.n = n
        self.gens: Tuple[Monomial, ...] = tuple(minimalize_monomials(gens))

    def __contains__(self, m) -> bool:
        m = tuple(m)
        return any(divides(g, m) for g in self.gens)

    def __eq__(self, other) -> bool:
        return isinstance(other, MonomialIdeal) and self.n == other.n and self.gens == other.gens

    def __hash__(self) -> int:
        return hash((self.n, self.gens))

    def __repr__(self) -> str:
        return f"MonomialIdeal(n={self.n}, gens={list(self.gens)})"

    def algebra(self, field: FieldSpec) -> QuotientAlgebra:
        return monomial_algebra(field, self.n, self.gens)

    @classmethod
    def of_algebra(cls, R: QuotientAlgebra) -> "MonomialIdeal":
        return cls(R.n, R.leading_monomials)


def borel_random(field: FieldSpec, n: int, seed=0) -> BorelMatrix:
    """Uniform upper-triangular entries and uniform nonzero diagonal."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    rows = []
    for i in range(n):
        row = [0] * n
        row[i] = field.random_nonzero(rng)
        for j in range(i + 1, n):
            row[j] = field.random_code(rng)
        rows.append(row)
    return BorelMatrix(field, rows)


@dataclass
class GinResult:
    ideal: MonomialIdeal
    samples_agreed: bool
    seed: int
    extension_degree: int
    field: str
    samples: int
    distinct_candidates: int
    truncated_at: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "gin_generators": [list(g) for g in self.ideal.gens],
            "samples_agreed": self.samples_agreed,
            "seed": self.seed,
            "extension_degree": self.extension_degree,
            "field": self.field,
            "samples": self.samples,
            "distinct_candidates": self.distinct_candidates,
            "truncated_at": self.truncated_at,
        }


def _candidate_key(leading: Dict[int, List[Monomial]]) -> tuple:
    # degree by degree, monomials descending; larger key = grlex-greater ideal
    return tuple(tuple(grlex_key(m) for m in sorted(leading[d], key=grlex_key, reverse=True))
                 for d in sorted(leading))


def gin_compute(gens: Sequence[Polynomial], t: Optional[int] = None, samples: int = 2,
                seed: int = 0, max_degree: Optional[int] = None,
                cap: int = DEFAULT_DEGREE_CAP) -> GinResult:
    """Generic initial ideal of the homogeneous ideal generated by ``gens``.

    With ``max_degree`` set, the quotient need not be finite-dimensional and
    the result lists minimal generators of degree <= ``max_degree`` only.
    """
    if samples < 2:
        raise UsageError("gin_compute needs at least 2 samples for the agreement check")
    gens = [g for g in gens if g]
    if not gens:
        raise UsageError("need at least one nonzero generator")
    F, n = gens[0].field, gens[0].n
    if t is None:
        E = extension_for(F, GENERIC_FIELD_SIZE)
    else:
        from .field import extend
        E = extend(F, t)
    ext_degree = 1
    f = E
    while f is not F:
        ext_degree *= f.degree
        f = f.base
    lifted = [embed_polynomial(g, E) for g in gens]
    limit = cap if max_degree is None else max_degree
    if max_degree is None:
        if homogeneous_initial_data(lifted, cap).full_at is None:
            raise NotFiniteDimensionalError(f"quotient not finite-dimensional at cap {cap}")
    rng = random.Random(seed)
    candidates = []
    for _ in range(samples):
        g = borel_random(E, n, rng)
        moved = [h.borel_act(g) for h in lifted]
        data = homogeneous_initial_data(moved, limit)
        if max_degree is None and data.full_at is None:
            raise NotFiniteDimensionalError(f"transformed quotient not finite at cap {cap}")
        candidates.append((_candidate_key(data.leading), list(data.reducers)))
    keys = {c[0] for c in candidates}
    best = max(candidates, key=lambda c: c[0])
    agreed = len(keys) == 1
    if not agreed:
        log.warning("GIN samples disagree (seed=%s, %d distinct candidates)", seed, len(keys))
    return GinResult(MonomialIdeal(n, best[1]), agreed, seed, ext_degree, E.name, samples,
                     len(keys), max_degree)


def borel_stable_witness(K: MonomialIdeal, field: FieldSpec) -> Optional[dict]:
    """First failure of stability under x_i -> x_i + y x_j (j < i), or None."""
    n = K.n
    ring_n = n + 1  # last variable is the marker y
    for m in K.gens:
        f = Polynomial(field, ring_n, [(tuple(m) + (0,), 1)])
        for i in range(n):
            if not m[i]:
                continue
            for j in range(i):
                subs = []
                for v in range(n):
                    xv = Polynomial.variable(field, ring_n, v)
                    if v == i:
                        xv = xv + Polynomial.variable(field, ring_n, j) * Polynomial.variable(field, ring_n, n)
                    subs.append(xv)
                subs.append(Polynomial.variable(field, ring_n, n))
                image = f.compose(subs)
                for mono, _ in image.terms:
                    x_part = mono[:n]
                    if x_part not in K:
                        return {"generator": list(m), "i": i + 1, "j": j + 1, "monomial": list(x_part)}
    return None


def borel_stable_check(K: MonomialIdeal, field: FieldSpec) -> bool:
    return borel_stable_witness(K, field) is None


def bep_lattice(R: QuotientAlgebra) -> LatticeSet:
    """Exponent vectors of the standard monomials of a monomial quotient."""
    if not R.is_monomial:
        raise UsageError("bep_lattice needs a quotient by a monomial ideal")
    return LatticeSet(R.n, R.std)


def strongly_stable_closure(n: int, gens: Iterable[Sequence[int]]) -> MonomialIdeal:
    """Smallest ideal containing ``gens`` closed under x_i -> x_j moves (j < i).

    Strongly stable ideals are Borel-stable in every characteristic.
    """
    todo = [tuple(g) for g in gens]
    seen = set(todo)
    while todo:
        m = todo.pop()
        for i in range(n):
            if m[i]:
                for j in range(i):
                    mm = list(m)
                    mm[i] -= 1
                    mm[j] += 1
                    mm = tuple(mm)
                    if mm not in seen:
                        seen.add(mm)
                        todo.append(mm)
    return MonomialIdeal(n, seen)


def random_borel_stable_ideal(n: int, box: int, rng: random.Random, count: int = 3) -> MonomialIdeal:
    """Strongly stable closure of a few random monomials plus a pure power of x_n."""
    gens = [tuple(rng.randrange(box + 1) for _ in range(n)) for _ in range(count)]
    gens = [g for g in gens if any(g)]
    gens.append(tuple(0 for _ in range(n - 1)) + (rng.randrange(1, box + 1),))
    return strongly_stable_closure(n, gens)
