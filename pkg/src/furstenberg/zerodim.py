"""Finite-dimensional quotient algebras F[x_1..x_n]/I.

A :class:`QuotientAlgebra` is stored as its set of standard monomials (a
downward-closed set, ascending grlex) plus one reducer per minimal generator
of the initial ideal.  Each reducer is monic, has that generator as leading
monomial and a tail supported on the standard monomials, so the reducers form
the reduced Groebner basis of I.
"""

from __future__ import annotations

import math
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import NotFiniteDimensionalError, UsageError, guard
from .field import FieldSpec, extend
from .linalg import IncrementalEchelon, rank, rref
from .polyring import (
    Monomial,
    Polynomial,
    divides,
    grlex_key,
    mono_div,
    mono_mul,
    monomials_of_degree,
    monomials_up_to,
    multi_binom_mod_p,
    parse_polynomial,
)

VANISHING_GUARD = 5000
DEFAULT_DEGREE_CAP = 64


class PointSet:
    """Distinct points of F^n, each a tuple of field codes."""

    def __init__(self, field: FieldSpec, n: int, points: Iterable[Sequence[int]]):
        pts = []
        seen = set()
        for idx, p in enumerate(points):
            p = tuple(int(c) for c in p)
            if len(p) != n:
                raise UsageError(f"point {idx} has {len(p)} coordinates, expected {n}")
            if any(not 0 <= c < field.order for c in p):
                raise UsageError(f"point {idx} has a coordinate outside {field!r}")
            if p in seen:
                raise UsageError(f"point {idx} duplicates an earlier point")
            seen.add(p)
            pts.append(p)
        self.field = field
        self.n = n
        self.points: Tuple[Tuple[int, ...], ...] = tuple(pts)
        self._set = frozenset(pts)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return tuple(p) in self._set

    def __eq__(self, other) -> bool:
        return (isinstance(other, PointSet) and self.field is other.field
                and self.n == other.n and self._set == other._set)

    def __repr__(self) -> str:
        return f"PointSet[{self.field.name}, n={self.n}, size={len(self)}]"


class QuotientAlgebra:
    """F[x]/I given by standard monomials and a reduced Groebner basis."""

    def __init__(self, field: FieldSpec, n: int, std: Iterable[Monomial],
                 reducers: Mapping[Monomial, Polynomial]):
        self.field = field
        self.n = n
        self.std: Tuple[Monomial, ...] = tuple(sorted(set(std), key=grlex_key))
        self.std_index: Dict[Monomial, int] = {m: i for i, m in enumerate(self.std)}
        self.reducers: Dict[Monomial, Polynomial] = dict(sorted(reducers.items(), key=lambda kv: grlex_key(kv[0])))
        self._nf_cache: Dict[Monomial, Dict[int, int]] = {}

    @property
    def dim(self) -> int:
        return len(self.std)

    @property
    def leading_monomials(self) -> List[Monomial]:
        return list(self.reducers)

    @property
    def is_monomial(self) -> bool:
        return all(len(g) == 1 for g in self.reducers.values())

    @property
    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.reducers.values())

    def in_initial_ideal(self, m: Monomial) -> bool:
        return m not in self.std_index

    def __repr__(self) -> str:
        return f"QuotientAlgebra[{self.field.name}, n={self.n}, dim={self.dim}]"

    def same_as(self, other: "QuotientAlgebra") -> bool:
        return (self.field is other.field and self.n == other.n and self.std == other.std
                and self.reducers == other.reducers)

    # --------------------------------------------------------- normal forms
    def _expand(self, m: Monomial) -> List[Tuple[int, Monomial]]:
        # m = u * LM(g)  ==>  m == -u * tail(g)  modulo I
        F = self.field
        for lm, g in self.reducers.items():
            if divides(lm, m):
                u = mono_div(m, lm)
                return [(F.neg(c), mono_mul(u, t)) for t, c in g.terms[1:]]
        raise NotFiniteDimensionalError(f"monomial {m} is neither standard nor reducible")

    def nf_monomial(self, m: Monomial) -> Dict[int, int]:
        """Normal form of a monomial as a sparse vector over Std indices."""
        cache = self._nf_cache
        if m in cache:
            return cache[m]
        idx = self.std_index.get(m)
        if idx is not None:
            cache[m] = {idx: 1}
            return cache[m]
        F = self.field
        stack = [m]
        while stack:
            top = stack[-1]
            if top in cache:
                stack.pop()
                continue
            i = self.std_index.get(top)
            if i is not None:
                cache[top] = {i: 1}
                stack.pop()
                continue
            deps = self._expand(top)
            missing = [mm for _, mm in deps if mm not in cache]
            if missing:
                stack.extend(missing)
                continue
            vec: Dict[int, int] = {}
            for c, mm in deps:
                for k, a in cache[mm].items():
                    vec[k] = F.add(vec.get(k, 0), F.mul(c, a))
            cache[top] = {k: a for k, a in vec.items() if a}
            stack.pop()
        return cache[m]

    def nf_sparse(self, f: Polynomial) -> Dict[int, int]:
        self._check(f)
        F = self.field
        vec: Dict[int, int] = {}
        for m, c in f.terms:
            for k, a in self.nf_monomial(m).items():
                vec[k] = F.add(vec.get(k, 0), F.mul(c, a))
        return {k: a for k, a in vec.items() if a}

    def nf_vector(self, f: Polynomial) -> List[int]:
        v = [0] * self.dim
        for k, a in self.nf_sparse(f).items():
            v[k] = a
        return v

    def normal_form(self, f: Polynomial) -> Polynomial:
        return Polynomial._raw(self.field, self.n, {self.std[k]: a for k, a in self.nf_sparse(f).items()})

    def _check(self, f: Polynomial) -> None:
        if f.field is not self.field or f.n != self.n:
            raise UsageError(f"polynomial over {f.field!r}, n={f.n} used with {self!r}")

    def ideal_image_rows(self, gens: Sequence[Polynomial]) -> List[List[int]]:
        """Normal forms of g*m for every generator g and standard monomial m."""
        F = self.field
        rows = []
        for g in gens:
            self._check(g)
            if not g:
                continue
            for m in self.std:
                v = [0] * self.dim
                for t, c in g.terms:
                    for k, a in self.nf_monomial(mono_mul(t, m)).items():
                        v[k] = F.add(v[k], F.mul(c, a))
                rows.append(v)
        return rows

    def quotient_dim(self, gens: Sequence[Polynomial]) -> int:
        """dim R/J where J is generated by ``gens``."""
        return self.dim - rank(self.field, self.ideal_image_rows(gens))

    def to_json(self) -> dict:
        return {
            "field": self.field.name,
            "n": self.n,
            "std": [list(m) for m in self.std],
            "reducers": [g.to_text() for g in self.reducers.values()],
        }

    @classmethod
    def from_json(cls, data: Mapping, field: Optional[FieldSpec] = None) -> "QuotientAlgebra":
        from .field import parse_field
        F = field or parse_field(data["field"])
        n = int(data["n"])
        reducers = {}
        for text in data["reducers"]:
            g = parse_polynomial(text, F, n)
            reducers[g.leading_monomial()] = g
        return cls(F, n, [tuple(m) for m in data["std"]], reducers)


# ---------------------------------------------------------------- operations

def quotient_dim(R: QuotientAlgebra, gens: Sequence[Polynomial]) -> int:
    return R.quotient_dim(gens)


def normal_form(R: QuotientAlgebra, f: Polynomial) -> Polynomial:
    return R.normal_form(f)


def rich_dim(R: QuotientAlgebra, flat) -> int:
    """dim of R restricted to a flat (anything with ``equations()``)."""
    eqs = flat.equations() if hasattr(flat, "equations") else list(flat)
    return R.quotient_dim(eqs)


def initial_algebra(R: QuotientAlgebra) -> QuotientAlgebra:
    reducers = {lm: Polynomial._raw(R.field, R.n, {lm: 1}) for lm in R.reducers}
    return QuotientAlgebra(R.field, R.n, R.std, reducers)


def hd_algebra(R: QuotientAlgebra) -> QuotientAlgebra:
    """Quotient by hd(I), using the top-degree parts of the reducers as basis."""
    return QuotientAlgebra(R.field, R.n, R.std, {lm: g.hd() for lm, g in R.reducers.items()})


def extend_scalars(R: QuotientAlgebra, t: int) -> QuotientAlgebra:
    E = extend(R.field, t)
    if E is R.field:
        return R
    reducers = {lm: Polynomial._raw(E, R.n, dict(g.terms)) for lm, g in R.reducers.items()}
    return QuotientAlgebra(E, R.n, R.std, reducers)


def embed_polynomial(f: Polynomial, E: FieldSpec) -> Polynomial:
    """Reinterpret ``f`` over an extension of its field (codes are unchanged)."""
    if not f.field.embeds_into(E):
        raise UsageError(f"{f.field!r} does not embed into {E!r}")
    return Polynomial._raw(E, f.n, dict(f.terms))


def vanishing_functionals(S: PointSet, l: int) -> List[Tuple[Tuple[int, ...], Monomial]]:
    """(point, derivative index) pairs: Hasse derivatives of weight < l at each point."""
    idx = monomials_up_to(S.n, l - 1)
    return [(a, i) for a in S.points for i in idx]


def vanishing_algebra(S: PointSet, l: int = 1) -> QuotientAlgebra:
    """F[x]/I^{(l)}(S) by a Buchberger-Moeller sweep in increasing grlex order."""
    if len(S) == 0:
        raise UsageError("vanishing_algebra needs a nonempty point set")
    if l < 1:
        raise UsageError("multiplicity must be >= 1")
    n, F = S.n, S.field
    target = len(S) * math.comb(l + n - 1, n)
    guard(target, VANISHING_GUARD, "vanishing algebra size |S|*C(l+n-1,n)")
    functionals = vanishing_functionals(S, l)
    p = F.p
    pow_cache: Dict[Tuple[int, int], int] = {}

    def fpow(a, e):
        key = (a, e)
        if key not in pow_cache:
            pow_cache[key] = F.pow(a, e)
        return pow_cache[key]

    def column(m: Monomial) -> List[int]:
        out = []
        for a, i in functionals:
            b = multi_binom_mod_p(m, i, p)
            if b:
                v = b
                for coord, e, k in zip(a, m, i):
                    if e > k:
                        v = F.mul(v, fpow(coord, e - k))
                        if not v:
                            break
                out.append(v)
            else:
                out.append(0)
        return out

    echelon = IncrementalEchelon(F)
    std: List[Monomial] = []
    reducers: Dict[Monomial, Polynomial] = {}
    d = 0
    while True:
        added = False
        for m in reversed(monomials_of_degree(n, d)):
            if any(divides(lm, m) for lm in reducers):
                continue
            dep = echelon.insert(column(m))
            if dep is None:
                std.append(m)
                added = True
            else:
                acc = {m: 1}
                for k, c in dep.items():
                    acc[std[k]] = F.neg(c)
                reducers[m] = Polynomial._raw(F, n, acc)
        if not added:
            break
        d += 1
    assert len(std) == target, (len(std), target)
    return QuotientAlgebra(F, n, std, reducers)


def _check_homogeneous(gens: Sequence[Polynomial]) -> Tuple[FieldSpec, int, List[Polynomial]]:
    gens = [g for g in gens if g]
    if not gens:
        raise UsageError("need at least one nonzero generator")
    F, n = gens[0].field, gens[0].n
    for g in gens:
        if g.field is not F or g.n != n:
            raise UsageError("generators must share a ring")
        if not g.is_homogeneous():
            raise UsageError(f"generator {g.to_text()} is not homogeneous")
    return F, n, gens


class DegreeData:
    """Degree-by-degree initial ideal data of a homogeneous ideal."""

    def __init__(self):
        self.std: Dict[int, List[Monomial]] = {}
        self.leading: Dict[int, List[Monomial]] = {}
        self.reducers: Dict[Monomial, Polynomial] = {}
        self.full_at: Optional[int] = None


def homogeneous_initial_data(gens: Sequence[Polynomial], max_degree: int) -> DegreeData:
    """Initial ideal of a homogeneous ideal in all degrees <= ``max_degree``.

    Stops early at the first degree where the ideal contains every monomial.
    """
    F, n, gens = _check_homogeneous(gens)
    by_degree: Dict[int, List[Polynomial]] = {}
    for g in gens:
        by_degree.setdefault(g.degree, []).append(g)
    out = DegreeData()
    prev_rows: List[Polynomial] = []
    prev_leading: set = set()
    for d in range(max_degree + 1):
        cols = monomials_of_degree(n, d)
        col_index = {m: i for i, m in enumerate(cols)}
        spanning: List[Polynomial] = []
        for r in prev_rows:
            for i in range(n):
                e = [0] * n
                e[i] = 1
                spanning.append(r.mul_monomial(tuple(e)))
        spanning.extend(by_degree.get(d, []))
        rows = []
        for f in spanning:
            v = [0] * len(cols)
            for m, c in f.terms:
                v[col_index[m]] = c
            rows.append(v)
        red, pivots = rref(F, rows)
        pivot_set = set(pivots)
        out.std[d] = [m for i, m in enumerate(cols) if i not in pivot_set]
        out.leading[d] = [cols[i] for i in pivots]
        prev_rows = []
        for row, pc in zip(red, pivots):
            poly = Polynomial._raw(F, n, {cols[i]: a for i, a in enumerate(row) if a})
            prev_rows.append(poly)
            lm = cols[pc]
            if not any(lm[i] and mono_div(lm, unit) in prev_leading for i, unit in enumerate(_units(n))):
                out.reducers[lm] = poly
        prev_leading = set(out.leading[d])
        if not out.std[d]:
            out.full_at = d
            break
    return out


def _units(n: int) -> List[Monomial]:
    return [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]


def truncated_homogeneous_algebra(gens: Sequence[Polynomial], cap: int = DEFAULT_DEGREE_CAP) -> QuotientAlgebra:
    """F[x]/I for homogeneous generators, built degree by degree until I_D is everything."""
    F, n, gens = _check_homogeneous(gens)
    data = homogeneous_initial_data(gens, cap)
    if data.full_at is None:
        raise NotFiniteDimensionalError(f"quotient not finite-dimensional at cap {cap}")
    std = [m for d in sorted(data.std) for m in data.std[d]]
    return QuotientAlgebra(F, n, std, data.reducers)


def monomial_algebra(field: FieldSpec, n: int, gens: Iterable[Monomial]) -> QuotientAlgebra:
    """F[x]/K for a monomial ideal K with finite-dimensional quotient."""
    gens = minimalize_monomials(gens)
    for i in range(n):
        if not any(all(e == 0 for j, e in enumerate(g) if j != i) for g in gens):
            raise NotFiniteDimensionalError(f"no pure power of x{i + 1} among generators")
    std = []
    frontier = [(0,) * n]
    seen = set(frontier)
    while frontier:
        nxt = []
        for m in frontier:
            if any(divides(g, m) for g in gens):
                continue
            std.append(m)
            for i in range(n):
                mm = tuple(e + (j == i) for j, e in enumerate(m))
                if mm not in seen:
                    seen.add(mm)
                    nxt.append(mm)
        frontier = nxt
    reducers = {g: Polynomial._raw(field, n, {g: 1}) for g in gens}
    return QuotientAlgebra(field, n, std, reducers)


def minimalize_monomials(gens: Iterable[Monomial]) -> List[Monomial]:
    gens = sorted(set(tuple(g) for g in gens), key=grlex_key)
    out: List[Monomial] = []
    for g in gens:
        if not any(divides(h, g) for h in out):
            out.append(g)
    return out


def power_algebra(field: FieldSpec, n: int, d: int) -> QuotientAlgebra:
    """F[x]/<x_1..x_n>^d: standard monomials are those of degree < d."""
    if d < 1:
        raise UsageError("power algebra needs d >= 1")
    return monomial_algebra(field, n, monomials_of_degree(n, d))
