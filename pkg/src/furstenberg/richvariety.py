"""Multiplication-by-h matrices and the rich-hyperplane ideal J_m(R).

For ``h = h_1 x_1 + ... + h_n x_n`` the map ``f -> h f`` on ``R`` has matrix
``U(h) = sum_i h_i A_i`` in the standard-monomial basis, where ``A_i`` is the
matrix of multiplication by ``x_i``.  ``J_m(R)`` is generated by the minors of
size ``dim R - m + 1``, so a hyperplane is (R, m)-rich exactly when
``rank U(h) <= dim R - m``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from .errors import PreconditionError, UsageError
from .field import FieldSpec, extend, extension_for
from .linalg import determinant, rank
from .polyring import Polynomial, mono_mul, unit_vector
from .zerodim import QuotientAlgebra

GENERIC_FACTOR = 1 << 16
SYMBOLIC_MINOR_LIMIT = 6


class MultiplicationMatrix:
    """Entry (r, c) is the linear form sum_i A_i[r][c] h_i."""

    def __init__(self, algebra: QuotientAlgebra, coeffs: List[List[List[int]]]):
        self.algebra = algebra
        self.field = algebra.field
        self.n = algebra.n
        self.dim = algebra.dim
        self.coeffs = coeffs  # coeffs[i][r][c]

    def entry(self, r: int, c: int) -> List[int]:
        return [self.coeffs[i][r][c] for i in range(self.n)]

    def entry_form(self, r: int, c: int) -> Polynomial:
        return Polynomial.linear_form(self.field, self.entry(r, c))

    def evaluate(self, h: Sequence[int], field: Optional[FieldSpec] = None) -> List[List[int]]:
        E = field or self.field
        if not self.field.embeds_into(E):
            raise UsageError(f"{self.field!r} does not embed into {E!r}")
        if len(h) != self.n:
            raise UsageError(f"h needs {self.n} coordinates")
        D = self.dim
        out = [[0] * D for _ in range(D)]
        for i, hi in enumerate(h):
            if not hi:
                continue
            A = self.coeffs[i]
            for r in range(D):
                row_out, row_a = out[r], A[r]
                for c in range(D):
                    a = row_a[c]
                    if a:
                        row_out[c] = E.add(row_out[c], E.mul(hi, a))
        return out


def t_h_matrix(R: QuotientAlgebra) -> MultiplicationMatrix:
    D, n = R.dim, R.n
    coeffs = []
    for i in range(n):
        e = unit_vector(n, i)
        A = [[0] * D for _ in range(D)]
        for c, m in enumerate(R.std):
            for r, a in R.nf_monomial(mono_mul(m, e)).items():
                A[r][c] = a
        coeffs.append(A)
    return MultiplicationMatrix(R, coeffs)


def rank_at(Mx: MultiplicationMatrix, h: Sequence[int], field: Optional[FieldSpec] = None) -> int:
    E = field or Mx.field
    return rank(E, Mx.evaluate(h, E))


def hyperplane_form(field: FieldSpec, h: Sequence[int]) -> Polynomial:
    return Polynomial.linear_form(field, list(h))


@dataclass
class JmResult:
    verdict: str
    m: int
    dim: int
    max_rank: int
    trials: int
    extension: str
    seed: int
    error_bound: float
    witness: Optional[List[int]] = None

    @property
    def is_zero(self) -> bool:
        return self.verdict == "zero"

    def to_json(self) -> dict:
        out = {"dim": self.dim, "m": self.m, "verdict": self.verdict, "samples": self.trials,
               "extension": self.extension, "seed": self.seed, "max_rank": self.max_rank,
               "error_bound": self.error_bound}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        return out


def jm_is_zero(R: QuotientAlgebra, m: int, trials: int = 3, t: Optional[int] = None,
               seed: int = 0, Mx: Optional[MultiplicationMatrix] = None) -> JmResult:
    """Decide J_m(R) = <0> by evaluating U(h) at random h over a large extension.

    A "nonzero" verdict comes with a certificate h.  A "zero" verdict can be
    wrong only if every trial hit the zero set of a nonzero minor, which has
    probability at most ``error_bound``.
    """
    D = R.dim
    if not 0 <= m <= D:
        raise UsageError(f"m must lie in [0, {D}], got {m}")
    if trials < 1:
        raise UsageError("need at least one trial")
    size = D - m + 1
    E = extension_for(R.field, GENERIC_FACTOR * max(D, 1)) if t is None else extend(R.field, t)
    if size > D:
        return JmResult("zero", m, D, 0, 0, E.name, seed, 0.0)
    Mx = Mx or t_h_matrix(R)
    rng = random.Random(seed)
    best = 0
    for k in range(trials):
        h = [E.random_code(rng) for _ in range(R.n)]
        r = rank_at(Mx, h, E)
        best = max(best, r)
        if r >= size:
            return JmResult("nonzero", m, D, r, k + 1, E.name, seed, 0.0, h)
    return JmResult("zero", m, D, best, trials, E.name, seed, (size / E.order) ** trials)


def minor_mult_lower_bound(Mx: MultiplicationMatrix, l: int, h: Sequence[int],
                           field: Optional[FieldSpec] = None) -> int:
    """Lower bound on mult at h of every size-(dim - l + 1) minor."""
    D = Mx.dim
    if not 1 <= l <= D:
        raise UsageError(f"l must lie in [1, {D}]")
    return max(0, D - l + 1 - rank_at(Mx, h, field))


def symbolic_minor(Mx: MultiplicationMatrix, rows: Sequence[int], cols: Sequence[int]) -> Polynomial:
    """Exact minor as a polynomial in h by cofactor expansion (size <= 6)."""
    if len(rows) != len(cols):
        raise UsageError("minor needs a square selection")
    if len(rows) > SYMBOLIC_MINOR_LIMIT:
        raise UsageError(f"symbolic minors limited to size {SYMBOLIC_MINOR_LIMIT}")
    F = Mx.field
    forms = {(r, c): Mx.entry_form(r, c) for r in rows for c in cols}

    def det(rs, cs):
        if not rs:
            return Polynomial.constant(F, Mx.n, 1)
        acc = Polynomial.zero(F, Mx.n)
        r0 = rs[0]
        for k, c in enumerate(cs):
            entry = forms[(r0, c)]
            if not entry:
                continue
            sub = det(rs[1:], cs[:k] + cs[k + 1:])
            term = entry * sub
            acc = acc - term if k % 2 else acc + term
        return acc

    return det(list(rows), list(cols))


def evaluated_minor(Mx: MultiplicationMatrix, rows: Sequence[int], cols: Sequence[int],
                    h: Sequence[int], field: Optional[FieldSpec] = None) -> int:
    E = field or Mx.field
    U = Mx.evaluate(h, E)
    return determinant(E, [[U[r][c] for c in cols] for r in rows])


def sz_mult_verify(f: Polynomial, U: Sequence[int], d: Optional[int] = None) -> dict:
    """Sum of multiplicities of f over U^n against d |U|^(n-1)."""
    if not f:
        raise UsageError("sz_mult_verify needs a nonzero polynomial")
    d = f.degree if d is None else d
    if f.degree > d:
        raise UsageError(f"deg f = {f.degree} exceeds the bound d = {d}")
    U = list(dict.fromkeys(U))
    lhs = sum(f.multiplicity(a) for a in itertools.product(U, repeat=f.n))
    rhs = d * len(U) ** (f.n - 1)
    return {"lhs": lhs, "rhs": rhs, "holds": lhs <= rhs}


def projective_points(field: FieldSpec, n: int) -> List[List[int]]:
    """One representative (first nonzero coordinate 1) per line through 0 in F^n."""
    out = []
    q = field.order
    for lead in range(n):
        for tail in itertools.product(range(q), repeat=n - lead - 1):
            out.append([0] * lead + [1] + list(tail))
    return out


def theorem_nonzero_case_check(R: QuotientAlgebra, m: int, l: int, trials: int = 3,
                               seed: int = 0) -> dict:
    """Check dim R >= q m (1 - (l-1)/m) when every hyperplane is rich and J_l != 0.

    Precondition failures are reported with ``status = "precondition_failed"``
    and never count as a violation of the inequality.
    """
    F, n, D = R.field, R.n, R.dim
    if not R.is_homogeneous:
        raise PreconditionError("the nonzero-case check needs a homogeneous quotient")
    if not 1 <= l <= m:
        raise UsageError("need 1 <= l <= m")
    q = F.order
    report: Dict[str, object] = {"dim": D, "m": m, "l": l, "q": q}
    if m > D:
        report.update(status="precondition_failed", reason="m exceeds dim R")
        return report
    Mx = t_h_matrix(R)
    certificates = []
    for h in projective_points(F, n):
        r = rank_at(Mx, h)
        certificates.append({"h": h, "rank": r, "richness": D - r,
                             "mult_lower_bound": max(0, D - l + 1 - r)})
    poor = [c for c in certificates if c["richness"] < m]
    report["certificates"] = certificates
    if poor:
        report.update(status="precondition_failed", reason="hyperplane not (R,m)-rich",
                      witness=poor[0]["h"])
        return report
    jm = jm_is_zero(R, l, trials=trials, seed=seed, Mx=Mx)
    report["jl"] = jm.to_json()
    if jm.is_zero:
        report.update(status="precondition_failed", reason="J_l(R) tested zero")
        return report
    degree = D - l + 1
    per_point = min(c["mult_lower_bound"] for c in certificates)
    sz_lhs = sum(c["mult_lower_bound"] for c in certificates) * (q - 1) + min(m - l + 1, degree)
    sz_rhs = degree * q ** (n - 1)
    lhs, rhs = D, q * (m - l + 1)
    report.update(status="checked", lhs=lhs, rhs=rhs, holds=lhs >= rhs,
                  min_point_multiplicity=per_point, sz_lhs=sz_lhs, sz_rhs=sz_rhs,
                  sz_holds=sz_lhs <= sz_rhs)
    return report


def rich_hyperplanes(R: QuotientAlgebra, m: int, field: Optional[FieldSpec] = None) -> List[List[int]]:
    """Projective representatives h over ``field`` whose hyperplane is (R, m)-rich."""
    E = field or R.field
    Mx = t_h_matrix(R)
    return [h for h in projective_points(E, R.n) if Mx.dim - rank_at(Mx, h, E) >= m]
