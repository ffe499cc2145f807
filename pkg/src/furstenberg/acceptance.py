"""Acceptance battery: one function per criterion, each returning a result record.

Every function takes ``seed`` and ``quick``.  ``quick=True`` shrinks corpus
sizes so the whole battery runs in a few seconds (used by ``furst selftest``);
``quick=False`` uses the full sizes.  Results never include wall-clock time, so
two runs with the same seed serialize to identical bytes.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, List

from .corpus import algebra_corpus, field_of, point_set_corpus, random_point_set, random_polynomial
from .field import field_make
from .furstsets import (
    hom_furstenberg_m,
    hyper_hom_check,
    min_furstenberg_search,
    q_example,
    r_n_example,
)
from .gin import (
    bep_lattice,
    borel_stable_check,
    gin_compute,
    random_borel_stable_ideal,
)
from .latticebound import (
    ASSERT_TOL,
    LatticeSet,
    D_formula,
    D_limit,
    bep_check,
    d_raw,
    easy_bound,
    path,
    path_multiplicity_audit,
)
from .polyring import Polynomial, monomials_up_to
from .richvariety import (
    jm_is_zero,
    projective_points,
    rank_at,
    sz_mult_verify,
    t_h_matrix,
    theorem_nonzero_case_check,
)
from .zerodim import (
    extend_scalars,
    hd_algebra,
    initial_algebra,
    monomial_algebra,
    power_algebra,
    rich_dim,
    truncated_homogeneous_algebra,
    vanishing_algebra,
)


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    details: Dict[str, object] = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "details": self.details}

    def line(self) -> str:
        return f"criterion {self.number:2d} {'PASS' if self.passed else 'FAIL'}  {self.title}"


# ---------------------------------------------------------------- helpers

def _vanishing_set(F, n: int, gens) -> List[tuple]:
    return [a for a in itertools.product(range(F.order), repeat=n)
            if all(g.evaluate_code(a) == 0 for g in gens)]


def _random_affine_equations(F, n: int, count: int, rng: random.Random) -> List[Polynomial]:
    eqs = []
    while len(eqs) < count:
        coeffs = [F.random_code(rng) for _ in range(n)]
        if any(coeffs):
            eqs.append(Polynomial.linear_form(F, coeffs, F.random_code(rng)))
    return eqs


def _homogenized_corpus(count: int, seed: int):
    """Pairs (field, hd(I(S))) for random point sets with n <= 3."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        q = rng.choice((2, 3, 4, 5))
        F = field_of(q)
        n = rng.choice((2, 3))
        S = random_point_set(F, n, rng.randint(2, 10), rng)
        out.append((F, hd_algebra(vanishing_algebra(S))))
    return out


# ---------------------------------------------------------------- criteria

def criterion_1(seed: int = 0, quick: bool = False) -> CriterionResult:
    count = 40 if quick else 200
    bad = []
    for k, S in enumerate(point_set_corpus(count, seed)):
        dim = vanishing_algebra(S).dim
        if dim != len(S):
            bad.append({"index": k, "size": len(S), "dim": dim})
    return CriterionResult(1, "dim Alg(S) = |S|", not bad, {"instances": count, "failures": bad})


def criterion_2(seed: int = 0, quick: bool = False) -> CriterionResult:
    rng = random.Random(seed + 2)
    count = 8 if quick else 40
    bad = []
    for k in range(count):
        F = field_of(rng.choice((2, 3, 4, 5)))
        n = rng.randint(1, 3)
        S = random_point_set(F, n, rng.randint(1, 6), rng)
        for l in (2, 3):
            dim = vanishing_algebra(S, l).dim
            want = len(S) * math.comb(l + n - 1, n)
            if dim != want:
                bad.append({"index": k, "l": l, "dim": dim, "expected": want})
    return CriterionResult(2, "dim Alg^(l)(S) = |S| C(l+n-1,n)", not bad,
                           {"instances": count, "failures": bad})


def criterion_3(seed: int = 0, quick: bool = False) -> CriterionResult:
    rng = random.Random(seed + 3)
    count = 20 if quick else 100
    bad = []
    for k in range(count):
        q = rng.choice((2, 3, 4, 5))
        F = field_of(q)
        n = rng.choice((1, 2, 3, 4) if q <= 5 and q ** 4 <= 625 else (1, 2, 3))
        S = random_point_set(F, n, rng.randint(1, 12), rng)
        if rng.random() < 0.5:
            J = _random_affine_equations(F, n, rng.randint(1, n), rng)
        else:
            J = [random_polynomial(F, n, 3, rng.randint(1, 4), rng) for _ in range(rng.randint(1, 2))]
        got = vanishing_algebra(S).quotient_dim(J)
        zero_set = set(_vanishing_set(F, n, J))
        want = sum(1 for p in S if p in zero_set)
        if got != want:
            bad.append({"index": k, "got": got, "expected": want})
    return CriterionResult(3, "dim Alg(S)/J = |S cap V(J)|", not bad,
                           {"instances": count, "failures": bad})


def criterion_4(seed: int = 0, quick: bool = False) -> CriterionResult:
    rng = random.Random(seed + 4)
    count = 15 if quick else 60
    bad = []
    for k, S in enumerate(point_set_corpus(count, seed + 4, max_size=12)):
        R = vanishing_algebra(S)
        F, n = S.field, S.n
        # in(R) from its leading monomials alone
        mono = monomial_algebra(F, n, R.leading_monomials)
        if initial_algebra(R).dim != R.dim or mono.dim != R.dim:
            bad.append({"index": k, "check": "dim in(R)"})
        # hd(I) rebuilt from scratch by homogeneous linear algebra
        H = hd_algebra(R)
        rebuilt = truncated_homogeneous_algebra(list(H.reducers.values()))
        if rebuilt.std != R.std:
            bad.append({"index": k, "check": "in(hd I) = in(I)"})
        for _ in range(3):
            if rng.random() < 0.5:
                J = _random_affine_equations(F, n, rng.randint(1, n), rng)
                hJ = [g.hd() for g in J]
            else:
                f = random_polynomial(F, n, 3, 3, rng)
                if not f:
                    continue
                J, hJ = [f], [f.hd()]
            lo, hi = R.quotient_dim(J), H.quotient_dim(hJ)
            if lo > hi:
                bad.append({"index": k, "check": "dilation", "dim": lo, "hd_dim": hi})
    return CriterionResult(4, "initial and top-degree ideals preserve dimension", not bad,
                           {"instances": count, "failures": bad})


def criterion_5(seed: int = 0, quick: bool = False) -> CriterionResult:
    Q = q_example()
    F = Q.field
    lines = {str(h): rich_dim(Q, [Polynomial.linear_form(F, h)]) for h in projective_points(F, 2)}
    jm = jm_is_zero(Q, 10, seed=seed)
    Q4 = extend_scalars(Q, 2)
    F4 = Q4.field
    outside = {str([1, a]): rich_dim(Q4, [Polynomial.linear_form(F4, [1, a])]) for a in (2, 3)}
    passed = (all(v >= 10 for v in lines.values()) and not jm.is_zero
              and any(v < 10 for v in outside.values()))
    return CriterionResult(5, "Q-example rich lines and J_10", passed,
                           {"dim": Q.dim, "f2_lines": lines, "j10": jm.to_json(),
                            "f4_lines": outside})


def criterion_6(seed: int = 0, quick: bool = False) -> CriterionResult:
    rows = []
    for q in (2, 3):
        N = 2
        R = r_n_example(q, N)
        m1 = hom_furstenberg_m(R, 1)
        rows.append({"q": q, "N": N, "dim": R.dim, "dim_bound": q ** (N + 1),
                     "m": m1, "m_required": q ** N,
                     "furstenberg_ok": m1 >= q ** N, "dim_ok": R.dim <= q ** (N + 1)})
    passed = all(r["furstenberg_ok"] and r["dim_ok"] for r in rows)
    return CriterionResult(6, "R_N example: m >= q^N and dim <= q^(N+1)", passed, {"cases": rows})


def criterion_7(seed: int = 0, quick: bool = False) -> CriterionResult:
    rows = []
    ok = True
    for n in (2, 3):
        for d in range(1, 5):
            R = power_algebra(field_make(2), n, d)
            m = math.comb(d + n - 2, n - 1)
            res = jm_is_zero(R, m, seed=seed)
            good = res.is_zero and res.error_bound < 2.0 ** -40
            ok &= good
            rows.append({"n": n, "d": d, "m": m, "dim": R.dim, "verdict": res.verdict,
                         "error_bound": res.error_bound, "extension": res.extension})
    return CriterionResult(7, "J_m of power algebras is zero", ok, {"cases": rows})


def criterion_8(seed: int = 0, quick: bool = False) -> CriterionResult:
    corpus = algebra_corpus(seed, 4 if quick else 12)
    bad = []
    checked = 0
    for name, R in corpus:
        Mx = t_h_matrix(R)
        for h in itertools.product(range(R.field.order), repeat=R.n):
            if not any(h):
                continue
            lhs = R.dim - rank_at(Mx, h)
            rhs = R.quotient_dim([Polynomial.linear_form(R.field, list(h))])
            checked += 1
            if lhs != rhs:
                bad.append({"algebra": name, "h": list(h), "corank": lhs, "quotient_dim": rhs})
    return CriterionResult(8, "corank of T_h = dim R/<h>", not bad,
                           {"algebras": len(corpus), "checks": checked, "failures": bad})


def criterion_9(seed: int = 0, quick: bool = False) -> CriterionResult:
    rng = random.Random(seed + 9)
    bad = []
    F2 = field_make(2)
    mons = monomials_up_to(2, 3)
    exhaustive = 0
    for bits in range(1, 1 << len(mons)):
        f = Polynomial(F2, 2, [(m, 1) for k, m in enumerate(mons) if bits >> k & 1])
        res = sz_mult_verify(f, range(2))
        exhaustive += 1
        if not res["holds"]:
            bad.append({"field": "2", "poly": f.to_text(), **res})
    sampled = 0
    for F in (field_make(3), field_make(2, 2)):
        for _ in range(20 if quick else 100):
            n = rng.choice((1, 2, 3 if quick else 2))
            f = random_polynomial(F, n, 4, rng.randint(1, 5), rng)
            if not f:
                continue
            U = rng.sample(range(F.order), rng.randint(1, F.order))
            res = sz_mult_verify(f, U)
            sampled += 1
            if not res["holds"]:
                bad.append({"field": F.name, "poly": f.to_text(), **res})
    return CriterionResult(9, "Schwartz-Zippel with multiplicity", not bad,
                           {"exhaustive": exhaustive, "sampled": sampled, "failures": bad})


def _lattice_audit(n: int, lattice: LatticeSet) -> dict:
    """Checks the chain |L| >= (1/(n-1)) sum wt >= d_n(m) m^{n/(n-1)} and |L| >= D(n,m) m^{n/(n-1)}.

    The middle link uses the closed-form d_n: the 1/4 floor of D for small m
    is justified by |L| >= m, not by the weight average, so a one-point slice
    (weight 0) would otherwise fail vacuously.  The literal piecewise chain is
    reported as ``piecewise_chain`` for reference.
    """
    sl = lattice.slice_last()
    m = len(sl)
    path_ok = all(len(path(lam)) == sum(lam) for lam in sl)
    overlap = path_multiplicity_audit(sl)
    weight_avg = sum(sum(lam) for lam in sl) / (n - 1)
    power = m ** (n / (n - 1))
    closed = d_raw(n, m) * power
    stated = D_formula(n, m).value * power
    bep = bool(bep_check(lattice))
    size = len(lattice)
    chain = (size + ASSERT_TOL >= weight_avg and weight_avg * (1 + ASSERT_TOL) + ASSERT_TOL >= closed
             and size * (1 + ASSERT_TOL) >= stated)
    return {"n": n, "size": size, "slice": m, "path_ok": path_ok, "overlap": overlap,
            "weight_average": weight_avg, "closed_form_bound": closed, "bound": stated, "bep": bep,
            "piecewise_chain": weight_avg * (1 + ASSERT_TOL) + ASSERT_TOL >= stated,
            "ok": path_ok and overlap <= n - 1 and bep and chain}


def criterion_10(seed: int = 0, quick: bool = False) -> CriterionResult:
    rng = random.Random(seed + 10)
    audits = []
    for k, (F, H) in enumerate(_homogenized_corpus(4 if quick else 10, seed + 10)):
        res = gin_compute(list(H.reducers.values()), seed=seed + k)
        audits.append({"source": "gin", **_lattice_audit(H.n, bep_lattice(res.ideal.algebra(F)))})
    for _ in range(10 if quick else 60):
        n = rng.randint(2, 4)
        K = random_borel_stable_ideal(n, rng.randint(1, 6), rng)
        audits.append({"source": "borel", **_lattice_audit(n, bep_lattice(K.algebra(field_make(2))))})
    failures = [a for a in audits if not a["ok"]]
    return CriterionResult(10, "PATH audit and lattice bound", not failures,
                           {"lattices": len(audits), "failures": failures})


def _log_grid(top: int, per_decade: int) -> List[int]:
    pts = {1}
    steps = int(round(math.log10(top) * per_decade))
    for s in range(steps + 1):
        pts.add(max(1, int(round(10 ** (s / per_decade)))))
    return sorted(pts)


def criterion_11(seed: int = 0, quick: bool = False) -> CriterionResult:
    grid = _log_grid(10 ** 6, 8 if quick else 40)
    ns = range(2, 11)
    min_d = min(D_formula(n, m).value for n in ns for m in grid)
    monotone = True
    for n in ns:
        vals = [d_raw(n, m) for m in grid]
        if any(b < a - 1e-9 for a, b in zip(vals, vals[1:])):
            monotone = False
    above = []
    for n in ns:
        t = (math.e ** 2 * n) ** (n - 1)
        for m in (t, 2 * t, 10 * t):
            above.append(d_raw(n, m) >= 1 / math.e - 1e-9)
    limits = {}
    for n in ns:
        value = D_formula(n, 10 ** 9).value
        limits[str(n)] = {"value": value, "limit": D_limit(n), "gap": abs(value - D_limit(n)),
                          "within": abs(value - D_limit(n)) <= 1e-3}
    checks = {"D_at_least_quarter": min_d >= 0.25 - 1e-9, "d_monotone": monotone,
              "d_above_inverse_e": all(above),
              "limit_within_1e-3": all(v["within"] for v in limits.values())}
    return CriterionResult(11, "D and d_n properties", all(checks.values()),
                           {"checks": checks, "min_D": min_d, "grid_points": len(grid),
                            "limits": limits})


def criterion_12(seed: int = 0, quick: bool = False) -> CriterionResult:
    count = 5 if quick else 20
    rows = []
    passes = 0
    for k, (F, H) in enumerate(_homogenized_corpus(count, seed + 12)):
        res = gin_compute(list(H.reducers.values()), seed=seed + k)
        G = res.ideal.algebra(F)
        ok_stable = borel_stable_check(res.ideal, F)
        ok_bep = bool(bep_check(bep_lattice(G)))
        ok_dim = G.dim == H.dim
        good = res.samples_agreed and ok_stable and ok_bep and ok_dim
        passes += good
        rows.append({"field": F.name, "n": H.n, "dim": H.dim, "seed": res.seed,
                     "agreed": res.samples_agreed, "borel_stable": ok_stable, "bep": ok_bep,
                     "dim_preserved": ok_dim, "gin": [list(g) for g in res.ideal.gens]})
    return CriterionResult(12, "generic initial ideals", passes == count,
                           {"passed": passes, "instances": count, "cases": rows})


def criterion_13(seed: int = 0, quick: bool = False) -> CriterionResult:
    q = 2
    rows = []
    ok = True
    for n in (2, 3):
        for k in (1, 2):
            if k > n:
                continue
            for m in range(1, q ** k + 1):
                res = min_furstenberg_search(q, n, k, m)
                bound = math.ceil(easy_bound(n, k, m, q).value - 1e-9)
                good = res.exact and res.minimum >= bound
                ok &= good
                rows.append({"n": n, "k": k, "m": m, "minimum": res.minimum, "bound": bound,
                             "exact": res.exact})
    return CriterionResult(13, "exhaustive minima respect the easy bound", ok, {"cases": rows})


def criterion_14(seed: int = 0, quick: bool = False) -> CriterionResult:
    algebras = [(f"power_q{q}_n{n}_d{d}", power_algebra(field_of(q), n, d))
                for q, n, d in ((2, 2, 3), (3, 2, 3), (2, 3, 2), (4, 2, 2), (3, 3, 2))]
    algebras += [(name, R) for name, R in algebra_corpus(seed, 3 if quick else 8) if R.is_homogeneous]
    bad = []
    implications = 0
    for name, R in algebras:
        if R.n < 2:
            continue
        m_hyper = hom_furstenberg_m(R, R.n - 1)
        for d in (1, 2, 3):
            for m in range(1, R.dim + 1):
                if not hyper_hom_check(R, d, m):
                    break
                implications += 1
                if m_hyper < -(-m // d):
                    bad.append({"algebra": name, "d": d, "m": m, "hom_m": m_hyper})
    return CriterionResult(14, "hyper check implies hyperplane richness", not bad,
                           {"algebras": len(algebras), "implications": implications, "failures": bad})


def criterion_15(seed: int = 0, quick: bool = False) -> CriterionResult:
    reports = []
    Q = q_example()
    rep = theorem_nonzero_case_check(Q, 10, 10, seed=seed)
    reports.append({"algebra": "q-example", "m": 10, "l": 10, **_strip(rep)})
    sizes = ((2, 1), (2, 2), (3, 1)) if quick else ((2, 1), (2, 2), (3, 1), (3, 2))
    algebras = [(f"r_n_q{q}_N{N}", r_n_example(q, N)) for q, N in sizes]
    algebras += [(name, R) for name, R in algebra_corpus(seed, 4 if quick else 12)
                 if R.is_homogeneous and R.n >= 2]
    for name, R in algebras:
        top = hom_furstenberg_m(R, R.n - 1)
        for m in range(1, top + 1):
            for l in range(1, m + 1):
                rep = theorem_nonzero_case_check(R, m, l, seed=seed)
                reports.append({"algebra": name, "m": m, "l": l, **_strip(rep)})
    checked = [r for r in reports if r["status"] == "checked"]
    violations = [r for r in checked if not r["holds"]]
    passed = not violations and reports[0]["status"] == "checked" and len(checked) > 1
    return CriterionResult(15, "nonzero-case inequality", passed,
                           {"checked": len(checked), "skipped": len(reports) - len(checked),
                            "violations": violations, "q_example": reports[0]})


def _strip(rep: dict) -> dict:
    out = {k: v for k, v in rep.items() if k not in ("certificates", "jl")}
    out.setdefault("holds", None)
    return out


CRITERIA: Dict[int, Callable[..., CriterionResult]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
    11: criterion_11, 12: criterion_12, 13: criterion_13, 14: criterion_14, 15: criterion_15,
}


def run_all(seed: int = 0, quick: bool = True) -> List[CriterionResult]:
    return [fn(seed=seed, quick=quick) for _, fn in sorted(CRITERIA.items())]
