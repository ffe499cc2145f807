"""Borel-exchange lattices, PATH sets, and closed-form size bounds.

Every bound evaluator returns a :class:`BoundReport`.  Formulas that involve
``e`` or fractional powers are evaluated in binary floating point; the purely
rational ones (set recursion ceilings, ``q^n - q^k``) are exact.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import UsageError

Point = Tuple[int, ...]
E = math.e
ASSERT_TOL = 1e-9


class LatticeSet:
    """A finite set of points of Z_{>=0}^n."""

    def __init__(self, n: int, points: Iterable[Sequence[int]]):
        pts = set()
        for p in points:
            p = tuple(int(v) for v in p)
            if len(p) != n or any(v < 0 for v in p):
                raise UsageError(f"bad lattice point {p} for n={n}")
            pts.add(p)
        self.n = n
        self.points: FrozenSet[Point] = frozenset(pts)

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, p) -> bool:
        return tuple(p) in self.points

    def __iter__(self):
        return iter(sorted(self.points))

    def slice_last(self) -> List[Point]:
        """Points with last coordinate zero (the slice used by the lattice bound)."""
        return sorted(p for p in self.points if p[-1] == 0)

    def __repr__(self) -> str:
        return f"LatticeSet(n={self.n}, size={len(self)})"


@dataclass
class BepResult:
    holds: bool
    witness: Optional[dict] = None

    def __bool__(self) -> bool:
        return self.holds


def bep_check(lattice: LatticeSet) -> BepResult:
    """Borel exchange: for j < i and lambda_i = 0, lambda + l(e_i - e_j) stays inside."""
    n = lattice.n
    for lam in sorted(lattice.points):
        for i in range(n):
            if lam[i]:
                continue
            for j in range(i):
                for l in range(1, lam[j] + 1):
                    pt = list(lam)
                    pt[i] += l
                    pt[j] -= l
                    if tuple(pt) not in lattice.points:
                        return BepResult(False, {"point": list(lam), "i": i + 1, "j": j + 1,
                                                 "step": l, "missing": pt})
    return BepResult(True)


def path_stages(lam: Sequence[int]) -> List[List[Point]]:
    """PATH(lam, 1..n-1) for a point with last coordinate zero.

    Stage ``s`` starts at ``(l_1, .., l_{n-s}, 0, l_{n-s+1}, .., l_{n-1})`` and
    moves weight from slot ``n-s`` to slot ``n-s+1`` one unit at a time.
    """
    lam = tuple(lam)
    n = len(lam)
    if n < 2:
        raise UsageError("PATH needs n >= 2")
    if lam[-1] != 0:
        raise UsageError(f"PATH needs a point with last coordinate 0, got {lam}")
    stages = []
    for s in range(1, n):
        a = n - s - 1  # 0-based slot losing weight
        start = list(lam[:a + 1]) + [0] + list(lam[a + 1:n - 1])
        stage = []
        for l in range(1, lam[a] + 1):
            pt = list(start)
            pt[a] -= l
            pt[a + 1] = l
            stage.append(tuple(pt))
        stages.append(stage)
    return stages


def path(lam: Sequence[int]) -> List[Point]:
    return [p for stage in path_stages(lam) for p in stage]


def path_multiplicity_audit(points: Iterable[Sequence[int]]) -> int:
    """Maximum number of slice points whose PATH contains a common point."""
    counter: Counter = Counter()
    for lam in points:
        for p in set(path(lam)):
            counter[p] += 1
    return max(counter.values(), default=0)


# ------------------------------------------------------------- degree solve

def general_binom(r: float, a: int) -> float:
    """C(r, a) = r(r-1)...(r-a+1)/a! for real r."""
    num = 1.0
    for k in range(a):
        num *= (r - k)
    return num / math.factorial(a)


def solve_degree(n: int, m: float) -> Tuple[float, int, float]:
    """Return (d, d', beta) with m = C(n-1+d, n-1) = C(n-1+d', n-1) + beta C(n+d'-1, n-2)."""
    if n < 2:
        raise UsageError("solve_degree needs n >= 2")
    if m < 1:
        raise UsageError("solve_degree needs m >= 1")
    lo, hi = 0.0, float(m)
    for _ in range(200):
        mid = (lo + hi) / 2
        if general_binom(n - 1 + mid, n - 1) < m:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-12 * max(1.0, hi):
            break
    d = (lo + hi) / 2
    d_floor = max(0, int(d))
    while d_floor > 0 and math.comb(n - 1 + d_floor, n - 1) > m:
        d_floor -= 1
    while math.comb(n + d_floor, n - 1) <= m:
        d_floor += 1
    base = math.comb(n - 1 + d_floor, n - 1)
    beta = (m - base) / math.comb(n + d_floor - 1, n - 2)
    return d, d_floor, beta


@dataclass
class BoundReport:
    id: str
    inputs: Dict[str, object]
    value: float
    intermediates: Dict[str, object] = dc_field(default_factory=dict)
    flags: List[str] = dc_field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.flags

    def to_json(self) -> dict:
        def conv(v):
            if isinstance(v, Fraction):
                return float(v) if v.denominator != 1 else int(v)
            return v
        return {
            "id": self.id,
            "inputs": {k: conv(v) for k, v in self.inputs.items()},
            "value": conv(self.value),
            "intermediates": {k: conv(v) for k, v in self.intermediates.items()},
            "flags": list(self.flags),
        }


def _d_raw(n: int, d_floor: int, beta: float) -> float:
    top = math.comb(n + d_floor - 1, n - 1) ** (-1.0 / (n - 1))
    return top * (d_floor + beta * n) / n * ((d_floor + 1) / (d_floor + 1 + beta * (n - 1))) ** (n / (n - 1))


def d_raw(n: int, m: float) -> float:
    """The closed-form expression on real m >= 1 (the function d_n)."""
    _, d_floor, beta = solve_degree(n, m)
    return _d_raw(n, d_floor, beta)


def D_formula(n: int, m: float) -> BoundReport:
    """Lattice-bound constant: 1/4 below m = 4^{n-1}, the closed form above."""
    d, d_floor, beta = solve_degree(n, m)
    raw = _d_raw(n, d_floor, beta)
    small = m < 4 ** (n - 1)
    value = 0.25 if small else raw
    return BoundReport("D", {"n": n, "m": m}, value,
                       {"d": d, "d_prime": d_floor, "beta": beta, "raw": raw,
                        "branch": "small_m" if small else "closed_form"})


def D_limit(n: int) -> float:
    return math.factorial(n - 1) ** (1.0 / (n - 1)) / n


def lattice_lower_bound_check(lattice: LatticeSet) -> dict:
    """|Lambda| against the PATH-union bound and the closed-form bound."""
    res = bep_check(lattice)
    if not res:
        raise UsageError(f"lattice lacks the Borel exchange property: {res.witness}")
    n = lattice.n
    sl = lattice.slice_last()
    m = len(sl)
    union = set()
    for lam in sl:
        for p in path(lam):
            if p not in lattice.points:
                raise AssertionError(f"PATH point {p} outside a BEP lattice")
            union.add(p)
    weight_sum = sum(sum(lam) for lam in sl)
    avg = weight_sum / (n - 1)
    raw = d_raw(n, m) if m >= 1 else 0.0
    closed = raw * m ** (n / (n - 1)) if m >= 1 else 0.0
    stated = D_formula(n, m).value * m ** (n / (n - 1)) if m >= 1 else 0.0
    size = len(lattice)
    holds = (size >= len(union) and len(union) + ASSERT_TOL >= avg
             and avg * (1 + ASSERT_TOL) + ASSERT_TOL >= closed and size * (1 + ASSERT_TOL) >= stated)
    return {"size": size, "slice_size": m, "path_union": len(union), "weight_average": avg,
            "closed_form_bound": closed, "stated_bound": stated,
            "overlap": path_multiplicity_audit(sl), "holds": holds}


# ------------------------------------------------------------------ bounds

def _check_nkm(n: int, k: int, m: float, allow_k_eq_n: bool = False) -> None:
    if n < 1 or k < 1:
        raise UsageError("n and k must be >= 1")
    if k > n or (k == n and not allow_k_eq_n):
        raise UsageError(f"need k < n, got k={k}, n={n}")
    if m < 1:
        raise UsageError("m must be >= 1")


def F_formula(n: int, m: float, q: float) -> BoundReport:
    if n < 2:
        raise UsageError("F needs n >= 2")
    if m < 1 or q < 2:
        raise UsageError("F needs m >= 1 and q >= 2")
    root = m ** (1.0 / (n - 1))
    f = root / (q * E)
    g = (1 + f) ** (1.0 / (n - 1))
    value = 1.0 / (E * g + root / q)
    l_choice = m * g / (g + f)
    flags = []
    if m < (E * E * n) ** n:
        flags.append("outside hypothesis: m < (e^2 n)^n")
    return BoundReport("F", {"n": n, "m": m, "q": q}, value,
                       {"f": f, "l": l_choice, "bound": value * m ** (n / (n - 1))}, flags)


def easy_bound(n: int, k: int, m: float, q: int) -> BoundReport:
    _check_nkm(n, k, m, allow_k_eq_n=True)
    value = math.sqrt(m * (m - 1)) * q ** ((n - k) / 2)
    flags = [] if m <= q ** k else ["outside hypothesis: m > q^k"]
    return BoundReport("easy", {"n": n, "k": k, "m": m, "q": q}, value, {}, flags)


def kakeya_bound(n: int, m: float) -> BoundReport:
    if n < 1 or m < 1:
        raise UsageError("kakeya bound needs n >= 1, m >= 1")
    value = Fraction(int(m) ** n, 2 ** n) if float(m).is_integer() else m ** n / 2 ** n
    return BoundReport("kakeya", {"n": n, "m": m}, value, {"C_n": Fraction(1, 2 ** n)})


def _ceil_safe(x: float) -> int:
    # float error may only weaken the bound
    c = math.ceil(x)
    return c - 1 if c - x > 1 - 1e-9 else c


def set_bound(n: int, k: int, m: float, c: float = 1 / 16) -> BoundReport:
    """Recursion m_{j+1} = ceil(c m_j^{(j+1)/j}) from level k to n."""
    _check_nkm(n, k, m)
    steps = [m]
    cur = m
    for j in range(k, n):
        cur = _ceil_safe(c * cur ** ((j + 1) / j))
        steps.append(cur)
    closed = 1.0
    for i in range(k + 1, n + 1):
        closed *= c ** (n / i)
    closed *= m ** (n / k)
    return BoundReport("set", {"n": n, "k": k, "m": m, "C": c}, cur,
                       {"levels": steps, "closed_form": closed})


def parametric_bound(n: int, k: int, m: float, q: float, eps: Optional[float] = None) -> BoundReport:
    _check_nkm(n, k, m)
    if eps is None:
        eps = 1 - math.log(m) / (k * math.log(q))
    value = (1 / (2 * E)) ** (n - k + 1) * m ** (n / k)
    flags = []
    need = (2 * E ** 3 * n * n) ** (1 / eps) if eps > 0 else math.inf
    if not 0 < eps <= 0.5:
        flags.append("outside hypothesis: eps not in (0, 0.5]")
    if q < need:
        flags.append("outside hypothesis: q < (2e^3 n^2)^(1/eps)")
    return BoundReport("parametric", {"n": n, "k": k, "m": m, "q": q, "eps": eps}, value,
                       {"q_required": need}, flags)


def hyper_bound(n: int, d: int, m: float) -> BoundReport:
    if n < 2 or d < 1 or m < 1:
        raise UsageError("hyper bound needs n >= 2, d >= 1, m >= 1")
    value = m ** (n / (n - 1)) / (16 * d ** (n / (n - 1)))
    return BoundReport("hyper", {"n": n, "d": d, "m": m}, value,
                       {"C_nd": 1 / (16 * d ** (n / (n - 1)))})


def upper_bound_example(n: int, k: int, q: int) -> BoundReport:
    """min over d <= q of C(d-1+n, n) / C(d-1+k, k)^{n/k} (power-algebra ratio)."""
    _check_nkm(n, k, 1)
    best, best_d = math.inf, None
    for d in range(1, q + 1):
        r = math.comb(d - 1 + n, n) / math.comb(d - 1 + k, k) ** (n / k)
        if r < best:
            best, best_d = r, d
    limit = math.factorial(k) ** (n / k) / math.factorial(n)
    return BoundReport("upper_example", {"n": n, "k": k, "q": q}, best,
                       {"argmin_d": best_d, "q_infinity_limit": limit})


def subspace_count(n: int, k: int, q: int) -> BoundReport:
    if not 0 <= k <= n:
        raise UsageError("need 0 <= k <= n")
    return BoundReport("G", {"n": n, "k": k, "q": q}, q ** n - q ** k)


BOUNDS = {
    "easy": easy_bound,
    "kakeya": kakeya_bound,
    "set": set_bound,
    "parametric": parametric_bound,
    "hyper": hyper_bound,
    "upper-example": upper_bound_example,
    "G": subspace_count,
    "D": D_formula,
    "F": F_formula,
}


def bound_evaluators(bound_id: str, **params) -> BoundReport:
    try:
        fn = BOUNDS[bound_id]
    except KeyError:
        raise UsageError(f"unknown bound {bound_id!r}; choose from {sorted(BOUNDS)}")
    return fn(**params)
