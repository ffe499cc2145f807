"""Command-line front end.  Every command prints one JSON report on stdout.

Exit codes: 0 when the command succeeds (and any checked property holds),
1 on usage or guard errors, 2 when a checked property or claim fails.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from typing import Optional, Sequence

from . import acceptance
from .errors import FurstError, UsageError
from .field import parse_field
from .furstsets import (
    build_examples,
    furstenberg_m,
    hom_furstenberg_m,
    hyper_furstenberg_check_set,
    hyper_hom_check,
    min_furstenberg_search,
    q_example,
    r_n_example,
)
from .gin import bep_lattice, borel_stable_witness, gin_compute
from .io import dumps_report, ingest_points, points_to_json
from .latticebound import (
    BOUNDS,
    LatticeSet,
    bep_check,
    bound_evaluators,
    lattice_lower_bound_check,
    path,
)
from .polyring import parse_polynomial
from .richvariety import (
    jm_is_zero,
    projective_points,
    rank_at,
    sz_mult_verify,
    t_h_matrix,
    theorem_nonzero_case_check,
)
from .zerodim import (
    QuotientAlgebra,
    extend_scalars,
    hd_algebra,
    initial_algebra,
    truncated_homogeneous_algebra,
    vanishing_algebra,
)

OK, USAGE, VIOLATED = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad flags; this contract reserves 2 for violated claims."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


class Outcome:
    def __init__(self, report: dict, code: int = OK):
        self.report = report
        self.code = code


# ------------------------------------------------------------ shared inputs

def _algebra_flags(p: argparse.ArgumentParser) -> None:
    src = p.add_argument_group("algebra source (pick one)")
    src.add_argument("--points", help="JSON point file; uses the vanishing algebra")
    src.add_argument("--example", choices=["q-example", "r-n", "power"])
    src.add_argument("--gens", help="homogeneous generators separated by ';'")
    src.add_argument("--field", help="field spec p^e[:t] for --gens or power examples")
    src.add_argument("--n", type=int)
    src.add_argument("--q", type=int)
    src.add_argument("--degree", type=int, help="power-algebra degree")
    src.add_argument("--N", type=int, default=1, help="R_N parameter")
    src.add_argument("--l", type=int, default=1, help="vanishing multiplicity")
    src.add_argument("--hd", action="store_true", help="pass to the top-degree (homogenized) ideal")


def _load_algebra(args) -> QuotientAlgebra:
    chosen = [x for x in (args.points, args.example, args.gens) if x]
    if len(chosen) != 1:
        raise UsageError("give exactly one of --points, --example, --gens")
    if args.points:
        R = vanishing_algebra(ingest_points(args.points), args.l)
    elif args.example == "q-example":
        R = q_example()
    elif args.example == "r-n":
        R = r_n_example(_need(args.q, "--q"), args.N)
    elif args.example == "power":
        F = parse_field(args.field) if args.field else None
        R = build_examples("power", field=F, q=args.q or 2, n=_need(args.n, "--n"),
                           d=_need(args.degree, "--degree"))
    else:
        F = parse_field(_need(args.field, "--field"))
        n = _need(args.n, "--n")
        R = truncated_homogeneous_algebra([parse_polynomial(t, F, n) for t in args.gens.split(";")])
    return hd_algebra(R) if args.hd else R


def _need(value, flag: str):
    if value is None:
        raise UsageError(f"missing required flag {flag}")
    return value


def _code(F, value: int) -> int:
    if not 0 <= value < F.order:
        raise UsageError(f"element code {value} outside 0..{F.order - 1}")
    return value


def _algebra_summary(R: QuotientAlgebra) -> dict:
    return {"field": R.field.name, "n": R.n, "dim": R.dim, "homogeneous": R.is_homogeneous}


# ------------------------------------------------------------ commands

def cmd_field(args) -> Outcome:
    F = parse_field(args.field)
    if args.action == "info":
        return Outcome({"field": F.name, "order": F.order, "characteristic": F.characteristic,
                        "degree_over_base": F.degree if F.base else 1,
                        "base": F.base.name if F.base else None, "modulus": list(F.modulus)})
    a = _code(F, _need(args.a, "--a"))
    ops = {"add": lambda: F.add(a, _code(F, _need(args.b, "--b"))),
           "sub": lambda: F.sub(a, _code(F, _need(args.b, "--b"))),
           "mul": lambda: F.mul(a, _code(F, _need(args.b, "--b"))),
           "div": lambda: F.div(a, _code(F, _need(args.b, "--b"))),
           "pow": lambda: F.pow(a, _need(args.b, "--b")),
           "inv": lambda: F.inv(a),
           "frobenius": lambda: F.frobenius(a)}
    return Outcome({"field": F.name, "op": args.action, "a": args.a, "b": args.b, "result": ops[args.action]()})


def cmd_algebra(args) -> Outcome:
    R = _load_algebra(args)
    if args.initial:
        R = initial_algebra(R)
    if args.ext:
        R = extend_scalars(R, args.ext)
    report = _algebra_summary(R)
    report["std"] = [list(m) for m in R.std]
    report["generators"] = [g.to_text() for g in R.reducers.values()]
    if args.quotient:
        eqs = [parse_polynomial(t, R.field, R.n) for t in args.quotient.split(";")]
        report["quotient"] = args.quotient
        report["quotient_dim"] = R.quotient_dim(eqs)
    return Outcome(report)


def cmd_check(args) -> Outcome:
    what = args.what
    if what == "furstenberg":
        S = ingest_points(_need(args.points, "--points"))
        k, m = _need(args.k, "--k"), _need(args.m, "--m")
        value = furstenberg_m(S, k)
        holds = value >= m
        return Outcome({"check": what, "size": len(S), "k": k, "m": m, "m_of_S": value, "holds": holds},
                       OK if holds else VIOLATED)
    if what == "hyper":
        d, m = _need(args.d, "--d"), _need(args.m, "--m")
        if args.points and not args.hd:
            S = ingest_points(args.points)
            holds = hyper_furstenberg_check_set(S, d, m)
            report = {"check": what, "kind": "set", "size": len(S)}
        else:
            R = _load_algebra(args)
            holds = hyper_hom_check(R, d, m)
            report = {"check": what, "kind": "algebra", **_algebra_summary(R)}
        report.update(d=d, m=m, holds=holds)
        return Outcome(report, OK if holds else VIOLATED)
    if what == "hom-furstenberg":
        R = _load_algebra(args)
        k, m = _need(args.k, "--k"), _need(args.m, "--m")
        value = hom_furstenberg_m(R, k)
        holds = value >= m
        return Outcome({"check": what, **_algebra_summary(R), "k": k, "m": m, "value": value,
                        "holds": holds}, OK if holds else VIOLATED)
    if what == "nonzero-case":
        R = _load_algebra(args)
        rep = theorem_nonzero_case_check(R, _need(args.m, "--m"), args.l_minor or _need(args.m, "--m"),
                                         trials=args.trials, seed=args.seed)
        code = VIOLATED if rep["status"] == "checked" and not rep["holds"] else OK
        return Outcome({"check": what, **rep}, code)
    if what == "sz":
        F = parse_field(_need(args.field, "--field"))
        f = parse_polynomial(_need(args.poly, "--poly"), F, _need(args.n, "--n"))
        res = sz_mult_verify(f, range(F.order), args.d)
        return Outcome({"check": what, "poly": f.to_text(), **res}, OK if res["holds"] else VIOLATED)
    raise UsageError(f"unknown check {what!r}")


def cmd_jm(args) -> Outcome:
    R = _load_algebra(args)
    res = jm_is_zero(R, _need(args.m, "--m"), trials=args.trials, t=args.ext, seed=args.seed)
    return Outcome({**_algebra_summary(R), "jm": res.to_json()})


def cmd_gin(args) -> Outcome:
    R = _load_algebra(args)
    if not R.is_homogeneous:
        R = hd_algebra(R)
    res = gin_compute(list(R.reducers.values()), t=args.ext, samples=args.samples, seed=args.seed)
    G = res.ideal.algebra(R.field)
    witness = borel_stable_witness(res.ideal, R.field)
    bep = bep_check(bep_lattice(G))
    report = {**_algebra_summary(R), "gin": res.to_json(), "gin_dim": G.dim,
              "borel_stable": witness is None, "bep": bep.holds}
    if witness:
        report["stability_witness"] = witness
    good = res.samples_agreed and witness is None and bep.holds and G.dim == R.dim
    return Outcome(report, OK if good else VIOLATED)


def cmd_bound(args) -> Outcome:
    params = {k: getattr(args, k) for k in ("n", "k", "m", "q", "d", "eps") if getattr(args, k) is not None}
    if args.c is not None:
        params["c"] = args.c
    return Outcome(bound_evaluators(args.bound_id, **params).to_json())


def _load_lattice(path_: str) -> LatticeSet:
    try:
        with open(path_) as fh:
            data = json.load(fh)
        return LatticeSet(int(data["n"]), data["points"])
    except OSError as exc:
        raise UsageError(f"cannot read {path_}: {exc.strerror}")
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(f"lattice file needs {{'n': int, 'points': [[...], ...]}}: {exc}")


def cmd_lattice(args) -> Outcome:
    if args.action == "path":
        lam = [int(v) for v in _need(args.lam, "--lam").split(",")]
        pts = path(lam)
        return Outcome({"lambda": lam, "path": [list(p) for p in pts], "size": len(pts),
                        "weight": sum(lam)})
    if args.points:
        L = _load_lattice(args.points)
    else:
        R = _load_algebra(args)
        if not R.is_homogeneous:
            R = hd_algebra(R)
        res = gin_compute(list(R.reducers.values()), seed=args.seed)
        L = bep_lattice(res.ideal.algebra(R.field))
    bep = bep_check(L)
    report = {"n": L.n, "size": len(L), "bep": bep.holds}
    if not bep:
        report["witness"] = bep.witness
        return Outcome(report, VIOLATED)
    if L.n >= 2:
        report["bound"] = lattice_lower_bound_check(L)
        if not report["bound"]["holds"]:
            return Outcome(report, VIOLATED)
    return Outcome(report)


def _demo_q_example(args) -> Outcome:
    Q = q_example()
    F = Q.field
    Mx = t_h_matrix(Q)
    lines = {str(h): Q.dim - rank_at(Mx, h) for h in projective_points(F, 2)}
    jm = jm_is_zero(Q, 10, seed=args.seed)
    E = extend_scalars(Q, 2).field
    witness = next((h for h in projective_points(E, 2) if rank_at(Mx, h, E) >= Q.dim - 9), None)
    claims = []
    ok_lines = all(v >= 10 for v in lines.values())
    if ok_lines:
        claims.append("all F_2 lines rich >= 10")
    if not jm.is_zero and witness is not None:
        claims.append(f"J_10 nonzero, witness over F_4: h = {witness}")
    good = ok_lines and not jm.is_zero and witness is not None
    return Outcome({"demo": "q-example", "dim": Q.dim, "f2_line_richness": lines, "jm": jm.to_json(),
                    "f4_witness": witness,
                    "f4_witness_richness": None if witness is None else Q.dim - rank_at(Mx, witness, E),
                    "claims": claims}, OK if good else VIOLATED)


def cmd_demo(args) -> Outcome:
    if args.name == "q-example":
        return _demo_q_example(args)
    if args.name == "r-n":
        q, N = args.q or 2, args.N
        R = r_n_example(q, N)
        m1 = hom_furstenberg_m(R, 1)
        report = {"demo": "r-n", "q": q, "N": N, "dim": R.dim, "dim_claimed_max": q ** (N + 1),
                  "m": m1, "m_claimed_min": q ** N,
                  "furstenberg_claim": m1 >= q ** N, "dimension_claim": R.dim <= q ** (N + 1)}
        good = report["furstenberg_claim"] and report["dimension_claim"]
        return Outcome(report, OK if good else VIOLATED)
    if args.name == "power":
        q, n, d = args.q or 2, args.n or 2, args.d or 3
        R = build_examples("power", q=q, n=n, d=d)
        m = math.comb(d + n - 2, n - 1)
        jm = jm_is_zero(R, m, seed=args.seed)
        return Outcome({"demo": "power", "q": q, "n": n, "d": d, "dim": R.dim,
                        "hyperplane_richness": hom_furstenberg_m(R, n - 1), "jm": jm.to_json()},
                       OK if jm.is_zero else VIOLATED)
    q, n = args.q or 2, args.n or 2
    S = build_examples("grid", q=q, n=n)
    R = vanishing_algebra(S)
    H = hd_algebra(R)
    return Outcome({"demo": "grid", "q": q, "n": n, "size": len(S), "dim": R.dim,
                    "m1": furstenberg_m(S, 1), "hom_m1": hom_furstenberg_m(H, 1),
                    "points": points_to_json(S)})


def cmd_search(args) -> Outcome:
    res = min_furstenberg_search(_need(args.q, "--q"), _need(args.n, "--n"),
                                 _need(args.k, "--k"), _need(args.m, "--m"))
    return Outcome({"search": "min-set", "q": args.q, "n": args.n, "k": args.k, "m": args.m,
                    **res.to_json()})


def cmd_selftest(args) -> Outcome:
    results = acceptance.run_all(seed=args.seed, quick=not args.full)
    for r in results:
        print(r.line(), file=sys.stderr)
    report = {"seed": args.seed, "scale": "full" if args.full else "quick",
              "criteria": [r.to_json() for r in results],
              "passed": sum(r.passed for r in results), "total": len(results)}
    return Outcome(report, OK if all(r.passed for r in results) else VIOLATED)


# ------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice (default 0)")
    common.add_argument("--timing", action="store_true", help="add wall-clock seconds to the report")
    common.add_argument("--json", action="store_true", help="accepted for compatibility; output is always JSON")

    parser = _Parser(prog="furst", description="Furstenberg-set algebra toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("field", parents=[common], help="finite-field information and arithmetic")
    p.add_argument("action", choices=["info", "add", "sub", "mul", "div", "pow", "inv", "frobenius"])
    p.add_argument("--field", required=True)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("algebra", parents=[common], help="build a quotient algebra")
    _algebra_flags(p)
    p.add_argument("--initial", action="store_true", help="replace the ideal by its initial ideal")
    p.add_argument("--ext", type=int, help="extend scalars by this degree")
    p.add_argument("--quotient", help="extra generators separated by ';' for dim R/J")
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("check", parents=[common], help="check a property; exit 2 when it fails")
    p.add_argument("what", choices=["furstenberg", "hyper", "hom-furstenberg", "nonzero-case", "sz"])
    _algebra_flags(p)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--d", type=int, help="hyperplane power for 'hyper', degree bound for 'sz'")
    p.add_argument("--l-minor", type=int, help="minor index l for the nonzero-case check (default m)")
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--poly")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("jm", parents=[common], help="decide whether J_m(R) is zero")
    _algebra_flags(p)
    p.add_argument("--m", type=int)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--ext", type=int, help="evaluation-field extension degree")
    p.set_defaults(func=cmd_jm)

    p = sub.add_parser("gin", parents=[common], help="generic initial ideal of a homogeneous quotient")
    _algebra_flags(p)
    p.add_argument("--samples", type=int, default=2)
    p.add_argument("--ext", type=int)
    p.set_defaults(func=cmd_gin)

    p = sub.add_parser("bound", parents=[common], help="evaluate a closed-form bound")
    p.add_argument("bound_id", choices=sorted(BOUNDS))
    for flag, kind in (("--n", int), ("--k", int), ("--m", float), ("--q", int), ("--d", int),
                       ("--eps", float), ("--c", float)):
        p.add_argument(flag, type=kind)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("lattice", parents=[common], help="Borel exchange and PATH audits")
    p.add_argument("action", choices=["check", "path"])
    _algebra_flags(p)
    p.add_argument("--lam", help="comma-separated slice point for 'path'")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("demo", parents=[common], help="reproduce a worked example")
    p.add_argument("name", choices=["q-example", "r-n", "power", "grid"])
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--N", type=int, default=2)
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("search", parents=[common], help="smallest Furstenberg sets")
    p.add_argument("what", choices=["min-set"])
    for flag in ("--q", "--n", "--k", "--m"):
        p.add_argument(flag, type=int)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("selftest", parents=[common], help="run the acceptance battery")
    p.add_argument("--full", action="store_true", help="full corpus sizes instead of the quick battery")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        outcome = args.func(args)
    except (FurstError, ValueError, ZeroDivisionError) as exc:
        print(f"furst: error: {exc}", file=sys.stderr)
        return USAGE
    report = {"command": args.command, "seed": args.seed, **outcome.report}
    if args.timing:
        report["wall_time_s"] = round(time.perf_counter() - start, 6)
    sys.stdout.write(dumps_report(report) + "\n")
    return outcome.code


def run() -> None:
    sys.exit(main())
