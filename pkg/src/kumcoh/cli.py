"""Command-line frontend.  Exit codes: 0 success, 1 a check failed, 2 usage error."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .cohomology import BudgetExceeded, h_k
from .exactlin import cokernel_structure, parse_matrix_text, smith_normal_form
from .gmodule import MODULE_KEYS, module_by_key
from .semihom import ledger, shifted_tableaux_count, strict_partitions, f_lambda, g_lambda_formula
from .symgroup import cyclic_subgroup, format_cycles, parse_cycles
from .sympol import parse_hecke_matrix, sp_witness
from .verify import VerifyConfig, render, run_suite, summarize


class UsageError(Exception):
    pass


def _int_list(text: str) -> tuple[int, ...]:
    """'2..5' or '2,3,4'."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return tuple(range(int(lo), int(hi) + 1))
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from exc


def _group_degree(text: str) -> int:
    t = text.strip()
    if t[:1] in "Ss":
        t = t[1:]
    try:
        return int(t)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad group {text!r}; use e.g. S4") from exc


def _emit(obj: object) -> None:
    print(json.dumps(obj, indent=2))


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        cfg = VerifyConfig(n_values=args.n, moduli=args.mod, heavy=args.heavy, jobs=args.jobs,
                           fmt=args.format, degree_cap=args.degree_cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    only = args.only.split(",") if args.only else None
    results = run_suite(cfg, only)
    print(render(cfg, results))
    return 1 if summarize(results)["fail"] else 0


def cmd_snf(args: argparse.Namespace) -> int:
    text = sys.stdin.read() if args.file == "-" else open(args.file).read()
    try:
        A = parse_matrix_text(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    sf = smith_normal_form(A)
    coker = cokernel_structure(A)
    _emit({"diagonal": sf.diagonal, "rank": sf.rank,
           "cokernel": {"invariant_factors": list(coker.invariants), "free_rank": coker.free_rank}})
    return 0


def cmd_cohomology(args: argparse.Namespace) -> int:
    n = args.group
    if not 1 <= n <= 7:
        raise UsageError("group must be S1..S7")
    if args.coeff < 2:
        raise UsageError("--coeff must be at least 2")
    M = module_by_key(args.module, n, args.coeff)
    if args.cyclic_generator:
        C = cyclic_subgroup(parse_cycles(args.cyclic_generator, n))
        M = M.restrict(C)
    if args.method == "cyclic" and not M.group.is_cyclic():
        raise UsageError(f"the cyclic method needs a cyclic group; S{n} is not (use --cyclic-generator)")
    try:
        H = h_k(M, args.degree, args.method)
    except BudgetExceeded as exc:
        print(json.dumps({"error": "budget", "detail": str(exc)}), file=sys.stderr)
        return 1
    out: dict = {"invariant_factors": list(H.invariants), "method": H.method}
    if args.reps and H.representatives:
        gens = M.group.generators
        reps = []
        for c in H.representatives:
            if args.degree == 1:
                reps.append({format_cycles(g): [int(x) for x in c(g)] for g in gens})
            elif args.degree == 2:
                reps.append({f"{format_cycles(g)},{format_cycles(h)}": [int(x) for x in c(g, h)]
                             for g in gens for h in gens})
        out["representatives"] = reps
    _emit(out)
    return 0


def cmd_sp_witness(args: argparse.Namespace) -> int:
    if args.n < 2 or args.e < 1:
        raise UsageError("need --n >= 2 and --e >= 1")
    w = sp_witness(args.n, args.e)
    if args.json:
        _emit(None if w is None else {"a": list(w.coefficients), "variant": w.variant, "n": w.n, "e": w.e})
    else:
        print("none" if w is None else " ".join(map(str, w.coefficients)))
    return 0


def cmd_hecke(args: argparse.Namespace) -> int:
    if args.level < 1:
        raise UsageError("--level must be positive")
    try:
        M = parse_hecke_matrix(args.matrix, args.level)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit({"matrix": [list(r) for r in M.rows()], "level": args.level, "det": M.det, "member": M.is_member()})
    return 0


def cmd_ledger(args: argparse.Namespace) -> int:
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    L = ledger(args.n)
    _emit({"n": L.n, "rank_F": str(L.rank_F), "rank_E": str(L.rank_E), "sigma_mu": str(L.sigma_mu),
           "jh_length": str(L.jh_length), "orbit_size": str(L.orbit_size), "endo_dim": str(L.endo_dim),
           "identities": L.identities()})
    return 0


def cmd_partitions(args: argparse.Namespace) -> int:
    if args.n < 1:
        raise UsageError("--n must be positive")
    rows = []
    for lam in strict_partitions(args.n):
        g = g_lambda_formula(lam)
        if args.n <= 12 and shifted_tableaux_count(lam, enumerate_all=args.n <= 9) != g:
            raise ArithmeticError(f"tableaux count disagrees with the formula for {lam}")
        f = f_lambda(lam)
        rows.append({"partition": list(lam.parts), "g": g, "f": f, "even": f % 2 == 0})
    if args.table:
        print(f"{'partition':<24}{'g':>12}{'f':>14}  even")
        for r in rows:
            label = "(" + ",".join(map(str, r["partition"])) + ")"
            print(f"{label:<24}{r['g']:>12}{r['f']:>14}  {r['even']}")
    else:
        _emit(rows)
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kumcoh", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run the check suite")
    v.add_argument("--n", type=_int_list, default=(2, 3, 4, 5), help="e.g. 2..5 or 2,4")
    v.add_argument("--mod", type=_int_list, default=(2, 3, 4, 5, 6))
    v.add_argument("--heavy", action="store_true", help="include the slow tier (S_5 degree-2 bar, about 30 s)")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--degree-cap", type=int, default=2)
    v.add_argument("--format", choices=("json", "csv", "md"), default="json")
    v.add_argument("--only", help="comma-separated check ids")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("snf", help="Smith normal form of a text matrix ('rows cols' then rows)")
    s.add_argument("file", nargs="?", default="-")
    s.set_defaults(func=cmd_snf)

    c = sub.add_parser("cohomology", help="H^k of S_n with coefficients in a named module")
    c.add_argument("--group", type=_group_degree, required=True, help="S2..S7")
    c.add_argument("--module", choices=MODULE_KEYS, required=True)
    c.add_argument("--coeff", type=int, required=True)
    c.add_argument("--degree", type=int, required=True)
    c.add_argument("--method", choices=("bar", "cyclic", "stable"), default="bar")
    c.add_argument("--cyclic-generator", help="restrict to the cyclic subgroup generated by e.g. '(1 2 3)'")
    c.add_argument("--reps", action="store_true", help="print representatives on generators")
    c.set_defaults(func=cmd_cohomology)

    w = sub.add_parser("sp-witness", help="symplectic witness for (n, e)")
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--e", type=int, required=True)
    w.add_argument("--json", action="store_true")
    w.set_defaults(func=cmd_sp_witness)

    h = sub.add_parser("hecke", help="membership in Gamma_0(level)")
    h.add_argument("--level", type=int, required=True)
    h.add_argument("--matrix", required=True, help="'a,b;c,d'")
    h.set_defaults(func=cmd_hecke)

    ld = sub.add_parser("ledger", help="power-of-n identities")
    ld.add_argument("--n", type=int, required=True)
    ld.set_defaults(func=cmd_ledger)

    pt = sub.add_parser("partitions", help="strict partitions with g and f")
    pt.add_argument("--n", type=int, required=True)
    pt.add_argument("--table", action="store_true")
    pt.set_defaults(func=cmd_partitions)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"kumcoh: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
