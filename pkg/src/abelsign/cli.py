"""Command-line entry point: ``abelsign <subcommand> ...``.

Exit codes: 0 success, 1 usage or input error, 2 a verification discrepancy
that is not one of the documented table discrepancies.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .classifier import (
    SAMPLEABLE,
    SamplingExhausted,
    sample_case,
    classify,
    classify_B,
    verify_table1,
)
from .corpus import build_corpus
from .model import Params, build_p1, build_p3
from .oracle import SIGN_CHANGE, decide_definite, numeric_sign_scan, sign_lobes
from .quantities import compute_bundle, verify_res_factorization
from .qnum import RadicandMismatch

EXIT_OK, EXIT_USAGE, EXIT_DISCREPANCY = 0, 1, 2
LOBE_RTOL = 1e-6


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(obj, as_json: bool, text: str):
    if as_json:
        sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _load_point(path: str) -> Params:
    try:
        if path == "-":
            obj = json.load(sys.stdin)
        else:
            with open(path, encoding="utf-8") as fh:
                obj = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise UsageError("a point must be a JSON object with keys a1..a6 and d")
    try:
        return Params.from_json(obj)
    except (ValueError, TypeError, RadicandMismatch) as exc:
        raise UsageError(f"malformed parameters: {exc}") from exc


# -- subcommands -----------------------------------------------------------------------


def cmd_classify(args) -> int:
    p = _load_point(args.point)
    v = classify(p)
    obj = {"point": p.to_json(), **v.to_json(), "b_variety": classify_B(p)}
    cases = ", ".join(v.matched_cases) or "none"
    _emit(obj, args.json, f"point:      {p}\nmatched:    {cases}\nconclusion: {v.conclusion}")
    return EXIT_OK


def cmd_quantities(args) -> int:
    p = _load_point(args.point)
    bundle = compute_bundle(p)
    obj = {"point": p.to_json(), "bundle": bundle.to_json()}
    code = EXIT_OK
    try:
        ok, witness = verify_res_factorization(p)
        obj["res_factorization"] = {"holds": ok, **witness}
        if not ok:
            code = EXIT_DISCREPANCY
        check = "holds" if ok else "FAILS"
    except ValueError as exc:
        obj["res_factorization"] = {"holds": None, "skipped": str(exc)}
        check = f"skipped ({exc})"
    lines = [f"point: {p}", f"p1 = {bundle.p1}", f"p3 = {bundle.p3}"]
    for key, val in obj["bundle"].items():
        if key in ("degrees", "p1", "p3"):
            continue
        shown = val["undefined"] if isinstance(val, dict) else val
        shown = f"undefined ({shown})" if isinstance(val, dict) else shown
        lines.append(f"{key:8s} {shown}")
    lines.append(f"res(p1,p3) = R1*R2: {check}")
    _emit(obj, args.json, "\n".join(lines))
    return code


def cmd_oracle(args) -> int:
    p = _load_point(args.point)
    v = decide_definite(p)
    scan = numeric_sign_scan(p, args.grid)
    obj = {"point": p.to_json(), **v.to_json(), "numeric_scan": {"grid": args.grid, "result": scan}}
    text = f"point:    {p}\ndefinite: {v.definite} ({v.reason})\nscan:     {scan} (grid {args.grid})"
    if v.odd_p1 is not None:
        text += f"\nodd(p1) = {v.odd_p1}\nodd(p3) = {v.odd_p3}\ngcd     = {v.gcd}"
    _emit(obj, args.json, text)
    return EXIT_OK


def cmd_crosscheck(args) -> int:
    corpus = build_corpus(args.count, args.seed)
    disagreements, inconsistent = [], []
    for label, p in corpus:
        oracle = decide_definite(p)
        verdict = classify(p)
        if oracle.definite != verdict.a_definite:
            disagreements.append(
                {"origin": label, "point": p.to_json(), "oracle": oracle.reason,
                 "matched_cases": verdict.matched_cases}
            )
        if args.grid:
            scan = numeric_sign_scan(p, args.grid)
            if oracle.definite and scan == SIGN_CHANGE:
                inconsistent.append({"origin": label, "point": p.to_json(), "scan": scan})
            elif not oracle.definite and scan != SIGN_CHANGE:
                pos, neg = sign_lobes(p)
                if min(pos, neg) > LOBE_RTOL * max(pos, neg):
                    inconsistent.append({"origin": label, "point": p.to_json(), "scan": scan})
    obj = {
        "seed": args.seed,
        "count": len(corpus),
        "grid": args.grid,
        "disagreements": disagreements,
        "numeric_inconsistencies": inconsistent,
    }
    text = (
        f"corpus: {len(corpus)} points (seed {args.seed})\n"
        f"classifier/oracle disagreements: {len(disagreements)}\n"
        f"oracle/numeric inconsistencies:  {len(inconsistent)}"
    )
    _emit(obj, args.json, text)
    return EXIT_DISCREPANCY if disagreements or inconsistent else EXIT_OK


def cmd_verify_table1(args) -> int:
    rows = verify_table1()
    unexplained = [r for r in rows if not r.verified and not r.documented]
    obj = {"rows": [r.to_json() for r in rows], "unexplained": [r.case_label for r in unexplained]}
    lines = []
    for r in rows:
        status = "ok" if r.verified else ("documented discrepancy" if r.documented else "MISMATCH")
        rank = "-" if r.computed_rank is None else r.computed_rank
        lines.append(f"{r.case_label:3s} rank {rank} (c_p {r.expected_cp})  {status}")
        for note in r.notes:
            lines.append(f"      {note}")
        if r.alternate:
            alt_ok = all(r.alternate["membership"].values())
            lines.append(
                f"      on case {r.alternate['case']}: equalities {'hold' if alt_ok else 'fail'}, "
                f"rank {r.alternate['computed_rank']}"
            )
    _emit(obj, args.json, "\n".join(lines))
    return EXIT_DISCREPANCY if unexplained else EXIT_OK


def cmd_sample(args) -> int:
    if args.case not in SAMPLEABLE:
        raise UsageError(f"unknown or unsampleable case {args.case!r}; choose from {', '.join(SAMPLEABLE)}")
    if args.count < 0:
        raise UsageError("--count must be non-negative")
    try:
        pts = sample_case(args.case, args.seed, args.count)
    except SamplingExhausted as exc:
        raise UsageError(str(exc)) from exc
    obj = {"case": args.case, "seed": args.seed, "points": [p.to_json() for p in pts]}
    _emit(obj, args.json, "\n".join(str(p) for p in pts))
    return EXIT_OK


def cmd_simulate(args) -> int:
    from .dynamics import count_limit_cycles

    p = _load_point(args.point)
    if args.grid < 64 or args.rho_max <= 0 or args.tol <= 0:
        raise UsageError("need --grid >= 64 and positive --rho-max and --tol")
    rep = count_limit_cycles(p, rho_max=args.rho_max, n=args.grid, tol=args.tol, blowup=args.blowup)
    obj = {"point": p.to_json(), **rep.to_json()}
    if args.table:
        obj["samples"] = [{"rho0": r, "P_minus_rho": d} for r, d in rep.samples]
    lines = [
        f"point: {p}",
        f"backend: {rep.backend}, {rep.integrator[0]} rtol {rep.integrator[1]:g}",
        f"center detected: {rep.center_detected}",
        f"positive fixed points: {rep.n_fixed}",
    ]
    for fp in rep.fixed_points:
        lines.append(
            f"  rho0 = {fp.rho0:.12g}  residual {fp.residual:.2e}  converged: {fp.converged}  "
            f"planar cycle: {fp.planar_cycle}"
        )
    lines.append(f"escapes: {len(rep.escapes)} of {args.grid} samples")
    if args.table:
        lines.append("# rho0 P(rho0)-rho0")
        lines.extend(f"{r:.12e} {'escape' if d is None else format(d, '.12e')}" for r, d in rep.samples)
    _emit(obj, args.json, "\n".join(lines))
    return EXIT_OK


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="abelsign", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_, point=False):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if point:
            sp.add_argument("--point", required=True, help="Params JSON file ('-' for stdin)")
        return sp

    add("classify", cmd_classify, "list the strata containing a point", point=True)
    add("quantities", cmd_quantities, "resultants and discriminants at a point", point=True)
    sp = add("oracle", cmd_oracle, "decide whether A has definite sign", point=True)
    sp.add_argument("--grid", type=int, default=4096, help="angles for the numeric scan")
    sp = add("crosscheck", cmd_crosscheck, "classifier vs oracle on a seeded corpus")
    sp.add_argument("--count", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--grid", type=int, default=4096, help="numeric scan grid (0 disables)")
    add("verify-table1", cmd_verify_table1, "check the reference point of every stratum")
    sp = add("sample", cmd_sample, "random points on one stratum")
    sp.add_argument("--case", required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=1)
    sp = add("simulate", cmd_simulate, "scan the return map for positive fixed points", point=True)
    sp.add_argument("--rho-max", type=float, default=10.0)
    sp.add_argument("--grid", type=int, default=512)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--blowup", type=float, default=1e6)
    sp.add_argument("--table", action="store_true", help="also print P(rho0) - rho0 per sample")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "crosscheck" and (args.count < 1 or (args.grid and args.grid < 16)):
        parser.error("--count must be positive and --grid 0 or at least 16")
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"abelsign: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
