"""Command-line surface: analyze, classify, solve, sdk, parity, conjecture, serve.

Exit codes: 0 ok, 2 infeasible at the given budget, 3 invalid input,
4 inconclusive result.
"""
from __future__ import annotations

import argparse
import json
import sys

from .config import LabeledConfig, Rules
from .classify import classify
from .explore import CSV_COLUMNS, census
from .formulas import S_value, diameter_conjecture_value, sdk_table
from .parity import strong_parity_verdict
from .solve import solve

EXIT_OK = 0
EXIT_INFEASIBLE = 2
EXIT_INVALID = 3
EXIT_INCONCLUSIVE = 4


def _add_rules(p: argparse.ArgumentParser) -> None:
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget", type=int, default=10 ** 8)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timing", action="store_true",
                   help="include runtime_ms in JSON output (breaks byte-level "
                        "reproducibility across runs)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cubeslide",
                                 description="hypercube sliding puzzles")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="census one puzzle graph (a table row)")
    _add_rules(p)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--mode", choices=("auto", "full"), default="auto")
    p.add_argument("--diameter-mode", dest="diameter_mode", default="auto",
                   choices=("auto", "exact-all-pairs", "exact-orbit", "bound", "none"))
    _add_common(p)

    p = sub.add_parser("classify", help="classify a configuration file")
    p.add_argument("config", help="path to a config JSON file")
    p.add_argument("--k", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("solve", help="optimal solution between two config files")
    p.add_argument("start")
    p.add_argument("target")
    p.add_argument("--k", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("sdk", help="solvability thresholds S(d,k)")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--d-max", dest="d_max", type=int, default=12)
    _add_common(p)

    p = sub.add_parser("parity", help="unlabeled cycle-parity analysis")
    _add_rules(p)
    p.add_argument("--l", type=int, default=None,
                   help="defaults to S(d,k), the first mobile threshold")
    _add_common(p)

    p = sub.add_parser("conjecture", help="k=1 diameter conjecture value")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("serve", help="run the play/analysis HTTP service")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--static", default=None, help="directory of UI assets to serve")
    p.add_argument("--budget", type=int, default=10 ** 7)
    p.add_argument("--threads", type=int, default=1)
    return ap


def _emit(payload, args, csv_text: str | None = None) -> None:
    if getattr(args, "format", "json") == "csv" and csv_text is not None:
        text = csv_text
    else:
        text = json.dumps(payload, indent=2, sort_keys=False)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_config(path: str) -> LabeledConfig:
    with open(path) as fh:
        return LabeledConfig.from_json(json.load(fh))


def cmd_analyze(args) -> int:
    try:
        rules = Rules(args.d, args.k, args.l)
    except ValueError as e:
        print(f"invalid rules: {e}", file=sys.stderr)
        return EXIT_INVALID
    try:
        rep = census(rules, mode=args.mode, diameter_mode=args.diameter_mode,
                     budget=args.budget, threads=args.threads,
                     with_timing=args.timing)
    except (MemoryError, ValueError) as e:
        partial = {"d": args.d, "k": args.k, "l": args.l,
                   "error": f"infeasible: {e}"}
        _emit(partial, args)
        return EXIT_INFEASIBLE
    _emit(rep.to_json(include_runtime=args.timing), args,
          csv_text=CSV_COLUMNS + "\n" + rep.to_csv_row(include_runtime=args.timing))
    return EXIT_OK


def cmd_classify(args) -> int:
    try:
        cfg = _load_config(args.config)
    except (OSError, ValueError, KeyError) as e:
        print(f"bad config: {e}", file=sys.stderr)
        return EXIT_INVALID
    result = classify(cfg, args.k, budget=args.budget)
    _emit(result.to_json(), args)
    return EXIT_INCONCLUSIVE if result.truncated else EXIT_OK


def cmd_solve(args) -> int:
    try:
        start = _load_config(args.start)
        target = _load_config(args.target)
    except (OSError, ValueError, KeyError) as e:
        print(f"bad config: {e}", file=sys.stderr)
        return EXIT_INVALID
    try:
        res = solve(start, target, args.k, budget=args.budget)
    except ValueError as e:
        print(f"mismatched boards: {e}", file=sys.stderr)
        return EXIT_INVALID
    _emit(res.to_json(), args)
    return EXIT_INCONCLUSIVE if res.status == "unknown-budget" else EXIT_OK


def cmd_sdk(args) -> int:
    if args.d is not None and args.k is not None:
        try:
            val = S_value(args.d, args.k)
        except ValueError as e:
            print(f"invalid: {e}", file=sys.stderr)
            return EXIT_INVALID
        _emit({"d": args.d, "k": args.k, "S": val}, args,
              csv_text=f"d,k,S\n{args.d},{args.k},{val}")
        return EXIT_OK
    rows = sdk_table(args.d_max)
    _emit([{"d": d, "k": k, "S": s} for d, k, s in rows], args,
          csv_text="d,k,S\n" + "\n".join(f"{d},{k},{s}" for d, k, s in rows))
    return EXIT_OK


def cmd_parity(args) -> int:
    l = args.l if args.l is not None else S_value(args.d, args.k)
    try:
        rules = Rules(args.d, args.k, l)
    except ValueError as e:
        print(f"invalid rules: {e}", file=sys.stderr)
        return EXIT_INVALID
    verdict = strong_parity_verdict(rules)
    _emit(verdict, args)
    if verdict["verdict"] in ("inconclusive", "no-mobile-configurations"):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_conjecture(args) -> int:
    try:
        val = diameter_conjecture_value(args.d, args.l)
    except ValueError as e:
        print(f"invalid: {e}", file=sys.stderr)
        return EXIT_INVALID
    _emit({"d": args.d, "k": 1, "l": args.l, "conjectured_diameter": val}, args,
          csv_text=f"d,k,l,conjectured_diameter\n{args.d},1,{args.l},{val}")
    return EXIT_OK


def cmd_serve(args) -> int:
    from .service import run_server
    run_server(host=args.host, port=args.port, static_dir=args.static,
               budget=args.budget)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "analyze": cmd_analyze, "classify": cmd_classify, "solve": cmd_solve,
        "sdk": cmd_sdk, "parity": cmd_parity, "conjecture": cmd_conjecture,
        "serve": cmd_serve,
    }[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
