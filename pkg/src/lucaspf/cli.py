"""Command-line front end: cascades, searches, and the small query tools."""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from .bounds import unit_product_constant
from .cyclotomic import cyclotomic_value
from .errors import LucasPFError, Undecidable
from .factorials import pf_decompose, pf_fast_reject, pf_member
from .interval import Interval, PREC_LADDER
from .lucas import SeqKind, validate_params
from .pipeline import (
    emit_report,
    run_general_cascade,
    run_real_cascade,
    run_unit_case,
)
from .search import DEFAULT_MAX_N, SearchConfig, search_pf_terms, verify_fibonacci_identity


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="lucaspf",
        description="Bound cascades and factorial-product searches for Lucas sequences",
    )
    top.add_argument(
        "--precision-bits",
        type=int,
        choices=PREC_LADDER,
        default=None,
        help="starting interval precision (default from LUCASPF_PRECISION_BITS)",
    )
    sub = top.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", help="run a bound cascade and report thresholds")
    b.add_argument("--case", choices=("general", "real", "unit"), default="general")
    b.add_argument("--kind", choices=("U", "V"), default="U")
    b.add_argument("--r", type=int, default=1)
    b.add_argument("--s", type=int, default=1)
    b.add_argument("--json", metavar="PATH", help="write the JSON report here")
    b.add_argument("--workers", type=int, default=1)

    s = sub.add_parser("search", help="search a concrete sequence for factorial products")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--s", type=int, required=True)
    s.add_argument("--kind", choices=("U", "V"), default="U")
    s.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    s.add_argument("--min-n", type=int, default=1)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--reject-log", action="store_true")
    s.add_argument("--json", metavar="PATH")
    s.add_argument("--csv", metavar="PATH")

    f = sub.add_parser("pf", help="factorial-product membership of one integer")
    f.add_argument("n", type=int)
    f.add_argument("--decompose", action="store_true")
    f.add_argument("--limit", type=int, default=16)

    c = sub.add_parser("cyclotomic", help="exact Phi_n(alpha, beta)")
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--s", type=int, required=True)
    c.add_argument("--n", type=int, required=True)

    v = sub.add_parser("verify", help="self-checks of identities and constants")
    v.add_argument("--suite", choices=("identities", "bounds", "all"), default="all")
    return top


def _cmd_bounds(args) -> int:
    kind = SeqKind(args.kind)
    if args.case == "general":
        result = run_general_cascade(kind, workers=args.workers)
    elif args.case == "real":
        result = run_real_cascade(kind, workers=args.workers)
    else:
        params = validate_params(args.r, args.s)
        result = run_unit_case(params, kind)
    report = emit_report(result)
    print(f"case={report['case']} kind={report['kind']}")
    for stage in report["stages"]:
        flag = "ok" if stage["decisive"] else "NOT DECISIVE"
        print(
            f"  {stage['name']:<22} computed={stage['computed']:<10}"
            f" paper={stage['paper']:<10} [{flag}]"
        )
    print(f"final bound: n <= {report['finalBound']}"
          f" (stated envelope {report['paperFinal']})")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
    return 0 if report["decisive"] else 1


def _coverage(cfg: SearchConfig) -> str:
    bound = 150 if cfg.kind is SeqKind.U else 75
    if abs(cfg.s) == 1 and cfg.n_min == 1 and cfg.n_max >= bound:
        return f"exhaustive (unit-norm case, theorem bound {bound})"
    return f"partial up to nMax={cfg.n_max}"


def _cmd_search(args) -> int:
    cfg = SearchConfig(
        r=args.r,
        s=args.s,
        kind=SeqKind(args.kind),
        n_min=args.min_n,
        n_max=args.max_n,
        workers=args.workers,
        reject_log=args.reject_log,
    )
    hits = search_pf_terms(cfg)
    coverage = _coverage(cfg)
    print(f"search (r,s)=({cfg.r},{cfg.s}) kind={cfg.kind.value}"
          f" n in [{cfg.n_min},{cfg.n_max}] -- {coverage}")
    print("index  kind  digits  witness          trivial")
    for h in hits:
        witness = "*".join(f"{m}!" for m in h.witness.args) or "1"
        if h.witness.sign < 0:
            witness = "-" + witness
        print(f"{h.index:<6} {h.kind.value:<5} {h.value_digits:<7} {witness:<16} "
              f"{'yes' if h.trivial else 'no'}")
    print(f"{len(hits)} hit(s)")
    payload = {
        "search": {
            "r": cfg.r,
            "s": cfg.s,
            "kind": cfg.kind.value,
            "nMin": cfg.n_min,
            "nMax": cfg.n_max,
            "coverage": coverage,
            "hits": [
                {
                    "index": h.index,
                    "kind": h.kind.value,
                    "digits": h.value_digits,
                    "witness": {"sign": h.witness.sign, "args": list(h.witness.args)},
                    "trivial": h.trivial,
                }
                for h in hits
            ],
        }
    }
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["index", "kind", "digits", "witness", "trivial"])
            for h in hits:
                writer.writerow(
                    [
                        h.index,
                        h.kind.value,
                        h.value_digits,
                        " ".join(map(str, h.witness.args)),
                        int(h.trivial),
                    ]
                )
    return 0


def _cmd_pf(args) -> int:
    member = pf_member(args.n)
    print(f"{args.n}: {'member' if member else 'not a member'}")
    if not member and abs(args.n) > 1:
        reason = pf_fast_reject(args.n)
        if reason:
            print(f"fast reject: {reason}")
    if args.decompose and member:
        for w in pf_decompose(args.n, limit=args.limit):
            body = "*".join(f"{m}!" for m in w.args) or "1"
            print(f"  {'-' if w.sign < 0 else ''}{body}  args={list(w.args)}")
    return 0


def _cmd_cyclotomic(args) -> int:
    params = validate_params(args.r, args.s)
    value = cyclotomic_value(params, args.n)
    print(f"Phi_{args.n}(alpha, beta) = {value} for (r,s)=({args.r},{args.s})")
    return 0


def _cmd_verify(args) -> int:
    checks = []
    if args.suite in ("identities", "all"):
        checks.append(("fibonacci factorial identity", verify_fibonacci_identity()))
        hits = search_pf_terms(SearchConfig(1, 1, SeqKind.U, 1, 150))
        checks.append(
            ("fibonacci hits {1,2,3,6,12}", [h.index for h in hits] == [1, 2, 3, 6, 12])
        )
    if args.suite in ("bounds", "all"):
        const = unit_product_constant()
        checks.append(
            ("unit product constant > 0.278293",
             const.certainly_gt(Interval.from_str("0.278293", const.prec))),
        )
        params = validate_params(1, 1)
        checks.append(("unit case closes at 150", run_unit_case(params).final_bound == 150))
    ok = True
    for name, passed in checks:
        print(f"{'PASS' if passed else 'FAIL'}  {name}")
        ok = ok and passed
    return 0 if ok else 1


def cli_dispatch(argv) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.precision_bits:
        os.environ["LUCASPF_PRECISION_BITS"] = str(args.precision_bits)
    handler = {
        "bounds": _cmd_bounds,
        "search": _cmd_search,
        "pf": _cmd_pf,
        "cyclotomic": _cmd_cyclotomic,
        "verify": _cmd_verify,
    }[args.command]
    try:
        return handler(args)
    except Undecidable as exc:
        print(f"undecidable: {exc}", file=sys.stderr)
        return 3
    except LucasPFError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
