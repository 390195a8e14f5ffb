"""``aglab`` command line: check, enumerate, verify, counterexamples.

Exit codes: 0 success, 1 a verification or replay failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .enumeration import EnumerationStats, SearchConfig, enumerate_ag_groupoids
from .ifs import DEFAULT_GRID, IFSError, ValueGrid
from .magma import (
    FiniteMagma,
    IdealKind,
    ParseError,
    all_ideals,
    elements_of,
    format_subset,
    intra_regular_witness,
    is_ag_band,
    is_left_duo,
    is_medial,
    is_paramedial,
    left_identities,
    left_invertive_violation,
    parse_cayley_table,
    regular_witness,
    satisfies_law4,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _workers(arg: int | None) -> int:
    if arg is not None:
        return arg
    env = os.environ.get("AGLAB_THREADS")
    if not env:
        return 1
    try:
        n = int(env)
    except ValueError:
        raise UsageError(f"AGLAB_THREADS must be a positive integer, got {env!r}") from None
    if n < 1:
        raise UsageError(f"AGLAB_THREADS must be a positive integer, got {env!r}")
    return n


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


# ---------------------------------------------------------------------------
# check

def classify(m: FiniteMagma, ideals: bool = False) -> dict:
    """Everything ``check`` reports, with integer element indices."""
    n = m.order
    violation = left_invertive_violation(m)
    lis = left_identities(m)
    reg = [regular_witness(m, a) for a in range(n)]
    intra = [intra_regular_witness(m, a) for a in range(n)]
    out = {
        "order": n,
        "labels": list(m.labels) if m.labels else None,
        "ag_groupoid": violation is None,
        "left_invertive_violation": list(violation) if violation else None,
        "left_identities": lis,
        "medial": is_medial(m),
        "paramedial": is_paramedial(m),
        "law4": satisfies_law4(m),
        "regular": all(w is not None for w in reg),
        "regular_witnesses": [w.x if w else None for w in reg],
        "intra_regular": all(w is not None for w in intra),
        "intra_regular_witnesses": [[w.x, w.y] if w else None for w in intra],
        "ag_band": is_ag_band(m),
        "left_duo": is_left_duo(m),
    }
    if ideals:
        out["ideals"] = {k.value: [elements_of(a) for a in all_ideals(m, k)] for k in IdealKind}
    return out


def format_classification(m: FiniteMagma, info: dict) -> str:
    lab = m.label
    lines = []
    if info["ag_groupoid"]:
        lines.append("AG-groupoid: yes")
    else:
        a, b, c = info["left_invertive_violation"]
        lines.append(
            f"AG-groupoid: no; ({lab(a)}{lab(b)}){lab(c)} = {lab(m.mul(m.mul(a, b), c))} but "
            f"({lab(c)}{lab(b)}){lab(a)} = {lab(m.mul(m.mul(c, b), a))}"
        )
    lis = info["left_identities"]
    lines.append("left identity: " + (", ".join(lab(e) for e in lis) if lis else "none"))
    lines.append(f"medial: {_yes(info['medial'])}")
    lines.append(f"paramedial: {_yes(info['paramedial'])}")
    lines.append(f"a(bc) = b(ac): {_yes(info['law4'])}")
    lines.append(f"regular: {_yes(info['regular'])}")
    for a, x in enumerate(info["regular_witnesses"]):
        lines.append(f"  {lab(a)} = ({lab(a)}{lab(x)}){lab(a)}" if x is not None else f"  {lab(a)}: no witness")
    lines.append(f"intra-regular: {_yes(info['intra_regular'])}")
    for a, w in enumerate(info["intra_regular_witnesses"]):
        lines.append(f"  {lab(a)} = ({lab(w[0])}{lab(a)}^2){lab(w[1])}" if w else f"  {lab(a)}: no witness")
    lines.append(f"AG-band: {_yes(info['ag_band'])}")
    lines.append(f"left duo: {_yes(info['left_duo'])}")
    if "ideals" in info:
        lines.append("ideals:")
        for kind, subsets in info["ideals"].items():
            shown = " ".join(format_subset(m, sum(1 << x for x in s)) for s in subsets) or "none"
            lines.append(f"  {kind}: {shown}")
    return "\n".join(lines)


def _read_magma(path: str) -> FiniteMagma:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    try:
        return parse_cayley_table(text)
    except ParseError as e:
        raise UsageError(f"{path}: {e}") from None


def cmd_check(args) -> int:
    m = _read_magma(args.file)
    info = classify(m, ideals=args.ideals)
    print(json.dumps(info, indent=2, sort_keys=True) if args.json else format_classification(m, info))
    return EXIT_OK


# ---------------------------------------------------------------------------
# enumerate

def cmd_enumerate(args) -> int:
    try:
        cfg = SearchConfig(args.order, args.left_identity, args.up_to_iso, _workers(args.workers))
    except ValueError as e:
        raise UsageError(str(e)) from None
    stats = EnumerationStats()
    out = open(args.output, "w", encoding="utf-8") if args.output else sys.stdout
    try:
        count = 0
        for m in enumerate_ag_groupoids(cfg, stats):
            count += 1
            if not args.count:
                out.write(m.to_text() + "\n")
        if args.count:
            out.write(f"{count}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    if args.stats:
        Path(args.stats).write_text(json.dumps(stats.as_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify

def cmd_verify(args) -> int:
    from .harness import CHECK_IDS, run_all

    try:
        grid = ValueGrid.parse(args.grid) if args.grid else DEFAULT_GRID
    except (IFSError, TypeError) as e:
        raise UsageError(f"bad --grid: {e}") from None
    for cid in args.only or ():
        if cid not in CHECK_IDS:
            raise UsageError(f"unknown check {cid!r}; known: {', '.join(CHECK_IDS)}")
    try:
        report = run_all(args.order_max, grid, only=args.only, workers=_workers(args.workers),
                         include_examples=not args.no_examples)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.report:
        Path(args.report).write_text(report.to_json(), encoding="utf-8")
    if args.json:
        sys.stdout.write(report.to_json())
    else:
        for cid in report:
            e = report[cid]
            line = f"{cid:26s} {e['verdict']:7s} {e['instances_checked']:>12d} instances {e['elapsed_ms'] / 1000:8.2f}s"
            print(line)
            if "counterexample" in e:
                cx = e["counterexample"]
                print(f"    {cx['clause']}: {cx['detail']}")
        print("all checks passed" if report.passed else f"failed: {', '.join(report.failures())}")
    return EXIT_OK if report.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# counterexamples

def cmd_counterexamples(args) -> int:
    from .harness.counterexamples import SCENARIOS, scenario

    names = [args.scenario] if args.scenario else list(SCENARIOS)
    scs = [scenario(n) for n in names]
    if args.json:
        print(json.dumps({sc.name: sc.to_dict() for sc in scs}, indent=2, sort_keys=True))
    else:
        for sc in scs:
            print(f"[{sc.name}] on {sc.table}: {'reproduced' if sc.reproduced else 'NOT reproduced'}")
            for c in sc.claims:
                mark = "ok  " if c.holds else "FAIL"
                print(f"  {mark} {c.text}" + (f"  ({c.detail})" if c.detail else ""))
            refuted = {True: "refuted", False: "not refuted", None: "not examined"}[sc.converse_refuted]
            print(f"  converse {refuted}" + (f": {sc.converse_detail}" if sc.converse_detail else ""))
    return EXIT_OK if all(sc.reproduced for sc in scs) else EXIT_FAIL


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    from .harness.counterexamples import SCENARIOS

    p = argparse.ArgumentParser(prog="aglab", description="AG-groupoids and intuitionistic fuzzy ideals")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="classify a Cayley table")
    c.add_argument("file", help="table file, or - for stdin")
    c.add_argument("--ideals", action="store_true", help="also list every crisp ideal")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("enumerate", help="generate AG-groupoids of a given order")
    e.add_argument("--order", type=int, required=True)
    e.add_argument("--count", action="store_true", help="print only the total")
    e.add_argument("--left-identity", action="store_true")
    e.add_argument("--up-to-iso", action="store_true")
    e.add_argument("--stats", metavar="FILE", help="write search statistics as JSON")
    e.add_argument("--output", metavar="FILE")
    e.add_argument("--workers", type=int)
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify", help="run the theorem checks")
    v.add_argument("--order-max", type=int, default=4)
    v.add_argument("--grid", help="comma-separated grade levels, e.g. 0,1/2,1")
    v.add_argument("--only", action="append", metavar="ID", help="run just this check (repeatable)")
    v.add_argument("--report", metavar="FILE", help="write the JSON report")
    v.add_argument("--json", action="store_true")
    v.add_argument("--no-examples", action="store_true", help="skip the three fixed example tables")
    v.add_argument("--workers", type=int)
    v.set_defaults(func=cmd_verify)

    x = sub.add_parser("counterexamples", help="replay the stated counterexamples")
    x.add_argument("--json", action="store_true")
    x.add_argument("--scenario", choices=SCENARIOS)
    x.set_defaults(func=cmd_counterexamples)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"aglab: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
