"""Drives checks over streams of magmas and assembles the report."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable

from ..enumeration import SearchConfig, enumerate_ag_groupoids
from ..fixtures import TABLE_NAMES, example
from ..ifs import DEFAULT_GRID, ValueGrid, parse_ifs
from ..magma import FiniteMagma, parse_cayley_table
from .checks import CHECK_IDS, COUNTEREXAMPLES_SUITE, UnknownCheck, Violation, get_check
from .counterexamples import all_scenarios, scenario
from .profile import Profile
from .report import FAIL, PASS, SKIPPED, TheoremReport


def _profiles(magmas: Iterable, grid: ValueGrid) -> list[Profile]:
    out = []
    for i, m in enumerate(magmas):
        if isinstance(m, Profile):
            out.append(m)
        elif isinstance(m, tuple) and len(m) == 2 and isinstance(m[1], FiniteMagma):
            out.append(Profile(m[1], grid, m[0]))
        else:
            out.append(Profile(m, grid, f"#{i}"))
    return out


def example_magmas() -> list[tuple[str, FiniteMagma]]:
    return [(name, example(name)) for name in TABLE_NAMES]


def enumerated_magmas(order_max: int, workers: int = 1) -> list[tuple[str, FiniteMagma]]:
    """One representative per isomorphism class, orders 1..order_max."""
    out = []
    for n in range(1, order_max + 1):
        cfg = SearchConfig(n, up_to_isomorphism=True, worker_count=workers)
        out.extend((f"n{n}#{i}", m) for i, m in enumerate(enumerate_ag_groupoids(cfg)))
    return out


def violation_dict(v: Violation, grid: ValueGrid) -> dict:
    return {
        "clause": v.clause,
        "magma": v.magma.to_text(),
        "ifs": [a.to_literal() for a in v.ifs],
        "where": list(v.where) if v.where is not None else None,
        "detail": v.detail,
        "grid": str(grid),
    }


def run_check(check_id: str, profiles: list[Profile], grid: ValueGrid = DEFAULT_GRID) -> dict:
    if check_id == COUNTEREXAMPLES_SUITE:
        return reproduce_counterexamples()
    check = get_check(check_id)
    start = time.perf_counter()
    instances = magmas = 0
    failed: dict[str, Violation] = {}
    for prof in profiles:
        used = False
        for clause in check.clauses:
            if clause.label in failed or not clause.applies(prof):
                continue
            used = True
            n, v = clause.run(prof)
            instances += int(n)
            if v is not None:
                failed[clause.label] = v
        magmas += used
    entry = {
        "verdict": SKIPPED if not magmas else FAIL if failed else PASS,
        "instances_checked": instances,
        "magmas_checked": magmas,
        "elapsed_ms": round((time.perf_counter() - start) * 1000, 3),
    }
    if failed:
        # the first violation found is the headline; every failed clause keeps its own
        entry["counterexample"] = violation_dict(next(iter(failed.values())), grid)
        entry["failed_clauses"] = list(failed)
        entry["clause_counterexamples"] = {k: violation_dict(v, grid) for k, v in failed.items()}
    return entry


def check_universal(check_id: str, magmas: Iterable, grid: ValueGrid = DEFAULT_GRID) -> dict:
    """Run one check over ``magmas``; each clause skips magmas outside its hypotheses."""
    if check_id != COUNTEREXAMPLES_SUITE:
        get_check(check_id)
    return run_check(check_id, _profiles(magmas, grid), grid)


def check_equivalence(check_id: str, magmas: Iterable, grid: ValueGrid = DEFAULT_GRID) -> dict:
    """Like :func:`check_universal`, restricted to the characterization theorems."""
    if get_check(check_id).kind != "equivalence":
        raise ValueError(f"{check_id} is not an equivalence check")
    return run_check(check_id, _profiles(magmas, grid), grid)


def reproduce_counterexamples() -> dict:
    start = time.perf_counter()
    scs = all_scenarios()
    bad = [sc for sc in scs if not sc.reproduced]
    entry = {
        "verdict": FAIL if bad else PASS,
        "instances_checked": sum(len(sc.claims) for sc in scs),
        "magmas_checked": len(scs),
        "elapsed_ms": round((time.perf_counter() - start) * 1000, 3),
    }
    if bad:
        sc = bad[0]
        entry["counterexample"] = {
            "clause": sc.name,
            "magma": sc.magma.to_text(),
            "ifs": [a.to_literal() for a in sc.ifs],
            "where": None,
            "detail": "; ".join(c.text for c in sc.claims if not c.holds),
            "grid": "",
        }
        entry["failed_clauses"] = [s.name for s in bad]
    return entry


def replay(check_id: str, cx: dict) -> bool:
    """Re-evaluate a stored counterexample; True when it is still a violation."""
    if check_id == COUNTEREXAMPLES_SUITE:
        return not scenario(cx["clause"]).reproduced
    clause = get_check(check_id).clause(cx["clause"])
    m = parse_cayley_table(cx["magma"])
    ifs = tuple(parse_ifs(text) for text in cx["ifs"])
    grid = ValueGrid.parse(cx["grid"]) if cx.get("grid") else DEFAULT_GRID
    return clause.replay(m, ifs, grid)


# ---------------------------------------------------------------------------

_WORKER_PROFILES: list[Profile] = []
_WORKER_GRID: ValueGrid = DEFAULT_GRID


def _init_worker(magmas, grid):
    global _WORKER_PROFILES, _WORKER_GRID
    _WORKER_GRID = grid
    _WORKER_PROFILES = _profiles(magmas, grid)


def _run_in_worker(check_id: str) -> tuple[str, dict]:
    return check_id, run_check(check_id, _WORKER_PROFILES, _WORKER_GRID)


def run_all(
    order_max: int = 4,
    grid: ValueGrid = DEFAULT_GRID,
    only: Iterable[str] | None = None,
    workers: int = 1,
    include_examples: bool = True,
    magmas: Iterable | None = None,
) -> TheoremReport:
    """Every check (or ``only``) over the iso classes of order <= order_max plus the example tables.

    Passing ``magmas`` replaces that stream.
    """
    ids = list(only) if only is not None else list(CHECK_IDS)
    for cid in ids:
        if cid not in CHECK_IDS:
            raise UnknownCheck(f"unknown check {cid!r}")
    if magmas is None:
        magmas = enumerated_magmas(order_max, workers) if order_max > 0 else []
        if include_examples:
            magmas += example_magmas()
    magmas = list(magmas)
    report = TheoremReport(grid=str(grid), order_max=order_max)
    if workers > 1 and len(ids) > 1:
        with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(magmas, grid)) as pool:
            results = dict(pool.map(_run_in_worker, ids))
    else:
        profiles = _profiles(magmas, grid)
        results = {cid: run_check(cid, profiles, grid) for cid in ids}
    for cid in ids:
        report.entries[cid] = results[cid]
    return report
