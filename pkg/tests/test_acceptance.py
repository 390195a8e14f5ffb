"""Acceptance criteria, one test per criterion.

The terminal summary (see conftest.py) prints a ``criterion N: PASS|FAIL`` line
for each.  Run alone with ``pytest tests/test_acceptance.py`` or
``python tests/test_acceptance.py``.
"""

import sys
import time

import numpy as np
import pytest

from aglab import batch as B
from aglab.cli import main
from aglab.enumeration import SearchConfig, count_ag_groupoids, enumerate_ag_groupoids, oracle_count, orbit_size
from aglab.fixtures import T_INTRA_WITNESSES, example, stated_ifs
from aglab.harness import CHECK_IDS, PASS, replay, run_all
from aglab.harness.counterexamples import scenario
from aglab.harness.props import _commutes_locate
from aglab.ifs import (
    DEFAULT_GRID,
    FUZZY_PREDICATES,
    IFSError,
    characteristic,
    if_right_ideal_violation,
    ifs_product,
    is_if_left_ideal,
    is_if_right_ideal,
    is_if_semiprime,
    is_if_two_sided,
    make_ifs,
)
from aglab.magma import (
    CRISP_PREDICATES,
    Witness,
    all_ideals,
    format_subset,
    is_intra_regular,
    is_left_invertive,
    is_regular,
    is_semiprime_subset,
    left_identities,
    mask_from_labels,
    regular_witness,
    subset_product,
)


def labeled_upto3():
    return [m for n in (1, 2, 3) for m in enumerate_ag_groupoids(SearchConfig(n))]


def test_criterion_1_example_classification():
    start = time.perf_counter()
    ex, e2, t = example("ex"), example("e2"), example("t")
    assert is_left_invertive(ex)
    assert [ex.label(e) for e in left_identities(ex)] == ["d"]
    assert is_regular(ex)

    assert is_left_invertive(e2)
    assert [e2.label(e) for e in left_identities(e2)] == ["d"]
    assert not is_regular(e2)
    assert regular_witness(e2, e2.labels.index("c")) is None

    assert is_left_invertive(t)
    assert [t.label(e) for e in left_identities(t)] == ["b"]
    assert is_intra_regular(t)
    idx = {lab: i for i, lab in enumerate(t.labels)}
    for a, x, y in T_INTRA_WITNESSES:
        assert Witness("intra_regular", idx[a], idx[x], idx[y]).holds(t), (a, x, y)
    assert time.perf_counter() - start < 1.0


def test_criterion_2_stated_ifs_classification():
    ex, e2 = example("ex"), example("e2")
    failures = []

    # the ideal attached to the first table
    try:
        make_ifs([1, 0, 0, 0, 0], ["0.3", "0.4", "0.2", "0.2", "0.2"])
    except IFSError as e:
        failures.append(f"ex ideal is not a valid IFS: {e}")
    if not is_if_two_sided(ex, stated_ifs("ex_ideal")):
        failures.append("ex ideal is not a fuzzy two-sided ideal")

    qer = stated_ifs("qer_left_not_right")
    if not is_if_left_ideal(e2, qer):
        failures.append("qer IFS is not a left ideal")
    hit = if_right_ideal_violation(e2, qer)
    if hit is None or tuple(e2.label(x) for x in hit) != ("b", "d"):
        failures.append(f"qer IFS right-ideal violation is {hit}, expected (b,d)")

    cor = stated_ifs("cor11_converse")
    for name, pred in (("right", is_if_right_ideal), ("left", is_if_left_ideal), ("two-sided", is_if_two_sided)):
        if not pred(e2, cor):
            failures.append(f"cor11 IFS is not a fuzzy {name} ideal")
    c = e2.labels.index("c")
    c2 = e2.square(c)
    if is_if_semiprime(e2, cor):
        failures.append("cor11 IFS is semiprime")
    if e2.label(c2) != "e" or not (cor.mu[c] < cor.mu[c2] or cor.gamma[c] > cor.gamma[c2]):
        failures.append("cor11 IFS semiprime condition does not fail at c with c^2 = e")

    c1 = stated_ifs("c1_converse")
    if _commutes_locate(ex, c1) is not None:
        failures.append("c1 IFS does not satisfy A(ab) = A(ba)")
    if is_if_two_sided(ex, c1):
        failures.append("c1 IFS is a two-sided ideal")

    assert not failures, "; ".join(failures)


def test_criterion_3_crisp_ideal_census_of_e2():
    e2 = example("e2")

    def sets(*names):
        return sorted(mask_from_labels(e2, s) for s in names)

    failures = []
    want = {
        "left": sets("ae", "abe", "ace", "abce", "abcde"),
        "right": sets("ae", "abce", "abcde"),
        "two_sided": sets("ae", "abce", "abcde"),
    }
    for kind, expected in want.items():
        got = sorted(all_ideals(e2, kind))
        if got != expected:
            failures.append(
                f"{kind}: got {' '.join(format_subset(e2, s) for s in got)}, "
                f"expected {' '.join(format_subset(e2, s) for s in expected)}"
            )
        for s in got:
            if not is_semiprime_subset(e2, s):
                failures.append(f"{kind} ideal {format_subset(e2, s)} is not semiprime")
    assert not failures, "; ".join(failures)


def test_criterion_4_bridge_laws():
    start = time.perf_counter()
    violations = []
    for m in labeled_upto3():
        n = m.order
        subsets = range(1, 1 << n)
        chars = {a: characteristic(a, n) for a in subsets}
        for a in subsets:
            for kind, crisp in CRISP_PREDICATES.items():
                if crisp(m, a) != FUZZY_PREDICATES[kind](m, chars[a]):
                    violations.append(("crisp bridge", m.table, kind, a))
            if is_semiprime_subset(m, a) != is_if_semiprime(m, chars[a]):
                violations.append(("semiprime bridge", m.table, a))
            for b in subsets:
                if ifs_product(m, chars[a], chars[b]) != characteristic(subset_product(m, a, b), n):
                    violations.append(("product bridge", m.table, a, b))
    assert not violations, violations[:5]
    assert time.perf_counter() - start < 120


@pytest.fixture(scope="module")
def full_report():
    start = time.perf_counter()
    report = run_all(order_max=4, grid=DEFAULT_GRID)
    return report, time.perf_counter() - start


def test_criterion_5_theorem_suite(full_report):
    report, elapsed = full_report
    assert set(report) == set(CHECK_IDS)
    # every stored witness must replay before the verdicts are judged
    for cid in report.failures():
        assert replay(cid, report[cid]["counterexample"]), cid
    assert elapsed <= 30 * 60
    failed = {cid: report[cid].get("failed_clauses", []) for cid in report.failures()}
    assert all(report.verdict(cid) == PASS for cid in report), f"failing checks: {failed}"


def test_criterion_6_enumeration_cross_validation():
    start = time.perf_counter()
    for n in (1, 2, 3):
        for li in (False, True):
            labeled = count_ag_groupoids(SearchConfig(n, li))
            assert labeled == oracle_count(n, li), (n, li)
            classes = enumerate_ag_groupoids(SearchConfig(n, li, up_to_isomorphism=True))
            assert sum(orbit_size(m) for m in classes) == labeled, (n, li)
    assert time.perf_counter() - start < 60


def test_criterion_7_product_validity():
    rng = np.random.default_rng(20240601)
    magmas = labeled_upto3()
    per_magma = -(-100_000 // len(magmas))
    pairs = 0
    for m in magmas:
        plan = B.ProductPlan.of(m)
        preds = B.Predicates(m)
        full = B.grid_batch(m.order, DEFAULT_GRID)
        ia = rng.integers(0, len(full), per_magma)
        ib = rng.integers(0, len(full), per_magma)
        a, b = full.take(ia), full.take(ib)
        prod = B.product(plan, a, b)
        assert B.valid(prod).all(), m.table
        pairs += per_magma
        # exact scalar cross-check on a slice of the sample
        for k in range(0, per_magma, 97):
            assert prod.row(k) == ifs_product(m, a.row(k), b.row(k))

        # containment forms agree with the pointwise definitions on every grid IFS
        delta = B.delta_batch(m.order, full.scale)
        assert (B.leq(B.product(plan, full, full), full) == preds.mask("subgroupoid", full)).all()
        assert (B.leq(B.product(plan, delta, full), full) == preds.mask("left", full)).all()
        assert (B.leq(B.product(plan, full, delta), full) == preds.mask("right", full)).all()
    assert pairs >= 100_000


def test_criterion_8_counterexample_replay(capsys):
    code = main(["counterexamples"])
    out = capsys.readouterr().out
    aw = scenario("aw")
    moved = next(c for c in aw.claims if c.text.startswith("A(x) != A(x^2)"))
    assert moved.detail in out
    assert code == 0, "scenarios not reproduced: " + ", ".join(
        scenario(n).name for n in ("aw", "fgh", "qer", "c1", "cor11") if not scenario(n).reproduced
    )


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
