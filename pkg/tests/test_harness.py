import json

import pytest

from aglab.fixtures import example, stated_ifs
from aglab.harness import (
    CHECK_IDS,
    CHECKS,
    COUNTEREXAMPLES_SUITE,
    FAIL,
    PASS,
    SKIPPED,
    Profile,
    TheoremReport,
    UnknownCheck,
    check_equivalence,
    check_universal,
    get_check,
    replay,
    run_all,
)
from aglab.harness import props as P
from aglab.harness.counterexamples import SCENARIOS, all_scenarios, scenario
from aglab.harness.profile import BAND, DUO, INTRA, LI, NOT_INTRA, NOT_REG, REG
from aglab.harness.report import merge_entries
from aglab.ifs import (
    CRISP_GRID,
    delta,
    if_left_ideal_violation,
    ifs_product,
    is_if_two_sided,
    make_ifs,
)
from aglab.magma import (
    FiniteMagma,
    all_ideals,
    is_ag_band,
    is_intra_regular,
    is_left_duo,
    is_regular,
    left_identities,
    left_identity,
    parse_cayley_table,
    subset_product,
)

# left identity 3, elements 1 and 2 not intra-regular, yet every right ideal is idempotent
IDEMPOTENT_RIGHT_IDEALS = "0 0 0 0\n0 0 2 2\n0 1 0 1\n0 1 2 3\n"

EXPECTED_RED = {"thm_left_idem", "thm_SA_squared", COUNTEREXAMPLES_SUITE}


def strip_timing(entry):
    return {k: v for k, v in entry.items() if k != "elapsed_ms"}


@pytest.fixture(scope="module")
def report2():
    return run_all(2)


# --- registry -------------------------------------------------------------------

def test_check_ids():
    assert len(CHECK_IDS) == 30
    assert len(set(CHECK_IDS)) == 30
    assert COUNTEREXAMPLES_SUITE in CHECK_IDS
    for cid, check in CHECKS.items():
        assert check.id == cid
        labels = [c.label for c in check.clauses]
        assert len(labels) == len(set(labels)), cid


def test_unknown_check():
    with pytest.raises(UnknownCheck):
        get_check("thm_nope")
    with pytest.raises(UnknownCheck):
        run_all(1, only=["thm_nope"])
    with pytest.raises(KeyError):
        get_check("lem_qw").clause("nope")


def test_check_equivalence_rejects_universal():
    with pytest.raises(ValueError):
        check_equivalence("lem_qw", [example("ex")])


# --- single checks on fixed magmas ------------------------------------------------

def test_lem_qw_on_ex(ex):
    entry = check_universal("lem_qw", [("ex", ex)])
    assert entry["verdict"] == PASS
    assert entry["instances_checked"] > 0
    prof = Profile(ex)
    members = prof.members(P.TWO)
    assert len(members) > 15
    for i in members[:: max(1, len(members) // 200)]:
        a = prof.batch.row(int(i))
        assert is_if_two_sided(ex, a)
        assert ifs_product(ex, a, delta(5)) == a
        assert ifs_product(ex, delta(5), a) == a


def test_printed_ex_ideal_is_not_two_sided(ex):
    # mu + gamma = 1.3 at a, and gamma(a*c) = gamma(a) exceeds gamma(c)
    a = stated_ifs("ex_ideal")
    assert not is_if_two_sided(ex, a)
    assert if_left_ideal_violation(ex, a) == (0, 2)


def test_thm_c1_on_ex(ex):
    assert check_universal("thm_c1", [("ex", ex)])["verdict"] == PASS


def test_trivial_magma():
    m = FiniteMagma(((0,),))
    entry = check_equivalence("thm_Aa_eq_Aa2", [("trivial", m)])
    assert entry["verdict"] == PASS
    assert entry["instances_checked"] > 0


def test_thm_3_on_t_and_e2(t, e2):
    assert check_equivalence("thm_3", [("t", t)])["verdict"] == PASS
    assert not is_intra_regular(e2)
    entry = check_equivalence("thm_3", [("e2", e2)])
    assert entry["verdict"] == PASS
    assert entry["magmas_checked"] == 1


def test_e2_alone_skips_regular_checks(e2):
    report = run_all(0, magmas=[("e2", e2)])
    for cid in ("lem_fgh", "lem_idem", "lem_qw", "thm_semilattice", "thm_c1", "thm_ki", "lem_2"):
        assert report.verdict(cid) == SKIPPED
    for cid in ("lem_as", "lem_qer", "lem_00", "lem_1", "thm_3"):
        assert report.verdict(cid) == PASS
    # skipped checks do not fail a run
    assert set(report.failures()) == EXPECTED_RED


def test_lem_fgh_instances_include_delta(ex):
    entry = check_universal("lem_fgh", [("ex", ex)])
    assert entry["verdict"] == PASS
    # at least the 15 constant IFSs are two-sided ideals, so never only delta
    assert entry["instances_checked"] >= 15 * 15


# --- hypothesis filters ---------------------------------------------------------

def test_hypothesis_filters(small_classes, ex, e2, t):
    direct = {
        LI: lambda m: bool(left_identities(m)),
        REG: is_regular,
        INTRA: is_intra_regular,
        DUO: is_left_duo,
        BAND: is_ag_band,
        NOT_REG: lambda m: not is_regular(m),
        NOT_INTRA: lambda m: not is_intra_regular(m),
    }
    for m in list(small_classes) + [ex, e2, t]:
        prof = Profile(m, CRISP_GRID)
        for check in CHECKS.values():
            for clause in check.clauses:
                want = all(direct[h](m) for h in clause.hypotheses)
                assert clause.applies(prof) == want, (check.id, clause.label)


# --- full runs --------------------------------------------------------------------

def test_order_two_run(report2):
    assert set(report2.failures()) == EXPECTED_RED
    assert set(report2) == set(CHECK_IDS)
    for cid in report2:
        entry = report2[cid]
        assert set(entry) >= {"verdict", "instances_checked", "elapsed_ms"}


def test_failed_entries_replay(report2):
    for cid in report2.failures():
        entry = report2[cid]
        assert replay(cid, entry["counterexample"])
        for cx in entry.get("clause_counterexamples", {}).values():
            assert replay(cid, cx)


def test_replay_of_passing_instance_is_false(ex):
    a = make_ifs([1, 0, 0, 0, 0], [0, 1, 1, 1, 1])
    cx = {"clause": "two-sided => delta identity", "magma": ex.to_text(), "ifs": [a.to_literal()], "grid": ""}
    assert not replay("lem_qw", cx)


def test_idempotency_converse_counterexample():
    m = parse_cayley_table(IDEMPOTENT_RIGHT_IDEALS)
    assert left_identity(m) == 3 and not is_intra_regular(m)
    # crisp view: every right ideal R has R R = R
    for r in all_ideals(m, "right"):
        assert subset_product(m, r, r) == r
    for cid in ("thm_left_idem", "thm_SA_squared"):
        entry = check_equivalence(cid, [("cx", m)])
        assert entry["verdict"] == FAIL
        assert {"right: converse on grid", "two_sided: converse on grid"} <= set(entry["failed_clauses"])
        assert "left: converse on grid" not in entry["failed_clauses"]
        for cx in entry["clause_counterexamples"].values():
            assert replay(cid, cx)


def test_parallel_equals_serial():
    serial = run_all(2)
    parallel = run_all(2, workers=2)
    assert list(serial) == list(parallel)
    for cid in serial:
        assert strip_timing(serial[cid]) == strip_timing(parallel[cid])


# --- report ---------------------------------------------------------------------

def test_json_round_trip(report2):
    text = report2.to_json()
    again = TheoremReport.from_json(text)
    assert again.to_json() == text
    data = json.loads(text)
    cx = data["thm_left_idem"]["counterexample"]
    parse_cayley_table(cx["magma"])
    assert cx["ifs"][0].startswith("mu: ")


def test_from_json_rejects_non_object():
    with pytest.raises(ValueError):
        TheoremReport.from_json("[]")


def test_merge_is_commutative_and_associative(ex, e2, t):
    parts = [run_all(0, magmas=[(n, m)], only=["thm_3", "lem_qw", "thm_left_idem"]) for n, m in
             (("ex", ex), ("e2", e2), ("cx", parse_cayley_table(IDEMPOTENT_RIGHT_IDEALS)))]
    a, b, c = parts

    def norm(r):
        return {k: strip_timing(v) for k, v in r.entries.items()}

    assert norm(a.merge(b)) == norm(b.merge(a))
    assert norm(a.merge(b).merge(c)) == norm(a.merge(b.merge(c)))
    merged = a.merge(b).merge(c)
    assert merged.verdict("thm_left_idem") == FAIL
    assert merged.verdict("lem_qw") == PASS
    total = sum(p["thm_3"]["instances_checked"] for p in parts)
    assert merged["thm_3"]["instances_checked"] == total


def test_merge_entries_verdicts():
    def e(v):
        return {"verdict": v, "instances_checked": 1, "elapsed_ms": 1.0}

    assert merge_entries(e(SKIPPED), e(SKIPPED))["verdict"] == SKIPPED
    assert merge_entries(e(SKIPPED), e(PASS))["verdict"] == PASS
    assert merge_entries(e(PASS), e(FAIL))["verdict"] == FAIL


# --- stated counterexamples ---------------------------------------------------------

def claims(sc):
    return {c.text: c for c in sc.claims}


def test_scenario_names():
    assert SCENARIOS == ("aw", "fgh", "qer", "c1", "cor11")
    assert [sc.name for sc in all_scenarios()] == list(SCENARIOS)
    with pytest.raises(KeyError):
        scenario("zz")


def test_aw_scenario():
    sc = scenario("aw")
    c = claims(sc)
    assert c["S is regular"].holds
    assert not c["A is an IFS (mu + gamma <= 1)"].holds
    assert not c["A(x) != A(x^2) for some x"].holds
    assert sc.converse_refuted and "x=e" in sc.converse_detail


def test_fgh_scenario():
    sc = scenario("fgh")
    c = claims(sc)
    assert c["S is not regular"].holds
    assert c["A is an IFS (mu + gamma <= 1)"].holds and c["B is an IFS (mu + gamma <= 1)"].holds
    assert not c["A is a two-sided ideal"].holds
    assert not c["A o B = A cap B pointwise"].holds
    assert "differ at a,b" in c["A o B = A cap B pointwise"].detail
    assert sc.converse_refuted is False


def test_qer_scenario():
    sc = scenario("qer")
    c = claims(sc)
    assert c["A is a left ideal"].holds
    assert c["A is not a right ideal"].holds
    assert c["A is not a right ideal"].detail == "first violating pair (b,d)"
    assert c["mu(bd) < mu(b)"].holds and c["gamma(cd) > gamma(c)"].holds
    assert not c["A is an IFS (mu + gamma <= 1)"].holds
    assert sc.converse_refuted


def test_c1_scenario():
    sc = scenario("c1")
    c = claims(sc)
    assert c["A(ab) = A(ba) for all a, b"].holds
    assert c["A is not a two-sided ideal"].holds
    assert not c["A is an IFS (mu + gamma <= 1)"].holds
    assert sc.converse_refuted


def test_cor11_scenario():
    sc = scenario("cor11")
    c = claims(sc)
    assert not c["A is a right ideal"].holds
    assert not c["A is a left ideal"].holds
    assert c["A is not semiprime"].holds
    assert c["mu(c) < mu(c^2) and gamma(c) > gamma(c^2)"].holds
    assert not c["every crisp left ideal is semiprime"].holds
    assert sc.converse_refuted is False


def test_scenario_serialization():
    d = scenario("qer").to_dict()
    assert set(d) == {"table", "ifs", "reproduced", "claims", "converse_refuted", "converse_detail"}
    assert d["ifs"][0] == stated_ifs("qer_left_not_right").to_literal()
    json.dumps(d)
