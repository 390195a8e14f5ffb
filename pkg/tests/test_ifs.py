from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aglab.fixtures import example, stated_ifs
from aglab.ifs import (
    CRISP_GRID,
    DEFAULT_GRID,
    IFS,
    IFSError,
    ValueGrid,
    characteristic,
    delta,
    format_rat,
    grid_count,
    grid_enumerate,
    if_left_ideal_violation,
    if_right_ideal_violation,
    if_semiprime_violation,
    ifs_intersect,
    ifs_leq,
    ifs_product,
    ifs_union,
    is_idempotent,
    is_if_semiprime,
    make_ifs,
    parse_ifs,
    rat,
    sum_violations,
    FUZZY_PREDICATES,
)
from aglab.magma import left_identity, mask_from_labels, subset_product


@st.composite
def ifs_of(draw, n):
    mu, gamma = [], []
    for _ in range(n):
        m = draw(st.fractions(0, 1, max_denominator=12))
        g = draw(st.fractions(0, 1 - m, max_denominator=12))
        mu.append(m)
        gamma.append(g)
    return IFS(tuple(mu), tuple(gamma))


# --- construction -------------------------------------------------------------

def test_rat_is_exact():
    assert rat("0.3") == F(3, 10)
    assert rat("1/4") == F(1, 4)
    assert rat(1) == 1
    assert format_rat(F(3, 10)) == "3/10"


def test_rat_rejects_floats_and_out_of_range():
    with pytest.raises(TypeError):
        rat(0.3)
    with pytest.raises(IFSError):
        rat("1.2")
    with pytest.raises(IFSError):
        rat("x")


def test_sum_over_one_is_reported_at_element():
    with pytest.raises(IFSError) as err:
        make_ifs(["0.8", 0], ["0.3", 0])
    assert err.value.element == 0


def test_stated_ex_ideal_is_not_a_valid_ifs():
    # mu(a) + gamma(a) = 1.3
    with pytest.raises(IFSError) as err:
        make_ifs([1, 0, 0, 0, 0], ["0.3", "0.4", "0.2", "0.2", "0.2"])
    assert err.value.element == 0
    assert sum_violations(stated_ifs("ex_ideal")) == [0]


def test_zero_ifs_and_order_check():
    z = make_ifs([0, 0], [0, 0], order=2)
    assert z.order == 2
    with pytest.raises(IFSError):
        make_ifs([0], [0], order=2)
    with pytest.raises(IFSError):
        make_ifs([0, 0], [0])


def test_literal_round_trip():
    a = make_ifs(["0.2", "1/3"], ["0.5", "0"])
    assert parse_ifs(a.to_literal()) == a
    assert parse_ifs("# c\nmu: 0.2 1/3\ngamma: 1/2 0\n") == a


@pytest.mark.parametrize("text", ["mu: 0\n", "mu: 0\nmu: 0\ngamma: 0\n", "nu: 1\n", "mu: 1\ngamma: 1\n"])
def test_bad_literals(text):
    with pytest.raises(IFSError):
        parse_ifs(text)


def test_unchecked_still_validates_grades():
    with pytest.raises(IFSError):
        IFS.unchecked(["2"], ["0"])
    with pytest.raises(IFSError):
        IFS.unchecked(["0"], ["0", "0"])


# --- characteristic functions and delta ---------------------------------------

def test_characteristic_and_delta():
    assert characteristic(0b11111, 5) == delta(5)
    empty = characteristic(0, 3)
    assert empty.mu == (0, 0, 0) and empty.gamma == (1, 1, 1)
    d = delta(5)
    assert d.mu == (1,) * 5 and d.gamma == (0,) * 5


@given(st.integers(0, 31))
def test_characteristic_complement(mask):
    assert characteristic(mask, 5).gamma == characteristic(31 & ~mask, 5).mu


@given(ifs_of(4))
def test_delta_contains_everything(a):
    assert ifs_leq(a, delta(4))


# --- lattice operations -------------------------------------------------------

@given(ifs_of(3), ifs_of(3))
def test_lattice_laws(a, b):
    assert ifs_intersect(a, a) == a and ifs_union(a, a) == a
    assert ifs_intersect(a, b) == ifs_intersect(b, a)
    assert ifs_leq(ifs_intersect(a, b), a)
    assert ifs_leq(a, ifs_union(a, b))
    assert ifs_union(a, ifs_intersect(a, b)) == a


def test_intersect_on_singletons():
    assert ifs_intersect(characteristic(1, 5), characteristic(3, 5)) == characteristic(1, 5)


def test_intersect_of_stated_pair_at_d():
    a, b = stated_ifs("fgh_A"), stated_ifs("fgh_B")
    c = ifs_intersect(a, b)
    assert c(3) == (F(1, 10), F(6, 10))


def test_order_mismatch():
    with pytest.raises(IFSError):
        ifs_intersect(delta(2), delta(3))


# --- product -------------------------------------------------------------------

def test_product_of_characteristics_on_e2(e2):
    d, b = mask_from_labels(e2, "d"), mask_from_labels(e2, "b")
    assert ifs_product(e2, characteristic(d, 5), characteristic(b, 5)) == characteristic(b, 5)


def test_zero_membership_absorbs(ex):
    bottom = characteristic(0, 5)
    out = ifs_product(ex, bottom, delta(5))
    assert out.mu == (0,) * 5 and out.gamma == (1,) * 5


@given(ifs_of(5))
def test_delta_product_dominates_with_left_identity(a):
    ex = example("ex")
    assert left_identity(ex) == 3
    assert ifs_leq(a, ifs_product(ex, delta(5), a))


@given(ifs_of(5), ifs_of(5))
@settings(max_examples=60)
def test_product_is_valid_and_monotone(a, b):
    e2 = example("e2")
    p = ifs_product(e2, a, b)
    assert not sum_violations(p)
    assert ifs_leq(ifs_product(e2, ifs_intersect(a, b), b), p)


@given(st.integers(1, 31), st.integers(1, 31))
def test_characteristic_product_law(x, y):
    for name in ("ex", "e2", "t"):
        m = example(name)
        got = ifs_product(m, characteristic(x, 5), characteristic(y, 5))
        assert got == characteristic(subset_product(m, x, y), 5)


# --- predicates ---------------------------------------------------------------

def test_delta_satisfies_every_predicate(ex, e2, t):
    for m in (ex, e2, t):
        for pred in FUZZY_PREDICATES.values():
            assert pred(m, delta(5))
        assert is_if_semiprime(m, delta(5))
        assert is_idempotent(m, delta(5))


def test_qer_values(e2):
    a = stated_ifs("qer_left_not_right")
    assert if_left_ideal_violation(e2, a) is None
    assert if_right_ideal_violation(e2, a) == (1, 3)
    assert a.mu[e2.mul(1, 3)] < a.mu[1]


def test_cor11_values(e2):
    a = stated_ifs("cor11_converse")
    c = 2
    assert e2.square(c) == 4
    assert a.mu[c] < a.mu[4]
    # b also squares to e, and comes first
    assert if_semiprime_violation(e2, a) == (1,)


@given(st.integers(1, 31))
def test_crisp_bridge_on_examples(mask):
    from aglab.magma import CRISP_PREDICATES, is_semiprime_subset

    for name in ("ex", "e2", "t"):
        m = example(name)
        chi = characteristic(mask, 5)
        for kind, crisp in CRISP_PREDICATES.items():
            assert crisp(m, mask) == FUZZY_PREDICATES[kind](m, chi)
        assert is_semiprime_subset(m, mask) == is_if_semiprime(m, chi)


# --- grids ----------------------------------------------------------------------

def test_grid_pairs():
    g = ValueGrid.parse("0,1/2,1")
    h = F(1, 2)
    assert g.pairs() == [(0, 0), (0, h), (0, 1), (h, 0), (h, h), (1, 0)]
    assert grid_count(1, g) == 6 and grid_count(2, g) == 36
    assert len(list(grid_enumerate(2, g))) == 36


def test_crisp_grid_counts():
    for n in range(1, 4):
        items = list(grid_enumerate(n, CRISP_GRID))
        assert len(items) == 3 ** n
        assert all(set(a.mu) | set(a.gamma) <= {0, 1} for a in items)


def test_default_grid():
    assert str(DEFAULT_GRID) == "0,1/4,1/2,3/4,1"
    assert len(DEFAULT_GRID.pairs()) == 15
    assert ValueGrid.parse(str(DEFAULT_GRID)) == DEFAULT_GRID


def test_grid_needs_endpoints():
    with pytest.raises(IFSError):
        ValueGrid.parse("0,1/2")
