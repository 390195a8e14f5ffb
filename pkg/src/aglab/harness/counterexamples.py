"""Replays the five worked counterexamples against their stated values.

Each scenario lists the properties claimed for the stated IFS(s), each one
evaluated exactly.  A scenario is *reproduced* when every claim holds.
Independently of the stated values, each scenario also records whether the
converse it targets is refuted by some other instance (a valid grid IFS or a
crisp argument), since several stated assignments do not do the job.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..fixtures import example, stated_ifs
from ..ifs import (
    IFS,
    format_rat,
    if_left_ideal_violation,
    if_right_ideal_violation,
    if_semiprime_violation,
    ifs_intersect,
    ifs_product,
    is_if_left_ideal,
    is_if_right_ideal,
    is_if_semiprime,
    is_if_two_sided,
    sum_violations,
)
from ..magma import (
    FiniteMagma,
    IdealKind,
    all_ideals,
    format_subset,
    is_regular,
    is_semiprime_subset,
    left_identity,
)
from . import props as P
from .checks import PairSweep
from .profile import Profile

SCENARIOS = ("aw", "fgh", "qer", "c1", "cor11")


@dataclass
class Claim:
    text: str
    holds: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"claim": self.text, "holds": self.holds, "detail": self.detail}


@dataclass
class Scenario:
    name: str
    table: str
    magma: FiniteMagma
    ifs: tuple[IFS, ...]
    claims: list[Claim] = field(default_factory=list)
    # does some instance (not necessarily the stated one) refute the converse?
    converse_refuted: bool | None = None
    converse_detail: str = ""

    @property
    def reproduced(self) -> bool:
        return all(c.holds for c in self.claims)

    def claim(self, text: str, holds: bool, detail: str = "") -> None:
        self.claims.append(Claim(text, bool(holds), detail))

    def to_dict(self) -> dict:
        return {
            "table": self.table,
            "ifs": [a.to_literal() for a in self.ifs],
            "reproduced": self.reproduced,
            "claims": [c.to_dict() for c in self.claims],
            "converse_refuted": self.converse_refuted,
            "converse_detail": self.converse_detail,
        }


def _labels(m: FiniteMagma, xs) -> str:
    return ",".join(m.label(x) for x in xs) or "none"


def _pair(m: FiniteMagma, hit) -> str:
    return "none" if hit is None else "(" + ",".join(m.label(x) for x in hit) + ")"


def _values(a: IFS) -> str:
    return "mu=(" + " ".join(map(format_rat, a.mu)) + ") gamma=(" + " ".join(map(format_rat, a.gamma)) + ")"


def _valid_claim(sc: Scenario, a: IFS, name: str = "A") -> None:
    bad = sum_violations(a)
    sc.claim(f"{name} is an IFS (mu + gamma <= 1)", not bad,
             f"mu + gamma > 1 at {_labels(sc.magma, bad)}" if bad else "")


def _first_grid(prof: Profile, mask: np.ndarray) -> IFS | None:
    idx = np.flatnonzero(mask)
    return prof.batch.row(int(idx[0])) if len(idx) else None


def _aw() -> Scenario:
    m = example("ex")
    a = stated_ifs("aw_converse")
    sc = Scenario("aw", "ex", m, (a,))
    sc.claim("S is regular", is_regular(m))
    sc.claim("S has a left identity", left_identity(m) is not None)
    _valid_claim(sc, a)
    moved = [x for x in range(m.order) if a(x) != a(m.square(x))]
    note = "a*a = a, so a itself cannot witness" if m.square(0) == 0 else ""
    sc.claim("A(x) != A(x^2) for some x", bool(moved),
             f"witnessing elements: {_labels(m, moved)}" + (f"; {note}" if note else ""))
    prof = Profile(m)
    w = _first_grid(prof, ~prof.mask(P.SQUARE_INVARIANT))
    sc.converse_refuted = w is not None
    if w is not None:
        x = next(x for x in range(m.order) if w(x) != w(m.square(x)))
        sc.converse_detail = f"grid IFS {_values(w)} has A(x) != A(x^2) at x={m.label(x)}"
    return sc


def _fgh() -> Scenario:
    m = example("e2")
    a, b = stated_ifs("fgh_A"), stated_ifs("fgh_B")
    sc = Scenario("fgh", "e2", m, (a, b))
    sc.claim("S is not regular", not is_regular(m))
    _valid_claim(sc, a, "A")
    _valid_claim(sc, b, "B")
    for name, x in (("A", a), ("B", b)):
        lv, rv = if_left_ideal_violation(m, x), if_right_ideal_violation(m, x)
        sc.claim(f"{name} is a two-sided ideal", lv is None and rv is None,
                 f"left violation {_pair(m, lv)}, right violation {_pair(m, rv)}")
    ab, meet = ifs_product(m, a, b), ifs_intersect(a, b)
    diff = [x for x in range(m.order) if ab(x) != meet(x)]
    same_sets = set(ab.mu) == set(meet.mu)
    sc.claim("A o B = A cap B pointwise", not diff,
             f"A o B: {_values(ab)}; A cap B: {_values(meet)}; differ at {_labels(m, diff)}"
             + ("; the sets of mu values coincide" if same_sets else ""))
    prof = Profile(m)
    n, v = PairSweep("", frozenset(), P.TWO, P.TWO, P.PRODUCT_IS_MEET).run(prof)
    sc.converse_refuted = v is None and n > 0
    sc.converse_detail = (
        f"all {n} pairs of grid two-sided ideals satisfy A o B = A cap B on this non-regular magma"
        if v is None else "some grid pair of two-sided ideals has A o B != A cap B"
    )
    return sc


def _qer() -> Scenario:
    m = example("e2")
    a = stated_ifs("qer_left_not_right")
    sc = Scenario("qer", "e2", m, (a,))
    sc.claim("S has a left identity", left_identity(m) is not None)
    _valid_claim(sc, a)
    lv = if_left_ideal_violation(m, a)
    sc.claim("A is a left ideal", lv is None, f"left violation {_pair(m, lv)}")
    rv = if_right_ideal_violation(m, a)
    sc.claim("A is not a right ideal", rv is not None, f"first violating pair {_pair(m, rv)}")
    b, c, d = 1, 2, 3
    sc.claim("mu(bd) < mu(b)", a.mu[m.mul(b, d)] < a.mu[b])
    sc.claim("gamma(cd) > gamma(c)", a.gamma[m.mul(c, d)] > a.gamma[c])
    prof = Profile(m)
    w = _first_grid(prof, prof.mask(P.LEFT) & ~prof.mask(P.RIGHT))
    sc.converse_refuted = w is not None
    if w is not None:
        sc.converse_detail = f"grid IFS {_values(w)} is a left ideal and not a right ideal"
    return sc


def _c1() -> Scenario:
    m = example("ex")
    a = stated_ifs("c1_converse")
    sc = Scenario("c1", "ex", m, (a,))
    sc.claim("S is regular", is_regular(m))
    _valid_claim(sc, a)
    hit = P._commutes_locate(m, a)
    sc.claim("A(ab) = A(ba) for all a, b", hit is None, f"first failing pair {_pair(m, hit)}")
    sc.claim("A is not a two-sided ideal", not is_if_two_sided(m, a))
    c, d, e = 2, 3, 4
    sc.claim("mu(cc) < mu(c)", a.mu[m.mul(c, c)] < a.mu[c])
    sc.claim("gamma(ed) > gamma(d)", a.gamma[m.mul(e, d)] > a.gamma[d])
    prof = Profile(m)
    w = _first_grid(prof, prof.mask(P.COMMUTES) & ~prof.mask(P.TWO))
    sc.converse_refuted = w is not None
    if w is not None:
        sc.converse_detail = f"grid IFS {_values(w)} has A(ab) = A(ba) everywhere and is not two-sided"
    return sc


def _cor11() -> Scenario:
    m = example("e2")
    a = stated_ifs("cor11_converse")
    sc = Scenario("cor11", "e2", m, (a,))
    for kind in (IdealKind.LEFT, IdealKind.RIGHT, IdealKind.TWO_SIDED):
        ideals = all_ideals(m, kind)
        sc.claim(f"every crisp {kind.value} ideal is semiprime", all(is_semiprime_subset(m, s) for s in ideals),
                 "; ".join(format_subset(m, s) for s in ideals))
    _valid_claim(sc, a)
    rv, lv = if_right_ideal_violation(m, a), if_left_ideal_violation(m, a)
    sc.claim("A is a right ideal", is_if_right_ideal(m, a), f"right violation {_pair(m, rv)}")
    sc.claim("A is a left ideal", is_if_left_ideal(m, a), f"left violation {_pair(m, lv)}")
    sc.claim("A is a two-sided ideal", is_if_two_sided(m, a))
    sv = if_semiprime_violation(m, a)
    sc.claim("A is not semiprime", not is_if_semiprime(m, a), f"first violation at {_pair(m, sv)}")
    c = 2
    c2 = m.square(c)
    sc.claim("mu(c) < mu(c^2) and gamma(c) > gamma(c^2)", a.mu[c] < a.mu[c2] and a.gamma[c] > a.gamma[c2],
             f"c^2 = {m.label(c2)}")
    prof = Profile(m)
    found = []
    for kind, prop in P.IDEAL_PROPS.items():
        if not all(is_semiprime_subset(m, s) for s in all_ideals(m, kind)):
            continue  # the converse's hypothesis fails for this kind
        w = _first_grid(prof, prof.mask(prop) & ~prof.mask(P.SEMIPRIME))
        if w is not None:
            found.append(f"{kind}: {_values(w)}")
    sc.converse_refuted = bool(found)
    sc.converse_detail = "; ".join(found) if found else (
        "no grid IFS refutes it: for each kind either some crisp ideal is not semiprime, "
        "or every grid ideal of that kind is semiprime"
    )
    return sc


_BUILDERS = {"aw": _aw, "fgh": _fgh, "qer": _qer, "c1": _c1, "cor11": _cor11}


def scenario(name: str) -> Scenario:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown scenario {name!r}; choose from {', '.join(SCENARIOS)}") from None


def all_scenarios() -> list[Scenario]:
    return [scenario(name) for name in SCENARIOS]
