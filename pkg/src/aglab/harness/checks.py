"""The check registry: every verified statement as a list of clauses.

A clause is one machine-checkable piece of a statement.  It declares the
structural hypotheses a magma must meet (see :mod:`.profile`) and, when run
on a :class:`Profile`, returns how many instances it examined together with
the first violation found, if any.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .. import batch as B
from ..ifs import IFS, ValueGrid, characteristic
from ..magma import (
    CRISP_PREDICATES,
    FiniteMagma,
    IdealKind,
    elements_of,
    is_left_ideal,
    is_right_ideal,
    is_semiprime_subset,
    principal_left,
    square_times_s,
    subset_product,
)
from . import props as P
from .profile import BAND, DUO, INTRA, LI, NOT_INTRA, NOT_REG, REG, Profile

# rows per vectorized block in pair sweeps
BLOCK_ROWS = 1 << 17
# associativity is checked on all triples up to this many two-sided ideals,
# and on a seeded sample of triples beyond it
EXHAUSTIVE_TRIPLES_K = 96
SAMPLED_TRIPLES = 4096


class UnknownCheck(KeyError):
    pass


@dataclass
class Violation:
    clause: str
    magma: FiniteMagma
    ifs: tuple[IFS, ...] = ()
    where: tuple[int, ...] | None = None
    detail: str = ""


@dataclass(frozen=True)
class Clause:
    label: str
    hypotheses: frozenset = frozenset()

    def applies(self, prof: Profile) -> bool:
        return prof.satisfies(self.hypotheses)

    def run(self, prof: Profile) -> tuple[int, Violation | None]:
        raise NotImplementedError

    def replay(self, m: FiniteMagma, ifs: tuple[IFS, ...], grid: ValueGrid) -> bool:
        """True when the stored counterexample is still a violation."""
        raise NotImplementedError


def _all(prof: Profile, props) -> np.ndarray:
    out = np.ones(len(prof.batch), dtype=bool)
    for p in props:
        out &= prof.mask(p)
    return out


@dataclass(frozen=True)
class Implication(Clause):
    """premise => conclusion over every grid IFS; with ``iff`` both ways."""

    premise: tuple = ()
    conclusion: P.Prop | None = None
    iff: bool = False

    def run(self, prof):
        b = prof.batch
        if self.iff:
            bad = np.flatnonzero(_all(prof, self.premise) != prof.mask(self.conclusion))
            instances = len(b)
        else:
            idx = np.flatnonzero(_all(prof, self.premise))
            instances = len(idx)
            bad = idx[~prof.evaluate(self.conclusion, idx)] if len(idx) else idx
        if not len(bad):
            return instances, None
        a = b.row(int(bad[0]))
        return instances, self._violation(prof.magma, a)

    def _violation(self, m, a):
        if self.conclusion.scalar(m, a):
            failing = next(p for p in self.premise if not p.scalar(m, a))
            detail = f"{self.conclusion.name} holds but {failing.name} fails"
            where = failing.where(m, a)
        else:
            detail = f"{' & '.join(p.name for p in self.premise)} holds but {self.conclusion.name} fails"
            where = self.conclusion.where(m, a)
        return Violation(self.label, m, (a,), where, detail)

    def replay(self, m, ifs, grid):
        (a,) = ifs
        lhs = all(p.scalar(m, a) for p in self.premise)
        rhs = self.conclusion.scalar(m, a)
        return lhs != rhs if self.iff else lhs and not rhs


@dataclass(frozen=True)
class PairSweep(Clause):
    """relation(A, B) for every grid A with ``left`` and B with ``right``."""

    left: P.Prop | None = None
    right: P.Prop | None = None
    relation: P.Relation | None = None

    def run(self, prof):
        b = prof.batch
        ia = prof.members(self.left)
        ib = prof.members(self.right)
        kb = len(ib)
        if not len(ia) or not kb:
            return 0, None
        step = max(1, BLOCK_ROWS // kb)
        for lo in range(0, len(ia), step):
            chunk = ia[lo:lo + step]
            lhs = b.take(np.repeat(chunk, kb))
            rhs = b.take(np.tile(ib, len(chunk)))
            ok = self.relation.batch(prof, lhs, rhs)
            if not ok.all():
                k = int(np.argmin(ok))
                pair = (b.row(int(chunk[k // kb])), b.row(int(ib[k % kb])))
                return len(ia) * kb, Violation(self.label, prof.magma, pair, None, f"{self.relation.name} fails")
        return len(ia) * kb, None

    def replay(self, m, ifs, grid):
        a, c = ifs
        return self.left.scalar(m, a) and self.right.scalar(m, c) and not self.relation.scalar(m, a, c)


@dataclass(frozen=True)
class Structural(Clause):
    """Arbitrary magma-level check; ``fn`` returns (instances, violation)."""

    fn: Callable[[Profile, str], tuple[int, Violation | None]] | None = field(default=None, compare=False)

    def run(self, prof):
        return self.fn(prof, self.label)

    def replay(self, m, ifs, grid):
        return self.fn(Profile(m, grid), self.label)[1] is not None


@dataclass(frozen=True)
class Check:
    id: str
    kind: str  # universal | equivalence | replay
    summary: str
    clauses: tuple[Clause, ...]

    def clause(self, label: str) -> Clause:
        for c in self.clauses:
            if c.label == label:
                return c
        raise KeyError(f"{self.id} has no clause {label!r}")


# ---------------------------------------------------------------------------
# Structural clause builders

def _h(*flags) -> frozenset:
    return frozenset(flags)


def _implies(label, hyps, premise, conclusion, iff=False) -> Implication:
    if not isinstance(premise, tuple):
        premise = (premise,)
    return Implication(label, _h(*hyps), premise, conclusion, iff)


def _witness_set(kind: str, target: P.Prop):
    # the sets the (<=) proofs characterize: Sa for left ideals when the
    # target is an idempotency law, a^2 S otherwise
    if kind == "left" and target in (P.IDEMPOTENT, P.SA_SQUARED):
        return "Sa", principal_left
    return "a^2S", square_times_s


def _grid_forces(kind: str, target: P.Prop):
    """Not intra-regular => some grid ``kind`` ideal fails ``target``."""

    def fn(prof, label):
        idx = prof.members(P.IDEAL_PROPS[kind])
        ok = prof.evaluate(target, idx)
        if ok.all():
            a = prof.non_intra[0]
            return len(idx), Violation(
                label, prof.magma, (), (a,),
                f"{prof.magma.label(a)} is not intra-regular, yet every grid {kind} ideal satisfies {target.name}",
            )
        return len(idx), None

    return fn


def _proof_witness(kind: str, target: P.Prop):
    """For each non-intra-regular a, chi of the witness set is a ``kind`` ideal failing ``target``."""
    name, build = _witness_set(kind, target)
    ideal = P.IDEAL_PROPS[kind]

    def fn(prof, label):
        m = prof.magma
        for a in prof.non_intra:
            w = characteristic(build(m, a), m.order)
            is_ideal, holds = ideal.scalar(m, w), target.scalar(m, w)
            if not is_ideal or holds:
                return len(prof.non_intra), Violation(
                    label, m, (w,), (a,),
                    f"a={m.label(a)} is not intra-regular; chi({name}) is a {kind} ideal: {is_ideal}, "
                    f"satisfies {target.name}: {holds}",
                )
        return len(prof.non_intra), None

    return fn


def _characterization(kinds, target: P.Prop) -> list[Clause]:
    """(intra-regular => every X ideal has target) and its converse, per kind."""
    out: list[Clause] = []
    for kind in kinds:
        ideal = P.IDEAL_PROPS[kind]
        out.append(_implies(f"{kind}: intra-regular => {target.name}", (INTRA, LI), ideal, target))
        out.append(Structural(f"{kind}: converse on grid", _h(LI, NOT_INTRA), _grid_forces(kind, target)))
        name, _ = _witness_set(kind, target)
        out.append(Structural(f"{kind}: converse via chi({name})", _h(LI, NOT_INTRA), _proof_witness(kind, target)))
    return out


def _aw_grid(prof, label):
    n = len(prof.batch)
    if prof.mask(P.SQUARE_INVARIANT).all() and REG not in prof.flags:
        return n, Violation(label, prof.magma, (), None, "A(x)=A(x^2) for every grid IFS, yet not regular")
    return n, None


def _aw_witness(prof, label):
    m = prof.magma
    for x in prof.non_regular:
        s = square_times_s(m, x)
        if s >> x & 1 or not s >> m.square(x) & 1:
            w = characteristic(s, m.order)
            return len(prof.non_regular), Violation(
                label, m, (w,), (x,), f"chi(x^2S) does not separate x={m.label(x)} from x^2",
            )
    return len(prof.non_regular), None


def _crisp_bridge(prof, label):
    m = prof.magma
    subsets = range(1, 1 << m.order)
    chars = prof.characteristic(subsets)
    instances = 0
    for kind in IdealKind:
        fuzzy = prof.preds.mask(kind.value, chars)
        crisp = CRISP_PREDICATES[kind]
        for k, a in enumerate(subsets):
            instances += 1
            if crisp(m, a) != bool(fuzzy[k]):
                return instances, Violation(label, m, (characteristic(a, m.order),), tuple(elements_of(a)), f"{kind.value}: crisp and fuzzy disagree")
    return instances, None


def _product_bridge(prof, label):
    m = prof.magma
    subsets = list(range(1, 1 << m.order))
    chars = prof.characteristic(subsets)
    k = len(subsets)
    lhs = B.product(prof.plan, chars.take(np.repeat(np.arange(k), k)), chars.take(np.tile(np.arange(k), k)))
    rhs = prof.characteristic([subset_product(m, a, c) for a in subsets for c in subsets])
    ok = B.equal(lhs, rhs)
    if not ok.all():
        i = int(np.argmin(ok))
        a, c = subsets[i // k], subsets[i % k]
        return k * k, Violation(label, m, (characteristic(a, m.order), characteristic(c, m.order)), None, "chi_A o chi_B != chi_AB")
    return k * k, None


def _semiprime_bridge(prof, label):
    m = prof.magma
    subsets = range(1, 1 << m.order)
    fuzzy = prof.preds.mask("semiprime", prof.characteristic(subsets))
    for k, a in enumerate(subsets):
        if is_semiprime_subset(m, a) != bool(fuzzy[k]):
            return k + 1, Violation(label, m, (characteristic(a, m.order),), tuple(elements_of(a)), "semiprime: crisp and fuzzy disagree")
    return len(subsets), None


def _cor11(kind: str):
    crisp = CRISP_PREDICATES[IdealKind(kind)]

    def fn(prof, label):
        m = prof.magma
        idx = prof.members(P.IDEAL_PROPS[kind])
        if not prof.mask(P.SEMIPRIME)[idx].all():
            return len(idx), None
        for a in range(1, 1 << m.order):
            if crisp(m, a) and not is_semiprime_subset(m, a):
                return len(idx), Violation(
                    label, m, (characteristic(a, m.order),), tuple(elements_of(a)),
                    f"every grid {kind} ideal is semiprime but this crisp {kind} ideal is not",
                )
        return len(idx), None

    return fn


def _crisp_rl_condition(m: FiniteMagma) -> bool:
    rights = [a for a in range(1, 1 << m.order) if is_right_ideal(m, a)]
    lefts = [a for a in range(1, 1 << m.order) if is_left_ideal(m, a)]
    if not all(is_semiprime_subset(m, r) for r in rights):
        return False
    return all(r & l == subset_product(m, r, l) for r in rights for l in lefts)


def _rl_crisp(prof, label):
    m = prof.magma
    intra = INTRA in prof.flags
    if _crisp_rl_condition(m) != intra:
        return 1, Violation(label, m, (), None, f"crisp R cap L = RL condition disagrees with intra-regular={intra}")
    return 1, None


def _rl_grid(prof, label):
    """(iii) must fail somewhere on the grid when S is not intra-regular."""
    rights = prof.members(P.RIGHT)
    if not prof.mask(P.SEMIPRIME)[rights].all():
        return len(rights), None
    n, v = PairSweep("", frozenset(), P.RIGHT, P.LEFT, P.PRODUCT_IS_MEET).run(prof)
    if v is None:
        return n, Violation(label, prof.magma, (), (prof.non_intra[0],), "grid form of R cap L = RL holds without intra-regularity")
    return n, None


def _rl_witness(prof, label):
    m = prof.magma
    for a in prof.non_intra:
        r, l = square_times_s(m, a), principal_left(m, a)
        ok = is_right_ideal(m, r) and is_left_ideal(m, l) and (
            r & l != subset_product(m, r, l) or not is_semiprime_subset(m, r)
        )
        if not ok:
            return len(prof.non_intra), Violation(
                label, m, (characteristic(r, m.order), characteristic(l, m.order)), (a,),
                f"R=a^2S, L=Sa at a={m.label(a)} do not refute the crisp condition",
            )
    return len(prof.non_intra), None


def _seed(m: FiniteMagma) -> int:
    return zlib.crc32(bytes(v for row in m.table for v in row))


def _associativity(prof, label):
    """(A o B) o C = A o (B o C) on the grid two-sided ideals.

    All triples when there are at most ``EXHAUSTIVE_TRIPLES_K`` of them,
    otherwise a seeded sample; in that case associativity also follows from
    the exhaustive pair sweeps (A o B = A cap B and closure).
    """
    b = prof.batch
    idx = prof.members(P.TWO)
    k = len(idx)
    if k == 0:
        return 0, None
    plan = prof.plan
    t = b.take(idx)
    if k <= EXHAUSTIVE_TRIPLES_K:
        rep, til = np.repeat(np.arange(k), k), np.tile(np.arange(k), k)
        bc = B.product(plan, t.take(rep), t.take(til))  # row j*k + l is T_j o T_l
        for i in range(k):
            ti = t.take([i])
            ab = B.product(plan, ti, t)
            lhs = B.product(plan, ab.take(rep), t.take(til))
            rhs = B.product(plan, ti, bc)
            ok = B.equal(lhs, rhs)
            if not ok.all():
                j, l = divmod(int(np.argmin(ok)), k)
                return k ** 3, Violation(label, prof.magma, (t.row(i), t.row(j), t.row(l)), None, "not associative")
        return k ** 3, None
    rng = np.random.default_rng(_seed(prof.magma))
    i, j, l = rng.integers(0, k, size=(3, SAMPLED_TRIPLES))
    ta, tb, tc = t.take(i), t.take(j), t.take(l)
    ok = B.equal(B.product(plan, B.product(plan, ta, tb), tc), B.product(plan, ta, B.product(plan, tb, tc)))
    if not ok.all():
        s = int(np.argmin(ok))
        return SAMPLED_TRIPLES, Violation(label, prof.magma, (ta.row(s), tb.row(s), tc.row(s)), None, "not associative")
    return SAMPLED_TRIPLES, None


def _associativity_replay(m, ifs, grid):
    from ..ifs import ifs_product

    a, b, c = ifs
    return ifs_product(m, ifs_product(m, a, b), c) != ifs_product(m, a, ifs_product(m, b, c))


@dataclass(frozen=True)
class _AssocClause(Structural):
    def replay(self, m, ifs, grid):
        return _associativity_replay(m, ifs, grid) if ifs else super().replay(m, ifs, grid)


# ---------------------------------------------------------------------------
# Registry

_KINDS3 = ("right", "left", "two_sided")


def _registry() -> dict[str, Check]:
    checks = [
        Check("thm_aw", "universal", "left identity: A(x)=A(x^2) for all IFSs A and all x => regular", (
            Structural("grid hypothesis => regular", _h(LI), _aw_grid),
            Structural("converse via chi(x^2S)", _h(LI, NOT_REG), _aw_witness),
        )),
        Check("lem_as", "universal", "ideal conditions as containments of products", (
            _implies("subgroupoid <=> A o A <= A", (), P.SUB, P.AS_SUB, iff=True),
            _implies("left <=> S o A <= A", (), P.LEFT, P.AS_LEFT, iff=True),
            _implies("right <=> A o S <= A", (), P.RIGHT, P.AS_RIGHT, iff=True),
        )),
        Check("lem_fgh", "universal", "regular: A o B = A cap B for two-sided A, B", (
            PairSweep("two-sided pair", _h(REG), P.TWO, P.TWO, P.PRODUCT_IS_MEET),
        )),
        Check("lem_idem", "universal", "regular: two-sided ideals are idempotent", (
            _implies("two-sided => idempotent", (REG,), P.TWO, P.IDEMPOTENT),
        )),
        Check("lem_qw", "universal", "regular: delta is a two-sided identity for two-sided and right ideals", (
            _implies("two-sided => delta identity", (REG,), P.TWO, P.DELTA_IDENTITY),
            _implies("right => delta identity", (REG,), P.RIGHT, P.DELTA_IDENTITY),
        )),
        Check("thm_semilattice", "universal", "regular: two-sided ideals form a semilattice with identity delta", (
            PairSweep("closed under o", _h(REG), P.TWO, P.TWO, P.PRODUCT_TWO_SIDED),
            PairSweep("commutative", _h(REG), P.TWO, P.TWO, P.PRODUCT_COMMUTES),
            _AssocClause("associative", _h(REG), _associativity),
            _implies("idempotent", (REG,), P.TWO, P.IDEMPOTENT),
            _implies("delta identity", (REG,), P.TWO, P.DELTA_IDENTITY),
        )),
        Check("lem_qer", "universal", "left identity: right ideals are left ideals", (
            _implies("right => left", (LI,), P.RIGHT, P.LEFT),
        )),
        Check("lem_ll", "universal", "regular left duo: left ideals are right ideals", (
            _implies("left => right", (REG, DUO), P.LEFT, P.RIGHT),
        )),
        Check("cor_dh", "universal", "regular left duo: left ideals are two-sided", (
            _implies("left => two-sided", (REG, DUO), P.LEFT, P.TWO),
        )),
        Check("thm_c1", "universal", "regular with left identity: A(ab)=A(ba) for two-sided and right ideals", (
            _implies("two-sided => A(ab)=A(ba)", (REG, LI), P.TWO, P.COMMUTES),
            _implies("right => A(ab)=A(ba)", (REG, LI), P.RIGHT, P.COMMUTES),
        )),
        Check("thm_ki", "universal", "regular with left identity: left <=> bi <=> generalized bi", (
            _implies("left <=> bi", (REG, LI), P.LEFT, P.BI, iff=True),
            _implies("left <=> generalized bi", (REG, LI), P.LEFT, P.GBI, iff=True),
        )),
        Check("thm_right_bi_duo", "universal", "regular left duo with left identity: right <=> bi <=> generalized bi", (
            _implies("right <=> bi", (REG, LI, DUO), P.RIGHT, P.BI, iff=True),
            _implies("right <=> generalized bi", (REG, LI, DUO), P.RIGHT, P.GBI, iff=True),
        )),
        Check("thm_asdf", "universal", "regular with left identity: left => (1,2); with left duo also right => (1,2)", (
            _implies("left => (1,2)", (REG, LI), P.LEFT, P.ONE_TWO),
            _implies("left duo: right => (1,2)", (REG, LI, DUO), P.RIGHT, P.ONE_TWO),
        )),
        Check("thm_agband_12_left", "universal", "regular AG-band: (1,2) => left", (
            _implies("(1,2) => left", (REG, BAND), P.ONE_TWO, P.LEFT),
        )),
        Check("thm_agband_12_right", "universal", "regular AG-band: (1,2) => right", (
            _implies("(1,2) => right", (REG, BAND), P.ONE_TWO, P.RIGHT),
        )),
        Check("lem_00", "universal", "crisp ideals match their characteristic IFSs; chi_A o chi_B = chi_AB", (
            Structural("crisp <=> characteristic", _h(), _crisp_bridge),
            Structural("chi_A o chi_B = chi_AB", _h(), _product_bridge),
        )),
        Check("lem_1", "universal", "A semiprime <=> chi_A semiprime", (
            Structural("semiprime bridge", _h(), _semiprime_bridge),
        )),
        Check("cor_11", "universal", "all fuzzy X ideals semiprime => all crisp X ideals semiprime", tuple(
            Structural(f"{kind}", _h(), _cor11(kind)) for kind in _KINDS3
        )),
        Check("lem_2", "universal", "intra-regular with left identity: right, left, two-sided ideals are semiprime", tuple(
            _implies(f"{kind} => semiprime", (INTRA, LI), P.IDEAL_PROPS[kind], P.SEMIPRIME) for kind in _KINDS3
        )),
        Check("thm_3", "equivalence", "left identity: intra-regular <=> every right (left, two-sided) ideal semiprime",
              tuple(_characterization(_KINDS3, P.SEMIPRIME))),
        Check("thm_right_left_semiprime", "equivalence",
              "left identity: intra-regular <=> right ideals semiprime <=> left ideals semiprime",
              tuple(_characterization(("right", "left"), P.SEMIPRIME))),
        Check("thm_RL", "equivalence", "left identity: intra-regular <=> R cap L = RL with R semiprime (crisp and fuzzy)", (
            PairSweep("intra-regular => A o B = A cap B", _h(INTRA, LI), P.RIGHT, P.LEFT, P.PRODUCT_IS_MEET),
            _implies("intra-regular => right semiprime", (INTRA, LI), P.RIGHT, P.SEMIPRIME),
            Structural("crisp condition <=> intra-regular", _h(LI), _rl_crisp),
            Structural("converse on grid", _h(LI, NOT_INTRA), _rl_grid),
            Structural("converse via R=a^2S, L=Sa", _h(LI, NOT_INTRA), _rl_witness),
        )),
        Check("lem_iff", "universal", "intra-regular with left identity: left <=> right", (
            _implies("left <=> right", (INTRA, LI), P.LEFT, P.RIGHT, iff=True),
        )),
        Check("thm_twosided_iff_bi", "universal", "intra-regular with left identity: two-sided <=> bi", (
            _implies("two-sided <=> bi", (INTRA, LI), P.TWO, P.BI, iff=True),
        )),
        Check("thm_twosided_iff_12", "universal", "intra-regular with left identity: two-sided <=> (1,2)", (
            _implies("two-sided <=> (1,2)", (INTRA, LI), P.TWO, P.ONE_TWO, iff=True),
        )),
        Check("thm_bi_iff_gbi", "universal", "intra-regular with left identity: bi <=> generalized bi", (
            _implies("bi <=> generalized bi", (INTRA, LI), P.BI, P.GBI, iff=True),
        )),
        Check("thm_Aa_eq_Aa2", "equivalence", "left identity: intra-regular <=> A(a)=A(a^2) for X ideals",
              tuple(_characterization(_KINDS3, P.SQUARE_INVARIANT))),
        Check("thm_left_idem", "equivalence", "left identity: intra-regular <=> X ideals idempotent",
              tuple(_characterization(("left", "right", "two_sided"), P.IDEMPOTENT))),
        Check("thm_SA_squared", "equivalence", "left identity: intra-regular <=> A = (S o A)^2 for X ideals",
              tuple(_characterization(("left", "right", "two_sided"), P.SA_SQUARED))),
    ]
    return {c.id: c for c in checks}


CHECKS: dict[str, Check] = _registry()

# replayed separately: fixed inputs, no magma stream
COUNTEREXAMPLES_SUITE = "counterexamples_suite"

CHECK_IDS: tuple[str, ...] = tuple(CHECKS) + (COUNTEREXAMPLES_SUITE,)


def get_check(check_id: str) -> Check:
    try:
        return CHECKS[check_id]
    except KeyError:
        raise UnknownCheck(f"unknown check {check_id!r}") from None
