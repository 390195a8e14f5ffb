"""Finite magmas given by Cayley tables, AG-groupoid laws and crisp ideal theory.

Elements are the integers ``0..n-1``; labels are for display only.  Subsets
of the carrier are plain ``int`` bit masks (bit ``i`` set iff element ``i``
belongs to the subset).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

SubsetMask = int

DEFAULT_IDEAL_CAP = 16


class ParseError(ValueError):
    """Malformed Cayley table text; ``line`` is 1-based (0 when unknown)."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True)
class FiniteMagma:
    """An order-n magma; ``table[i][j]`` is the product ``i * j``."""

    table: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        table = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "table", table)
        n = len(table)
        if n == 0:
            raise ValueError("a magma needs at least one element")
        for i, row in enumerate(table):
            if len(row) != n:
                raise ValueError(f"row {i} has {len(row)} entries, expected {n}")
            for v in row:
                if not 0 <= v < n:
                    raise ValueError(f"entry {v} in row {i} is not an element of 0..{n - 1}")
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != n:
                raise ValueError(f"expected {n} labels, got {len(labels)}")
            if len(set(labels)) != n:
                raise ValueError("labels must be pairwise distinct")
            object.__setattr__(self, "labels", labels)

    @property
    def order(self) -> int:
        return len(self.table)

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.table, dtype=np.intp)
        arr.setflags(write=False)
        return arr

    @property
    def full(self) -> SubsetMask:
        return (1 << self.order) - 1

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def square(self, a: int) -> int:
        return self.table[a][a]

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    def relabel(self, perm: Sequence[int]) -> "FiniteMagma":
        """Image of the magma under the bijection ``i -> perm[i]``."""
        n = self.order
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        t = self.table
        return FiniteMagma(tuple(tuple(perm[t[inv[x]][inv[y]]] for y in range(n)) for x in range(n)))

    def to_text(self, use_labels: bool = True) -> str:
        return format_cayley_table(self, use_labels=use_labels)


# ---------------------------------------------------------------------------
# Cayley table text format

def parse_cayley_table(text: str | Iterable[str]) -> FiniteMagma:
    """Parse the Cayley table text format.

    ::

        # comment
        order 3
        labels a b c
        a b c
        b c a
        c a b

    The ``order`` header may be omitted, in which case the order is the number
    of rows.  A row may carry a ``label |`` prefix naming its left operand.
    """
    lines = text.splitlines() if isinstance(text, str) else list(text)
    order: int | None = None
    labels: list[str] | None = None
    rows: list[tuple[int, list[str], str | None]] = []

    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        if head == "order" and not rows and labels is None and order is None:
            try:
                order = int(rest.strip())
            except ValueError:
                raise ParseError(f"bad order header {line!r}", lineno) from None
            if order < 1:
                raise ParseError("order must be positive", lineno)
            continue
        if head == "labels" and not rows and labels is None:
            labels = rest.split()
            if order is not None and len(labels) != order:
                raise ParseError(f"expected {order} labels, got {len(labels)}", lineno)
            dupes = sorted({x for x in labels if labels.count(x) > 1})
            if dupes:
                raise ParseError(f"duplicate label {dupes[0]!r}", lineno)
            continue
        row_label = None
        if "|" in line:
            row_label, _, line = line.partition("|")
            row_label = row_label.strip()
            if not row_label:
                raise ParseError("empty row label before '|'", lineno)
        rows.append((lineno, line.split(), row_label))

    if not rows:
        raise ParseError("no table rows")
    if order is None:
        order = len(rows)
    if len(rows) != order:
        raise ParseError(f"expected {order} rows, got {len(rows)}", rows[-1][0])

    row_labels = [r[2] for r in rows]
    if labels is None and all(r is not None for r in row_labels):
        labels = [str(r) for r in row_labels]
        dupes = sorted({x for x in labels if labels.count(x) > 1})
        if dupes:
            raise ParseError(f"duplicate label {dupes[0]!r}", rows[0][0])
    index = {lab: i for i, lab in enumerate(labels)} if labels is not None else None

    def resolve(token: str, lineno: int) -> int:
        if index is not None:
            if token not in index:
                raise ParseError(f"unknown label {token!r}", lineno)
            return index[token]
        try:
            v = int(token)
        except ValueError:
            raise ParseError(f"unknown label {token!r} (no labels declared)", lineno) from None
        if not 0 <= v < order:
            raise ParseError(f"entry {v} out of range 0..{order - 1}", lineno)
        return v

    table = []
    for i, (lineno, tokens, row_label) in enumerate(rows):
        if len(tokens) != order:
            raise ParseError(f"row {i} has {len(tokens)} entries, expected {order}", lineno)
        if row_label is not None and index is not None and index.get(row_label) != i:
            raise ParseError(f"row label {row_label!r} does not match row {i}", lineno)
        table.append(tuple(resolve(tok, lineno) for tok in tokens))
    return FiniteMagma(tuple(table), tuple(labels) if labels is not None else None)


def format_cayley_table(m: FiniteMagma, use_labels: bool = True) -> str:
    """Inverse of :func:`parse_cayley_table`."""
    out = [f"order {m.order}"]
    if use_labels and m.labels is not None:
        out.append("labels " + " ".join(m.labels))
        name = m.label
    else:
        name = str
    for row in m.table:
        out.append(" ".join(name(v) for v in row))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Laws

def left_invertive_violation(m: FiniteMagma) -> tuple[int, int, int] | None:
    """First triple (a, b, c) in lexicographic order with (ab)c != (cb)a."""
    t = m.table
    n = m.order
    for a in range(n):
        ta = t[a]
        for b in range(n):
            ab = ta[b]
            for c in range(a + 1, n):
                if t[ab][c] != t[t[c][b]][a]:
                    return (a, b, c)
    return None


def is_left_invertive(m: FiniteMagma) -> bool:
    return left_invertive_violation(m) is None


def _all_quadruples(m: FiniteMagma) -> tuple[np.ndarray, ...]:
    n = m.order
    return tuple(g.ravel() for g in np.meshgrid(*(np.arange(n),) * 4, indexing="ij"))


def is_medial(m: FiniteMagma) -> bool:
    t = m.array
    a, b, c, d = _all_quadruples(m)
    return bool(np.array_equal(t[t[a, b], t[c, d]], t[t[a, c], t[b, d]]))


def is_paramedial(m: FiniteMagma) -> bool:
    t = m.array
    a, b, c, d = _all_quadruples(m)
    return bool(np.array_equal(t[t[a, b], t[c, d]], t[t[d, c], t[b, a]]))


def satisfies_law4(m: FiniteMagma) -> bool:
    t = m.array
    a, b, c = np.meshgrid(*(np.arange(m.order),) * 3, indexing="ij")
    return bool(np.array_equal(t[a, t[b, c]], t[b, t[a, c]]))


def left_identities(m: FiniteMagma) -> list[int]:
    ident = tuple(range(m.order))
    return [e for e in range(m.order) if m.table[e] == ident]


def left_identity(m: FiniteMagma) -> int | None:
    ids = left_identities(m)
    return ids[0] if ids else None


def is_ag_band(m: FiniteMagma) -> bool:
    return all(m.table[a][a] == a for a in range(m.order))


# ---------------------------------------------------------------------------
# Regularity

@dataclass(frozen=True)
class Witness:
    """``a = (a x) a`` for kind ``regular``; ``a = (x a^2) y`` for ``intra_regular``."""

    kind: str
    element: int
    x: int
    y: int | None = None

    def holds(self, m: FiniteMagma) -> bool:
        a = self.element
        if self.kind == "regular":
            return m.mul(m.mul(a, self.x), a) == a
        if self.kind == "intra_regular":
            return self.y is not None and m.mul(m.mul(self.x, m.square(a)), self.y) == a
        raise ValueError(f"unknown witness kind {self.kind!r}")


def regular_witness(m: FiniteMagma, a: int) -> Witness | None:
    for x in range(m.order):
        if m.mul(m.mul(a, x), a) == a:
            return Witness("regular", a, x)
    return None


def intra_regular_witness(m: FiniteMagma, a: int) -> Witness | None:
    a2 = m.square(a)
    for x in range(m.order):
        row = m.table[m.mul(x, a2)]
        for y in range(m.order):
            if row[y] == a:
                return Witness("intra_regular", a, x, y)
    return None


def is_regular(m: FiniteMagma) -> bool:
    return all(regular_witness(m, a) is not None for a in range(m.order))


def is_intra_regular(m: FiniteMagma) -> bool:
    return all(intra_regular_witness(m, a) is not None for a in range(m.order))


# ---------------------------------------------------------------------------
# Subsets

def mask_of(elements: Iterable[int]) -> SubsetMask:
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def elements_of(mask: SubsetMask) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_from_labels(m: FiniteMagma, labels: Iterable[str]) -> SubsetMask:
    index = {m.label(i): i for i in range(m.order)}
    return mask_of(index[x] for x in labels)


def format_subset(m: FiniteMagma, mask: SubsetMask) -> str:
    return "{" + ",".join(m.label(i) for i in elements_of(mask)) + "}"


def subset_product(m: FiniteMagma, a: SubsetMask, b: SubsetMask) -> SubsetMask:
    """Complexwise product ``AB = {x*y : x in A, y in B}``."""
    out = 0
    bs = elements_of(b)
    for x in elements_of(a):
        row = m.table[x]
        for y in bs:
            out |= 1 << row[y]
    return out


def _nonempty(a: SubsetMask) -> None:
    if a == 0:
        raise ValueError("ideal predicates require a non-empty subset")


def _within(a: SubsetMask, b: SubsetMask) -> bool:
    return a & ~b == 0


def is_ag_subgroupoid(m: FiniteMagma, a: SubsetMask) -> bool:
    _nonempty(a)
    return _within(subset_product(m, a, a), a)


def is_left_ideal(m: FiniteMagma, a: SubsetMask) -> bool:
    _nonempty(a)
    return _within(subset_product(m, m.full, a), a)


def is_right_ideal(m: FiniteMagma, a: SubsetMask) -> bool:
    _nonempty(a)
    return _within(subset_product(m, a, m.full), a)


def is_two_sided_ideal(m: FiniteMagma, a: SubsetMask) -> bool:
    return is_left_ideal(m, a) and is_right_ideal(m, a)


def is_generalized_bi_ideal(m: FiniteMagma, a: SubsetMask) -> bool:
    _nonempty(a)
    return _within(subset_product(m, subset_product(m, a, m.full), a), a)


def is_bi_ideal(m: FiniteMagma, a: SubsetMask) -> bool:
    return is_ag_subgroupoid(m, a) and is_generalized_bi_ideal(m, a)


def is_one_two_ideal(m: FiniteMagma, a: SubsetMask) -> bool:
    """AG-subgroupoid with ``(AS)A^2`` inside ``A``."""
    if not is_ag_subgroupoid(m, a):
        return False
    lhs = subset_product(m, subset_product(m, a, m.full), subset_product(m, a, a))
    return _within(lhs, a)


def is_semiprime_subset(m: FiniteMagma, a: SubsetMask) -> bool:
    return all(a >> x & 1 or not a >> m.square(x) & 1 for x in range(m.order))


class IdealKind(str, enum.Enum):
    SUBGROUPOID = "subgroupoid"
    LEFT = "left"
    RIGHT = "right"
    TWO_SIDED = "two_sided"
    GENERALIZED_BI = "generalized_bi"
    BI = "bi"
    ONE_TWO = "one_two"


CRISP_PREDICATES = {
    IdealKind.SUBGROUPOID: is_ag_subgroupoid,
    IdealKind.LEFT: is_left_ideal,
    IdealKind.RIGHT: is_right_ideal,
    IdealKind.TWO_SIDED: is_two_sided_ideal,
    IdealKind.GENERALIZED_BI: is_generalized_bi_ideal,
    IdealKind.BI: is_bi_ideal,
    IdealKind.ONE_TWO: is_one_two_ideal,
}


def all_ideals(m: FiniteMagma, kind: IdealKind | str, cap: int = DEFAULT_IDEAL_CAP) -> list[SubsetMask]:
    """Every non-empty subset satisfying ``kind``, ascending by mask."""
    if m.order > cap:
        raise ValueError(f"order {m.order} exceeds the subset scan cap {cap}")
    pred = CRISP_PREDICATES[IdealKind(kind)]
    return [a for a in range(1, 1 << m.order) if pred(m, a)]


def nonempty_subsets(m: FiniteMagma) -> Iterator[SubsetMask]:
    return iter(range(1, 1 << m.order))


def is_left_duo(m: FiniteMagma) -> bool:
    return all(is_right_ideal(m, a) for a in all_ideals(m, IdealKind.LEFT))


def principal_left(m: FiniteMagma, a: int) -> SubsetMask:
    """The set ``Sa``."""
    return subset_product(m, m.full, 1 << a)


def square_times_s(m: FiniteMagma, a: int) -> SubsetMask:
    """The set ``a^2 S``."""
    return subset_product(m, 1 << m.square(a), m.full)
