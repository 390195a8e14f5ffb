"""Intuitionistic fuzzy sets over a finite magma, with exact rational grades.

An IFS on an order-n magma is a pair of length-n vectors ``(mu, gamma)`` of
:class:`fractions.Fraction` values in ``[0, 1]`` with ``mu + gamma <= 1``
pointwise.  All comparisons are exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .magma import FiniteMagma, SubsetMask

Rat = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class IFSError(ValueError):
    """Invalid membership values; ``element`` is the offending index, if any."""

    def __init__(self, message: str, element: int | None = None):
        self.element = element
        super().__init__(message)


def rat(value) -> Fraction:
    """Exact grade from an int, Fraction, or a decimal/ratio string.

    Floats are rejected: ``0.3`` has no exact binary value.
    """
    if isinstance(value, float):
        raise TypeError("floats are inexact; pass a string such as '0.3' or a Fraction")
    try:
        r = Fraction(value.strip()) if isinstance(value, str) else Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise IFSError(f"not a rational number: {value!r}") from None
    if not ZERO <= r <= ONE:
        raise IFSError(f"grade {r} outside [0, 1]")
    return r


def format_rat(r: Fraction) -> str:
    return f"{r.numerator}/{r.denominator}"


@dataclass(frozen=True)
class IFS:
    mu: tuple[Fraction, ...]
    gamma: tuple[Fraction, ...]

    def __post_init__(self):
        mu = tuple(rat(v) for v in self.mu)
        gamma = tuple(rat(v) for v in self.gamma)
        if len(mu) != len(gamma):
            raise IFSError(f"mu has {len(mu)} values but gamma has {len(gamma)}")
        for x, (m, g) in enumerate(zip(mu, gamma)):
            if m + g > ONE:
                raise IFSError(f"mu + gamma = {m + g} > 1 at element {x}", element=x)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "gamma", gamma)

    @classmethod
    def unchecked(cls, mu: Sequence, gamma: Sequence) -> "IFS":
        """Build without the ``mu + gamma <= 1`` check, for replaying stated values.

        Grades must still be exact and in ``[0, 1]``; see :func:`sum_violations`.
        """
        obj = object.__new__(cls)
        mu = tuple(rat(v) for v in mu)
        gamma = tuple(rat(v) for v in gamma)
        if len(mu) != len(gamma):
            raise IFSError(f"mu has {len(mu)} values but gamma has {len(gamma)}")
        object.__setattr__(obj, "mu", mu)
        object.__setattr__(obj, "gamma", gamma)
        return obj

    @property
    def order(self) -> int:
        return len(self.mu)

    def __call__(self, x: int) -> tuple[Fraction, Fraction]:
        return self.mu[x], self.gamma[x]

    def to_literal(self) -> str:
        return "mu: " + " ".join(map(format_rat, self.mu)) + "\ngamma: " + " ".join(map(format_rat, self.gamma))


def sum_violations(a: IFS) -> list[int]:
    """Elements where ``mu + gamma > 1``; empty for any IFS built normally."""
    return [x for x in range(a.order) if a.mu[x] + a.gamma[x] > ONE]


def make_ifs(mu: Sequence, gamma: Sequence, order: int | None = None) -> IFS:
    if order is not None and (len(mu) != order or len(gamma) != order):
        raise IFSError(f"expected {order} values, got mu={len(mu)} gamma={len(gamma)}")
    return IFS(tuple(mu), tuple(gamma))


def parse_ifs(text: str) -> IFS:
    """Read the ``mu: ...`` / ``gamma: ...`` literal; decimals are accepted."""
    fields: dict[str, list[Fraction]] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("mu", "gamma"):
            raise IFSError(f"expected 'mu:' or 'gamma:' line, got {line!r}")
        if key in fields:
            raise IFSError(f"duplicate {key!r} line")
        fields[key] = [rat(tok) for tok in rest.split()]
    if set(fields) != {"mu", "gamma"}:
        raise IFSError("an IFS literal needs both 'mu:' and 'gamma:' lines")
    return make_ifs(fields["mu"], fields["gamma"])


def point_image(a: IFS, x: int) -> tuple[Fraction, Fraction]:
    """``A(x) = (mu_A(x), gamma_A(x))``."""
    return a.mu[x], a.gamma[x]


def characteristic(subset: SubsetMask, n: int) -> IFS:
    mu = tuple(ONE if subset >> x & 1 else ZERO for x in range(n))
    return IFS(mu, tuple(ONE - v for v in mu))


def delta(n: int) -> IFS:
    return IFS((ONE,) * n, (ZERO,) * n)


def _same_order(a: IFS, b: IFS) -> None:
    if a.order != b.order:
        raise IFSError(f"order mismatch: {a.order} vs {b.order}")


def ifs_intersect(a: IFS, b: IFS) -> IFS:
    _same_order(a, b)
    return IFS(tuple(map(min, a.mu, b.mu)), tuple(map(max, a.gamma, b.gamma)))


def ifs_union(a: IFS, b: IFS) -> IFS:
    _same_order(a, b)
    return IFS(tuple(map(max, a.mu, b.mu)), tuple(map(min, a.gamma, b.gamma)))


def ifs_leq(a: IFS, b: IFS) -> bool:
    """``A`` is contained in ``B``: mu_A <= mu_B and gamma_A >= gamma_B."""
    _same_order(a, b)
    return all(x <= y for x, y in zip(a.mu, b.mu)) and all(x >= y for x, y in zip(a.gamma, b.gamma))


def ifs_product(m: FiniteMagma, a: IFS, b: IFS) -> IFS:
    """Sup-min composition ``A o B``; unfactorable elements get (0, 1)."""
    _same_order(a, b)
    n = m.order
    if a.order != n:
        raise IFSError(f"IFS order {a.order} does not match magma order {n}")
    mu = [ZERO] * n
    gamma = [ONE] * n
    for x in range(n):
        row = m.table[x]
        for y in range(n):
            z = row[y]
            mu[z] = max(mu[z], min(a.mu[x], b.mu[y]))
            gamma[z] = min(gamma[z], max(a.gamma[x], b.gamma[y]))
    return IFS(tuple(mu), tuple(gamma))


# ---------------------------------------------------------------------------
# Fuzzy ideal predicates.  Each ``*_violation`` returns the first offending
# tuple of elements (lexicographic) or None.

def _check(a: IFS, target: int, sources: Iterable[int]) -> bool:
    src = list(sources)
    return a.mu[target] >= min(a.mu[s] for s in src) and a.gamma[target] <= max(a.gamma[s] for s in src)


def if_subgroupoid_violation(m: FiniteMagma, a: IFS):
    for x, y in itertools.product(range(m.order), repeat=2):
        if not _check(a, m.mul(x, y), (x, y)):
            return (x, y)
    return None


def if_left_ideal_violation(m: FiniteMagma, a: IFS):
    for x, y in itertools.product(range(m.order), repeat=2):
        if not _check(a, m.mul(x, y), (y,)):
            return (x, y)
    return None


def if_right_ideal_violation(m: FiniteMagma, a: IFS):
    for x, y in itertools.product(range(m.order), repeat=2):
        if not _check(a, m.mul(x, y), (x,)):
            return (x, y)
    return None


def if_generalized_bi_violation(m: FiniteMagma, a: IFS):
    """First (x, w, y) with ``A((xw)y)`` below ``A(x) and A(y)``."""
    for x, w, y in itertools.product(range(m.order), repeat=3):
        if not _check(a, m.mul(m.mul(x, w), y), (x, y)):
            return (x, w, y)
    return None


def if_one_two_violation(m: FiniteMagma, a: IFS):
    """First (x, w, y, z) with ``A((xw)(yz))`` below ``A(x), A(y), A(z)``."""
    for x, w, y, z in itertools.product(range(m.order), repeat=4):
        if not _check(a, m.mul(m.mul(x, w), m.mul(y, z)), (x, y, z)):
            return (x, w, y, z)
    return None


def if_semiprime_violation(m: FiniteMagma, a: IFS):
    for x in range(m.order):
        if not _check(a, x, (m.square(x),)):
            return (x,)
    return None


def is_if_subgroupoid(m: FiniteMagma, a: IFS) -> bool:
    return if_subgroupoid_violation(m, a) is None


def is_if_left_ideal(m: FiniteMagma, a: IFS) -> bool:
    return if_left_ideal_violation(m, a) is None


def is_if_right_ideal(m: FiniteMagma, a: IFS) -> bool:
    return if_right_ideal_violation(m, a) is None


def is_if_two_sided(m: FiniteMagma, a: IFS) -> bool:
    return is_if_left_ideal(m, a) and is_if_right_ideal(m, a)


def is_if_generalized_bi(m: FiniteMagma, a: IFS) -> bool:
    return if_generalized_bi_violation(m, a) is None


def is_if_bi(m: FiniteMagma, a: IFS) -> bool:
    return is_if_subgroupoid(m, a) and is_if_generalized_bi(m, a)


def is_if_one_two(m: FiniteMagma, a: IFS) -> bool:
    return is_if_subgroupoid(m, a) and if_one_two_violation(m, a) is None


def is_if_semiprime(m: FiniteMagma, a: IFS) -> bool:
    return if_semiprime_violation(m, a) is None


def is_idempotent(m: FiniteMagma, a: IFS) -> bool:
    return ifs_product(m, a, a) == a


FUZZY_PREDICATES = {
    "subgroupoid": is_if_subgroupoid,
    "left": is_if_left_ideal,
    "right": is_if_right_ideal,
    "two_sided": is_if_two_sided,
    "generalized_bi": is_if_generalized_bi,
    "bi": is_if_bi,
    "one_two": is_if_one_two,
}


# ---------------------------------------------------------------------------
# Value grids

@dataclass(frozen=True)
class ValueGrid:
    levels: tuple[Fraction, ...]

    def __post_init__(self):
        levels = tuple(sorted({rat(v) for v in self.levels}))
        if not levels or levels[0] != ZERO or levels[-1] != ONE:
            raise IFSError("a value grid must contain 0 and 1")
        object.__setattr__(self, "levels", levels)

    @classmethod
    def parse(cls, text: str) -> "ValueGrid":
        return cls(tuple(tok for tok in text.replace(" ", "").split(",") if tok))

    def pairs(self) -> list[tuple[Fraction, Fraction]]:
        """Admissible (mu, gamma) level pairs, ascending."""
        return [(m, g) for m in self.levels for g in self.levels if m + g <= ONE]

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.levels)


DEFAULT_GRID = ValueGrid((ZERO, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), ONE))
CRISP_GRID = ValueGrid((ZERO, ONE))


def grid_enumerate(n: int, grid: ValueGrid = DEFAULT_GRID) -> Iterator[IFS]:
    """All IFSs with grades on ``grid``; element 0 varies slowest."""
    pairs = grid.pairs()
    for combo in itertools.product(pairs, repeat=n):
        yield IFS(tuple(p[0] for p in combo), tuple(p[1] for p in combo))


def grid_count(n: int, grid: ValueGrid = DEFAULT_GRID) -> int:
    return len(grid.pairs()) ** n
