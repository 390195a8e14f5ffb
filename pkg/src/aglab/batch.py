"""Vectorized evaluation of IFS predicates over many IFSs at once.

Grades are stored as integers scaled by a common denominator, so every
comparison, min and max stays exact.  Rows of an :class:`IFSBatch` are
independent IFSs on the same magma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .ifs import IFS, ValueGrid
from .magma import FiniteMagma

CHUNK_ROWS = 1 << 14


def _dtype(scale: int):
    return np.int16 if scale < 2**14 else np.int64


@dataclass(frozen=True)
class IFSBatch:
    mu: np.ndarray
    gamma: np.ndarray
    scale: int

    def __len__(self) -> int:
        return self.mu.shape[0]

    @property
    def order(self) -> int:
        return self.mu.shape[1]

    def take(self, idx) -> "IFSBatch":
        return IFSBatch(self.mu[idx], self.gamma[idx], self.scale)

    def row(self, i: int) -> IFS:
        s = self.scale
        return IFS(tuple(Fraction(int(v), s) for v in self.mu[i]), tuple(Fraction(int(v), s) for v in self.gamma[i]))

    def rows(self) -> list[IFS]:
        return [self.row(i) for i in range(len(self))]

    @classmethod
    def from_ifs(cls, items: Sequence[IFS], scale: int | None = None) -> "IFSBatch":
        if scale is None:
            dens = [v.denominator for a in items for v in a.mu + a.gamma] or [1]
            scale = reduce(math.lcm, dens, 1)
        dt = _dtype(scale)
        mu = np.array([[int(v * scale) for v in a.mu] for a in items], dtype=dt)
        gamma = np.array([[int(v * scale) for v in a.gamma] for a in items], dtype=dt)
        for a, r in zip(items, range(len(items))):
            if any(Fraction(int(mu[r, x]), scale) != a.mu[x] for x in range(a.order)):
                raise ValueError(f"grades of {a} are not multiples of 1/{scale}")
        return cls(mu, gamma, scale)


def grid_scale(grid: ValueGrid) -> int:
    return reduce(math.lcm, (v.denominator for v in grid.levels), 1)


def grid_batch(n: int, grid: ValueGrid) -> IFSBatch:
    """Every grid IFS of order ``n``, in the order of :func:`aglab.ifs.grid_enumerate`."""
    scale = grid_scale(grid)
    dt = _dtype(scale)
    pairs = np.array([(int(m * scale), int(g * scale)) for m, g in grid.pairs()], dtype=dt)
    p = len(pairs)
    idx = np.indices((p,) * n, dtype=np.intp).reshape(n, -1).T
    return IFSBatch(pairs[idx, 0], pairs[idx, 1], scale)


def constant(n: int, mu: int, gamma: int, scale: int) -> IFSBatch:
    dt = _dtype(scale)
    return IFSBatch(np.full((1, n), mu, dtype=dt), np.full((1, n), gamma, dtype=dt), scale)


def delta_batch(n: int, scale: int) -> IFSBatch:
    return constant(n, scale, 0, scale)


def characteristic_batch(masks: Iterable[int], n: int, scale: int) -> IFSBatch:
    dt = _dtype(scale)
    bits = np.array([[(m >> x) & 1 for x in range(n)] for m in masks], dtype=dt).reshape(-1, n)
    return IFSBatch(bits * scale, (1 - bits) * scale, scale)


# ---------------------------------------------------------------------------
# Predicates.  A constraint (target, sources) demands
#   mu[target] >= min(mu[sources])  and  gamma[target] <= max(gamma[sources]).

def _constraints(items: Iterable[tuple[int, tuple[int, ...]]]) -> dict[int, tuple[np.ndarray, np.ndarray]]:
    by_k: dict[int, set] = {}
    for target, sources in items:
        src = tuple(sorted(set(sources)))
        if target in src:
            continue  # mu[t] >= min(..., mu[t], ...) always holds
        by_k.setdefault(len(src), set()).add((target, src))
    out = {}
    for k, cons in by_k.items():
        cons = sorted(cons)
        out[k] = (np.array([c[0] for c in cons], dtype=np.intp), np.array([c[1] for c in cons], dtype=np.intp))
    return out


def _satisfies(batch: IFSBatch, cons) -> np.ndarray:
    n_rows = len(batch)
    ok = np.ones(n_rows, dtype=bool)
    for targets, sources in cons.values():
        for lo in range(0, n_rows, CHUNK_ROWS):
            mu = batch.mu[lo:lo + CHUNK_ROWS]
            ga = batch.gamma[lo:lo + CHUNK_ROWS]
            good = (mu[:, targets] >= mu[:, sources].min(axis=2)).all(axis=1)
            good &= (ga[:, targets] <= ga[:, sources].max(axis=2)).all(axis=1)
            ok[lo:lo + CHUNK_ROWS] &= good
    return ok


class Predicates:
    """Constraint sets for one magma, built once and applied to many batches."""

    def __init__(self, m: FiniteMagma):
        self.magma = m
        n = m.order
        t = m.table
        r = range(n)
        self.cons = {
            "subgroupoid": _constraints((t[x][y], (x, y)) for x in r for y in r),
            "left": _constraints((t[x][y], (y,)) for x in r for y in r),
            "right": _constraints((t[x][y], (x,)) for x in r for y in r),
            "generalized_bi": _constraints((t[t[x][w]][y], (x, y)) for x in r for w in r for y in r),
            "one_two_core": _constraints(
                (t[t[x][w]][t[y][z]], (x, y, z)) for x in r for w in r for y in r for z in r
            ),
            "semiprime": _constraints((x, (t[x][x],)) for x in r),
        }

    def mask(self, kind: str, batch: IFSBatch) -> np.ndarray:
        if kind == "two_sided":
            return self.mask("left", batch) & self.mask("right", batch)
        if kind == "bi":
            return self.mask("subgroupoid", batch) & self.mask("generalized_bi", batch)
        if kind == "one_two":
            return self.mask("subgroupoid", batch) & _satisfies(batch, self.cons["one_two_core"])
        return _satisfies(batch, self.cons[kind])


# ---------------------------------------------------------------------------
# Products and comparisons

@dataclass(frozen=True)
class ProductPlan:
    """Factorizations grouped by product: ``lefts[z], rights[z]`` list every (x, y) with x*y = z."""

    lefts: tuple[np.ndarray, ...]
    rights: tuple[np.ndarray, ...]

    @classmethod
    def of(cls, m: FiniteMagma) -> "ProductPlan":
        n = m.order
        lefts: list[list[int]] = [[] for _ in range(n)]
        rights: list[list[int]] = [[] for _ in range(n)]
        for x in range(n):
            for y in range(n):
                z = m.table[x][y]
                lefts[z].append(x)
                rights[z].append(y)
        return cls(tuple(np.array(v, dtype=np.intp) for v in lefts), tuple(np.array(v, dtype=np.intp) for v in rights))


def product(plan: ProductPlan, a: IFSBatch, b: IFSBatch) -> IFSBatch:
    """Row-wise ``a[i] o b[i]``; a batch of length 1 broadcasts."""
    if a.scale != b.scale:
        raise ValueError("batches use different scales")
    rows = max(len(a), len(b))
    n = a.order
    dt = a.mu.dtype
    mu = np.zeros((rows, n), dtype=dt)
    gamma = np.full((rows, n), a.scale, dtype=dt)
    for z in range(n):
        xs, ys = plan.lefts[z], plan.rights[z]
        if len(xs) == 0:
            continue
        mu[:, z] = np.minimum(a.mu[:, xs], b.mu[:, ys]).max(axis=1)
        gamma[:, z] = np.maximum(a.gamma[:, xs], b.gamma[:, ys]).min(axis=1)
    return IFSBatch(mu, gamma, a.scale)


def intersect(a: IFSBatch, b: IFSBatch) -> IFSBatch:
    return IFSBatch(np.minimum(a.mu, b.mu), np.maximum(a.gamma, b.gamma), a.scale)


def equal(a: IFSBatch, b: IFSBatch) -> np.ndarray:
    return (a.mu == b.mu).all(axis=1) & (a.gamma == b.gamma).all(axis=1)


def leq(a: IFSBatch, b: IFSBatch) -> np.ndarray:
    return (a.mu <= b.mu).all(axis=1) & (a.gamma >= b.gamma).all(axis=1)


def valid(a: IFSBatch) -> np.ndarray:
    return (a.mu.astype(np.int64) + a.gamma <= a.scale).all(axis=1)


def same_at(a: IFSBatch, xs: Sequence[int], ys: Sequence[int]) -> np.ndarray:
    """Rows where ``A(xs[k]) == A(ys[k])`` for every k."""
    xs = np.asarray(xs, dtype=np.intp)
    ys = np.asarray(ys, dtype=np.intp)
    return (a.mu[:, xs] == a.mu[:, ys]).all(axis=1) & (a.gamma[:, xs] == a.gamma[:, ys]).all(axis=1)
