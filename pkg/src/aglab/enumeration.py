"""Exhaustive generation of AG-groupoids (left-invertive magmas) of small order.

The search fills the Cayley table in row-major order and, after every
assignment, re-checks each instance of ``(ab)c = (cb)a`` that the new cell
can take part in and whose products are all known.  Work is split across
processes by prefixes of the free cells; partitions are merged back in
prefix order, so the output is the same for any worker count.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from .magma import FiniteMagma, is_left_invertive, left_identities

DEFAULT_ORDER_CAP = 5
ORACLE_ORDER_CAP = 3


@dataclass(frozen=True)
class SearchConfig:
    order: int
    require_left_identity: bool = False
    up_to_isomorphism: bool = False
    worker_count: int = 1
    order_cap: int = DEFAULT_ORDER_CAP

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        if self.order > self.order_cap:
            raise ValueError(f"order {self.order} exceeds the enumeration cap {self.order_cap}")
        if self.worker_count < 1:
            raise ValueError("worker_count must be positive")


@dataclass
class EnumerationStats:
    tables_visited: int = 0
    magmas_emitted: int = 0
    elapsed: float = 0.0
    _start: float = field(default_factory=time.perf_counter, repr=False)

    def as_dict(self) -> dict:
        return {
            "tables_visited": self.tables_visited,
            "magmas_emitted": self.magmas_emitted,
            "elapsed_ms": round(self.elapsed * 1000, 3),
        }


# ---------------------------------------------------------------------------
# Canonical forms

@lru_cache(maxsize=None)
def _permutations(n: int) -> tuple[np.ndarray, np.ndarray]:
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.intp).reshape(-1, n)
    invs = np.argsort(perms, axis=1)
    return perms, invs


def _all_relabelings(table: np.ndarray) -> np.ndarray:
    """Shape (n!, n*n): row k is the table relabeled by the k-th permutation."""
    n = table.shape[0]
    perms, invs = _permutations(n)
    vals = table[invs[:, :, None], invs[:, None, :]]
    out = np.take_along_axis(perms[:, None, :], vals.reshape(len(perms), 1, n * n), axis=2)
    return out.reshape(len(perms), n * n)


def _lexmin_row(rows: np.ndarray) -> int:
    # np.lexsort treats the last key as primary
    return int(np.lexsort(rows.T[::-1])[0])


def canonical_form(m: FiniteMagma) -> FiniteMagma:
    """Lexicographically least Cayley table over all relabelings of ``m``."""
    n = m.order
    rows = _all_relabelings(m.array)
    best = rows[_lexmin_row(rows)].reshape(n, n)
    return FiniteMagma(tuple(map(tuple, best.tolist())))


def automorphism_count(m: FiniteMagma) -> int:
    rows = _all_relabelings(m.array)
    return int(np.count_nonzero((rows == m.array.reshape(1, -1)).all(axis=1)))


def orbit_size(m: FiniteMagma) -> int:
    """Number of distinct labeled tables isomorphic to ``m``."""
    return math.factorial(m.order) // automorphism_count(m)


# ---------------------------------------------------------------------------
# Backtracking

def _initial_table(n: int, require_left_identity: bool) -> list[int]:
    t = [-1] * (n * n)
    if require_left_identity:
        t[:n] = range(n)
    return t


def _consistent(t: list[int], n: int, cell: int) -> bool:
    i, j = divmod(cell, n)

    def ok(a: int, b: int, c: int) -> bool:
        ab = t[a * n + b]
        if ab < 0:
            return True
        lhs = t[ab * n + c]
        if lhs < 0:
            return True
        cb = t[c * n + b]
        if cb < 0:
            return True
        rhs = t[cb * n + a]
        return rhs < 0 or lhs == rhs

    # (ab)c = (cb)a is symmetric in a and c, so the new cell only needs to be
    # tried as the inner product (a, b) and as the outer product (ab, c).
    for c in range(n):
        if not ok(i, j, c):
            return False
    for k, v in enumerate(t):
        if v == i and not ok(k // n, k % n, j):
            return False
    return True


def _search(n: int, t: list[int], free: list[int], start: int) -> tuple[list[tuple[int, ...]], int]:
    """Complete ``t`` over ``free[start:]``; returns (tables, nodes visited)."""
    found: list[tuple[int, ...]] = []
    visited = 0
    depth = len(free)
    k = start
    if k == depth:
        return [tuple(t)], 0
    while k >= start:
        cell = free[k]
        v = t[cell] + 1
        placed = False
        while v < n:
            t[cell] = v
            if _consistent(t, n, cell):
                placed = True
                break
            v += 1
        if not placed:
            t[cell] = -1
            k -= 1
            continue
        visited += 1
        if k + 1 == depth:
            found.append(tuple(t))
        else:
            k += 1
    return found, visited


def _prefixes(n: int, t: list[int], free: list[int], length: int) -> list[tuple[int, ...]]:
    """All consistent assignments of the first ``length`` free cells, in search order."""
    out: list[tuple[int, ...]] = []

    def rec(k: int) -> None:
        if k == length:
            out.append(tuple(t[c] for c in free[:length]))
            return
        cell = free[k]
        for v in range(n):
            t[cell] = v
            if _consistent(t, n, cell):
                rec(k + 1)
        t[cell] = -1

    rec(0)
    return out


def _run_partition(args: tuple[int, bool, int, tuple[int, ...], bool]):
    n, pin, plen, prefix, canon = args
    t = _initial_table(n, pin)
    free = [c for c in range(n * n) if t[c] < 0]
    for cell, v in zip(free, prefix):
        t[cell] = v
    tables, visited = _search(n, t, free, plen)
    if canon:
        seen: dict[tuple[int, ...], None] = {}
        for tab in tables:
            seen.setdefault(_canonical_flat(tab, n), None)
        tables = list(seen)
    return tables, visited


def _canonical_flat(flat: tuple[int, ...], n: int) -> tuple[int, ...]:
    rows = _all_relabelings(np.array(flat, dtype=np.intp).reshape(n, n))
    return tuple(rows[_lexmin_row(rows)].tolist())


def _transposition(n: int, e: int) -> list[int]:
    perm = list(range(n))
    perm[0], perm[e] = e, 0
    return perm


def enumerate_ag_groupoids(cfg: SearchConfig, stats: EnumerationStats | None = None) -> Iterator[FiniteMagma]:
    """Yield every AG-groupoid of order ``cfg.order``.

    With ``require_left_identity`` the identity is pinned to element 0 during
    the search; labeled output then adds the images under the transpositions
    ``(0 e)``, which reach every table whose (unique) left identity is ``e``.
    With ``up_to_isomorphism`` one canonical table per class is emitted.
    """
    stats = stats if stats is not None else EnumerationStats()
    n = cfg.order
    pin = cfg.require_left_identity
    t = _initial_table(n, pin)
    free = [c for c in range(n * n) if t[c] < 0]
    plen = min(len(free), n if n > 1 else len(free))
    prefixes = _prefixes(n, t, free, plen)
    stats.tables_visited += len(prefixes)
    jobs = [(n, pin, plen, p, cfg.up_to_isomorphism) for p in prefixes]

    if cfg.worker_count > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.worker_count) as pool:
            results = list(pool.map(_run_partition, jobs, chunksize=max(1, len(jobs) // (4 * cfg.worker_count))))
    else:
        results = map(_run_partition, jobs)

    seen: set[tuple[int, ...]] = set()
    for tables, visited in results:
        stats.tables_visited += visited
        for flat in tables:
            if cfg.up_to_isomorphism:
                if flat in seen:
                    continue
                seen.add(flat)
                out = [flat]
            elif pin:
                base = FiniteMagma(tuple(tuple(flat[r * n:(r + 1) * n]) for r in range(n)))
                out = [flat] + [
                    tuple(itertools.chain.from_iterable(base.relabel(_transposition(n, e)).table))
                    for e in range(1, n)
                ]
            else:
                out = [flat]
            for tab in out:
                stats.magmas_emitted += 1
                stats.elapsed = time.perf_counter() - stats._start
                yield FiniteMagma(tuple(tuple(tab[r * n:(r + 1) * n]) for r in range(n)))
    stats.elapsed = time.perf_counter() - stats._start


def count_ag_groupoids(cfg: SearchConfig) -> int:
    return sum(1 for _ in enumerate_ag_groupoids(cfg))


def oracle_count(order: int, require_left_identity: bool = False) -> int:
    """Count left-invertive tables by scanning all ``n**(n*n)`` of them."""
    if order < 1:
        raise ValueError("order must be positive")
    if order > ORACLE_ORDER_CAP:
        raise ValueError(f"order {order} is too large for naive enumeration (cap {ORACLE_ORDER_CAP})")
    n = order
    count = 0
    for flat in itertools.product(range(n), repeat=n * n):
        m = FiniteMagma(tuple(flat[r * n:(r + 1) * n] for r in range(n)))
        if is_left_invertive(m) and (not require_left_identity or left_identities(m)):
            count += 1
    return count
