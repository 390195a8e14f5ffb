"""Per-magma cache of structural facts and grid-level predicate masks."""

from __future__ import annotations

from functools import cached_property, lru_cache

import numpy as np

from ..batch import IFSBatch, Predicates, ProductPlan, characteristic_batch, delta_batch, grid_batch
from ..ifs import DEFAULT_GRID, ValueGrid
from ..magma import (
    FiniteMagma,
    intra_regular_witness,
    is_ag_band,
    is_left_duo,
    left_identity,
    regular_witness,
)

# structural hypotheses a clause may require
LI = "left identity"
REG = "regular"
INTRA = "intra-regular"
DUO = "left duo"
BAND = "AG-band"
NOT_REG = "not regular"
NOT_INTRA = "not intra-regular"


@lru_cache(maxsize=8)
def shared_grid_batch(n: int, grid: ValueGrid) -> IFSBatch:
    return grid_batch(n, grid)


class Profile:
    """One magma plus everything the checks keep asking about it."""

    def __init__(self, magma: FiniteMagma, grid: ValueGrid = DEFAULT_GRID, name: str | None = None):
        self.magma = magma
        self.grid = grid
        self.name = name or f"order{magma.order}"
        self._masks: dict[str, np.ndarray] = {}

    @property
    def order(self) -> int:
        return self.magma.order

    @cached_property
    def left_identity(self) -> int | None:
        return left_identity(self.magma)

    @cached_property
    def non_regular(self) -> list[int]:
        return [a for a in range(self.order) if regular_witness(self.magma, a) is None]

    @cached_property
    def non_intra(self) -> list[int]:
        return [a for a in range(self.order) if intra_regular_witness(self.magma, a) is None]

    @cached_property
    def flags(self) -> frozenset[str]:
        out = set()
        if self.left_identity is not None:
            out.add(LI)
        out.add(NOT_REG if self.non_regular else REG)
        out.add(NOT_INTRA if self.non_intra else INTRA)
        if is_left_duo(self.magma):
            out.add(DUO)
        if is_ag_band(self.magma):
            out.add(BAND)
        return frozenset(out)

    def satisfies(self, hypotheses) -> bool:
        return self.flags.issuperset(hypotheses)

    @cached_property
    def preds(self) -> Predicates:
        return Predicates(self.magma)

    @cached_property
    def plan(self) -> ProductPlan:
        return ProductPlan.of(self.magma)

    @property
    def batch(self) -> IFSBatch:
        return shared_grid_batch(self.order, self.grid)

    @property
    def scale(self) -> int:
        return self.batch.scale

    @cached_property
    def delta(self) -> IFSBatch:
        return delta_batch(self.order, self.scale)

    def characteristic(self, masks) -> IFSBatch:
        return characteristic_batch(masks, self.order, self.scale)

    def mask(self, prop) -> np.ndarray:
        """``prop`` evaluated on every grid IFS, cached by name."""
        got = self._masks.get(prop.name)
        if got is None:
            got = prop.batch(self, self.batch)
            got.setflags(write=False)
            self._masks[prop.name] = got
        return got

    def evaluate(self, prop, idx: np.ndarray) -> np.ndarray:
        """``prop`` on the grid rows ``idx``, reusing a cached full mask if there is one."""
        if prop.name in self._masks or prop.cache:
            return self.mask(prop)[idx]
        return prop.batch(self, self.batch.take(idx))

    def members(self, prop) -> np.ndarray:
        return np.flatnonzero(self.mask(prop))
