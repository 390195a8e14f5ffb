"""IFS properties with a vectorized form (over a grid batch) and a scalar form.

The scalar form is used for replaying stored counterexamples and for the
cross-check tests; the batch form drives the sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .. import batch as B
from .. import ifs as F
from ..magma import FiniteMagma


@dataclass(frozen=True)
class Prop:
    name: str
    batch: Callable = field(compare=False, repr=False)
    scalar: Callable[[FiniteMagma, F.IFS], bool] = field(compare=False, repr=False)
    locate: Callable | None = field(default=None, compare=False, repr=False)
    # cheap enough to evaluate on the whole grid and keep
    cache: bool = False

    def where(self, m: FiniteMagma, a: F.IFS):
        """Elements at which ``a`` fails the property, or None if unknown or it holds."""
        return self.locate(m, a) if self.locate else None


def _first_diff(a: F.IFS, b: F.IFS):
    for x in range(a.order):
        if a(x) != b(x):
            return (x,)
    return None


def _chain(*finders):
    def locate(m, a):
        for f in finders:
            hit = f(m, a)
            if hit is not None:
                return hit
        return None

    return locate


def _kind(name: str, locate) -> Prop:
    return Prop(
        name,
        lambda p, b: p.preds.mask(name, b),
        F.FUZZY_PREDICATES[name],
        locate,
        cache=True,
    )


SUB = _kind("subgroupoid", F.if_subgroupoid_violation)
LEFT = _kind("left", F.if_left_ideal_violation)
RIGHT = _kind("right", F.if_right_ideal_violation)
TWO = _kind("two_sided", _chain(F.if_left_ideal_violation, F.if_right_ideal_violation))
GBI = _kind("generalized_bi", F.if_generalized_bi_violation)
BI = _kind("bi", _chain(F.if_subgroupoid_violation, F.if_generalized_bi_violation))
ONE_TWO = _kind("one_two", _chain(F.if_subgroupoid_violation, F.if_one_two_violation))

SEMIPRIME = Prop(
    "semiprime",
    lambda p, b: p.preds.mask("semiprime", b),
    F.is_if_semiprime,
    F.if_semiprime_violation,
    cache=True,
)

IDEMPOTENT = Prop(
    "idempotent",
    lambda p, b: B.equal(B.product(p.plan, b, b), b),
    F.is_idempotent,
    lambda m, a: _first_diff(F.ifs_product(m, a, a), a),
)


def _delta_two_sided(m: FiniteMagma, a: F.IFS) -> bool:
    d = F.delta(m.order)
    return F.ifs_product(m, a, d) == a and F.ifs_product(m, d, a) == a


def _delta_locate(m, a):
    d = F.delta(m.order)
    return _first_diff(F.ifs_product(m, a, d), a) or _first_diff(F.ifs_product(m, d, a), a)


DELTA_IDENTITY = Prop(
    "delta_identity",
    lambda p, b: B.equal(B.product(p.plan, b, p.delta), b) & B.equal(B.product(p.plan, p.delta, b), b),
    _delta_two_sided,
    _delta_locate,
)


def _commutes_batch(p, b):
    t = p.magma.array
    return B.same_at(b, t.ravel(), t.T.ravel())


def _commutes_locate(m, a):
    for x in range(m.order):
        for y in range(m.order):
            if a(m.mul(x, y)) != a(m.mul(y, x)):
                return (x, y)
    return None


COMMUTES = Prop(
    "A(ab)=A(ba)",
    _commutes_batch,
    lambda m, a: _commutes_locate(m, a) is None,
    _commutes_locate,
    cache=True,
)


def _square_locate(m, a):
    for x in range(m.order):
        if a(x) != a(m.square(x)):
            return (x,)
    return None


SQUARE_INVARIANT = Prop(
    "A(a)=A(a^2)",
    lambda p, b: B.same_at(b, np.arange(p.order), np.diag(p.magma.array)),
    lambda m, a: _square_locate(m, a) is None,
    _square_locate,
    cache=True,
)


def _sa_squared_batch(p, b):
    s = B.product(p.plan, p.delta, b)
    return B.equal(B.product(p.plan, s, s), b)


def _sa_squared(m, a):
    s = F.ifs_product(m, F.delta(m.order), a)
    return F.ifs_product(m, s, s)


SA_SQUARED = Prop(
    "A=(S o A)^2",
    _sa_squared_batch,
    lambda m, a: _sa_squared(m, a) == a,
    lambda m, a: _first_diff(_sa_squared(m, a), a),
)

AS_SUB = Prop(
    "A o A <= A",
    lambda p, b: B.leq(B.product(p.plan, b, b), b),
    lambda m, a: F.ifs_leq(F.ifs_product(m, a, a), a),
)
AS_LEFT = Prop(
    "S o A <= A",
    lambda p, b: B.leq(B.product(p.plan, p.delta, b), b),
    lambda m, a: F.ifs_leq(F.ifs_product(m, F.delta(m.order), a), a),
)
AS_RIGHT = Prop(
    "A o S <= A",
    lambda p, b: B.leq(B.product(p.plan, b, p.delta), b),
    lambda m, a: F.ifs_leq(F.ifs_product(m, a, F.delta(m.order)), a),
)

IDEAL_PROPS = {"right": RIGHT, "left": LEFT, "two_sided": TWO}


# ---------------------------------------------------------------------------
# Relations between two IFSs

@dataclass(frozen=True)
class Relation:
    name: str
    batch: Callable = field(compare=False, repr=False)
    scalar: Callable[[FiniteMagma, F.IFS, F.IFS], bool] = field(compare=False, repr=False)


PRODUCT_IS_MEET = Relation(
    "A o B = A cap B",
    lambda p, a, b: B.equal(B.product(p.plan, a, b), B.intersect(a, b)),
    lambda m, a, b: F.ifs_product(m, a, b) == F.ifs_intersect(a, b),
)
PRODUCT_COMMUTES = Relation(
    "A o B = B o A",
    lambda p, a, b: B.equal(B.product(p.plan, a, b), B.product(p.plan, b, a)),
    lambda m, a, b: F.ifs_product(m, a, b) == F.ifs_product(m, b, a),
)
PRODUCT_TWO_SIDED = Relation(
    "A o B is two-sided",
    lambda p, a, b: p.preds.mask("two_sided", B.product(p.plan, a, b)),
    lambda m, a, b: F.is_if_two_sided(m, F.ifs_product(m, a, b)),
)
