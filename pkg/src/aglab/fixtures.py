"""The three worked example tables and the membership values attached to them.

Values are kept exactly as printed (decimal strings) and converted with
:func:`aglab.ifs.rat`.  Several printed assignments violate ``mu + gamma <= 1``,
so they are built with :meth:`IFS.unchecked`; callers decide what to verify.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .ifs import IFS, rat
from .magma import FiniteMagma, parse_cayley_table

TABLE_NAMES = ("ex", "e2", "t")


def table_text(name: str) -> str:
    if name not in TABLE_NAMES:
        raise KeyError(f"unknown example table {name!r}; choose from {', '.join(TABLE_NAMES)}")
    return resources.files("aglab").joinpath("tables", f"{name}.tbl").read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def example(name: str) -> FiniteMagma:
    return parse_cayley_table(table_text(name))


def _stated(mu: str, gamma: str) -> IFS:
    return IFS.unchecked([rat(v) for v in mu.split()], [rat(v) for v in gamma.split()])


# (table, mu, gamma) in element order a b c d e
STATED_IFS = {
    # attached to the first table, called a two-sided ideal there
    "ex_ideal": ("ex", "1 0 0 0 0", "0.3 0.4 0.2 0.2 0.2"),
    # offered against the converse of "A(x) = A(x^2) for all x => regular"
    "aw_converse": ("ex", "0.6 0.2 0.9 0.9 0.9", "0.7 0.3 1 1 1"),
    # the pair offered against the converse of "A o B = A cap B"
    "fgh_A": ("e2", "0.3 0.3 0.3 0.1 0.4", "0.2 0.3 0.4 0.5 0.2"),
    "fgh_B": ("e2", "0.5 0.5 0.5 0.4 0.6", "0.3 0.4 0.5 0.6 0.3"),
    # a left ideal that is not a right ideal
    "qer_left_not_right": ("e2", "0.8 0.5 0.4 0.3 0.6", "0.1 0.7 0.6 0.8 0.3"),
    # A(ab) = A(ba) everywhere but not a two-sided ideal
    "c1_converse": ("ex", "0.1 0.2 0.6 0.4 0.6", "0.2 0.3 0.7 0.5 0.7"),
    # offered as an ideal that is not semiprime
    "cor11_converse": ("e2", "0.2 0.2 0.2 0.1 0.3", "0.2 0.5 0.5 0.6 0.3"),
}


def stated_ifs(name: str) -> IFS:
    _, mu, gamma = STATED_IFS[name]
    return _stated(mu, gamma)


def stated_table(name: str) -> FiniteMagma:
    return example(STATED_IFS[name][0])


# a = (x a^2) y, written as (element, x, y)
T_INTRA_WITNESSES = (("a", "a", "a"), ("b", "c", "e"), ("c", "d", "e"), ("d", "c", "c"), ("e", "b", "e"))
