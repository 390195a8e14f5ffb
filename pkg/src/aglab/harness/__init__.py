"""Machine verification of the AG-groupoid / IFS ideal statements."""

from .checks import CHECK_IDS, CHECKS, COUNTEREXAMPLES_SUITE, UnknownCheck, get_check
from .profile import Profile
from .report import FAIL, PASS, SKIPPED, TheoremReport
from .runner import (
    check_equivalence,
    check_universal,
    enumerated_magmas,
    example_magmas,
    replay,
    reproduce_counterexamples,
    run_all,
    run_check,
)

__all__ = [
    "CHECK_IDS",
    "CHECKS",
    "COUNTEREXAMPLES_SUITE",
    "FAIL",
    "PASS",
    "Profile",
    "SKIPPED",
    "TheoremReport",
    "UnknownCheck",
    "check_equivalence",
    "check_universal",
    "enumerated_magmas",
    "example_magmas",
    "get_check",
    "replay",
    "reproduce_counterexamples",
    "run_all",
    "run_check",
]
