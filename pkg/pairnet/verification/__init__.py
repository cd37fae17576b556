"""Correctness checks for nets, pairings, parallel steps and cost tables."""

from pairnet.verification.suite import (
    CHECK_NAMES,
    CheckResult,
    CheckStatus,
    VerificationSuite,
    check_bilinearity,
    check_cost_table,
    check_division_polynomial,
    check_modified_net,
    check_net_miller,
    check_net_recurrence,
    check_parallel,
    check_step_count,
    check_tate,
    check_twist_transport,
    random_block,
)

__all__ = [
    "CHECK_NAMES",
    "CheckResult",
    "CheckStatus",
    "VerificationSuite",
    "check_bilinearity",
    "check_cost_table",
    "check_division_polynomial",
    "check_modified_net",
    "check_net_miller",
    "check_net_recurrence",
    "check_parallel",
    "check_step_count",
    "check_tate",
    "check_twist_transport",
    "random_block",
]
