"""Symbolic operation-count model: price table, step costs, totals and reports."""

from pairnet.costmodel.cost_table import FULL, PUBLISHED, CostExpr, CostTable, ReducedCost, UnpricedCostError
from pairnet.costmodel.report import (
    CostMismatch,
    CostRecord,
    build_report,
    build_step_records,
    check_report,
    format_table,
    load_expected,
    parse_json_lines,
    to_json_lines,
)
from pairnet.costmodel.step_cost import SUPPORTED_PROCESSORS, StepCostSpec, step_cost
from pairnet.costmodel.totals import (
    ModelComparison,
    loop_cost,
    loop_expansion,
    measured_vs_model,
    miller_cost,
    net_loop_model,
    pairing_cost,
)

__all__ = [
    "FULL",
    "PUBLISHED",
    "SUPPORTED_PROCESSORS",
    "CostExpr",
    "CostMismatch",
    "CostRecord",
    "CostTable",
    "ModelComparison",
    "ReducedCost",
    "StepCostSpec",
    "UnpricedCostError",
    "build_report",
    "build_step_records",
    "check_report",
    "format_table",
    "load_expected",
    "loop_cost",
    "loop_expansion",
    "measured_vs_model",
    "miller_cost",
    "net_loop_model",
    "pairing_cost",
    "parse_json_lines",
    "step_cost",
    "to_json_lines",
]
