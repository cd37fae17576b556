"""Longest-path cost of one net step under the 4- and 8-processor schedules."""

import logging
from dataclasses import dataclass
from typing import Optional

from pairnet.costmodel.cost_table import CostExpr, CostTable
from pairnet.curves.families import FamilyParams
from pairnet.ellnet.steps import StepKind

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

SUPPORTED_PROCESSORS = (4, 8)


@dataclass(frozen=True)
class StepCostSpec:
    """Field layout of a family plus the schedule being priced."""
    e: int
    delta: int
    k: int
    processors: int
    kind: StepKind

    def __post_init__(self):
        if self.processors not in SUPPORTED_PROCESSORS:
            raise ValueError(f"Unsupported processor count {self.processors} (expected 4 or 8)")
        if self.e * self.delta != self.k:
            raise ValueError(f"Twist layout e={self.e}, delta={self.delta} does not give k={self.k}")

    @classmethod
    def for_family(cls, params: FamilyParams, processors: int, kind: StepKind) -> "StepCostSpec":
        return cls(e=params.e, delta=params.twist_degree, k=params.k, processors=processors, kind=kind)


def step_cost(spec: StepCostSpec, table: Optional[CostTable] = None) -> CostExpr:
    """
    Closed-form longest path of one step.

    4 processors: (7+2d)M_e + 3S_e + M_k doubling, (7+2d)M_e + 4S_e + M_k addition.
    8 processors: (4+d)M_e + 2S_e + M_k for both.

    Raises:
        UnpricedCostError: If `table` is given and lacks M_e, S_e or M_k
    """
    e, d, k = spec.e, spec.delta, spec.k
    if spec.processors == 4:
        squares = 3 if spec.kind is StepKind.DOUBLE else 4
        expr = CostExpr.of("M", e, 7 + 2 * d) + CostExpr.of("S", e, squares)
    else:
        expr = CostExpr.of("M", e, 4 + d) + CostExpr.of("S", e, 2)
    expr = expr + CostExpr.of("M", k)
    if table is not None:
        expr.reduce(table)
    return expr
