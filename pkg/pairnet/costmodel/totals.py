"""
Pairing and Miller-Loop Cost Totals

Implements:
1. Loop expansions of a seed (6x+2 for BN, x otherwise)
2. Net-loop cost: doublings and additions priced per schedule
3. Full path cost without final exponentiation (loop plus family extras)
4. Miller-loop reference costs
5. Model tallies of a sequential net walk and the measured-vs-model diff
"""

import logging
from dataclasses import dataclass, field
from typing import Dict

from pairnet.costmodel.cost_table import CostExpr, CostTable
from pairnet.costmodel.step_cost import StepCostSpec, step_cost
from pairnet.curves.families import FamilyParams
from pairnet.curves.scalar import SignedExpansion
from pairnet.ellnet.context import NetContext
from pairnet.ellnet.evaluate import step_plan
from pairnet.ellnet.steps import StepKind, per_step_model
from pairnet.fieldtower.counter import OpCounter

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


def loop_expansion(params: FamilyParams, seed: SignedExpansion) -> SignedExpansion:
    """
    Signed expansion of the loop scalar, built term by term from the seed's.

    Raises:
        ValueError: If the loop polynomial is not integral and linear
    """
    if len(params.loop_poly) != 2 or any(c.denominator != 1 for c in params.loop_poly):
        raise ValueError(f"{params.name} loop polynomial is not an integral linear form")
    offset, scale = (int(c) for c in params.loop_poly)
    return seed.affine(scale, offset)


def loop_cost(params: FamilyParams, seed: SignedExpansion, processors: int) -> CostExpr:
    """d doubling steps plus a addition steps under the schedule's longest path."""
    loop = loop_expansion(params, seed)
    double = step_cost(StepCostSpec.for_family(params, processors, StepKind.DOUBLE))
    add = step_cost(StepCostSpec.for_family(params, processors, StepKind.DOUBLE_ADD))
    logger.debug(f"{params.name} loop {loop}: {loop.doublings} doublings, {loop.additions} additions")
    return double * loop.doublings + add * loop.additions


def pairing_cost(params: FamilyParams, seed: SignedExpansion, processors: int,
                 table: CostTable) -> CostExpr:
    """
    Path cost without the final exponentiation.

    Raises:
        ValueError: On unsupported processor counts
    """
    total = loop_cost(params, seed, processors)
    for name, extra in table.extras(params.name).items():
        logger.debug(f"{params.name} extra '{name}': {extra}")
        total = total + extra
    return total


def miller_cost(params: FamilyParams, seed: SignedExpansion, table: CostTable) -> CostExpr:
    """
    Miller-loop reference cost.

    Families priced by a single constant return it; per-step prices give
    d*double + a*add + (d-1) squarings + (d+a-1) multiplications in F_{p^k}.

    Raises:
        UnpricedCostError: If the table has no Miller prices for the family
    """
    prices = table.miller_prices(params.name)
    if "constant" in prices:
        return CostExpr.parse(prices["constant"])
    loop = loop_expansion(params, seed)
    d, a = loop.doublings, loop.additions
    return (CostExpr.parse(prices["double"]) * d
            + CostExpr.parse(prices["add"]) * a
            + CostExpr.parse(prices["square"]) * (d - 1)
            + CostExpr.parse(prices["multiply"]) * (d + a - 1))


def net_loop_model(ctx: NetContext, m: int) -> OpCounter:
    """Tallies a sequential walk to |m| is expected to record, step by step."""
    model = OpCounter(label=f"net loop model m={m}")
    per_kind = {kind: per_step_model(kind, ctx) for kind in StepKind}
    for kind in step_plan(abs(m)):
        model.merge(per_kind[kind])
    return model


@dataclass
class ModelComparison:
    """Per-level difference of measured tallies against a model."""
    measured: Dict[str, int]
    expected: Dict[str, int]
    differences: Dict[str, int] = field(default_factory=dict)

    @property
    def matches(self) -> bool:
        return not self.differences

    def describe(self) -> str:
        if self.matches:
            return "measured tallies match the model"
        parts = [f"{entry} {delta:+d}" for entry, delta in self.differences.items()]
        return "measured - model: " + ", ".join(parts)


def measured_vs_model(counter: OpCounter, expected: CostExpr) -> ModelComparison:
    """Compare raw tallies of a counting scope with a model expression."""
    model = expected.to_counter()
    comparison = ModelComparison(
        measured=counter.to_dict(),
        expected=model.to_dict(),
        differences=counter.diff(model),
    )
    if not comparison.matches:
        logger.warning(f"Model mismatch: {comparison.describe()}")
    return comparison
