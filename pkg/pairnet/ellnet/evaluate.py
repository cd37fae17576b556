"""
Net Evaluation by Double-and-Add

Implements:
1. The initial block centered at 1
2. The left-to-right binary walk to W(m,0), W(m,1)
3. Step traces (type, center, block digest) as JSON lines
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from pairnet.ellnet.block import NetBlock
from pairnet.ellnet.context import NetContext
from pairnet.ellnet.steps import StepFunction, StepKind, run_step
from pairnet.fieldtower.element import FieldElement

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)
trace_logger = logging.getLogger("pairnet.ellnet.trace")


@dataclass
class StepTrace:
    """In-memory record of a walk; each step is also logged as one JSON line."""
    label: str = ""
    records: List[Dict[str, Any]] = field(default_factory=list)

    def add(self, kind: StepKind, block: NetBlock) -> None:
        record = {
            "label": self.label,
            "step": len(self.records) + 1,
            "type": kind.value,
            "center": str(block.center),
            "digest": block.digest(),
        }
        self.records.append(record)
        trace_logger.debug(json.dumps(record, sort_keys=True))

    def digests(self) -> List[str]:
        return [r["digest"] for r in self.records]

    def to_lines(self) -> str:
        return "\n".join(json.dumps(r, sort_keys=True) for r in self.records)

    def first_divergence(self, other: "StepTrace") -> Optional[int]:
        """1-based step where the two traces first differ, or None."""
        for i, (a, b) in enumerate(zip(self.digests(), other.digests()), start=1):
            if a != b:
                return i
        if len(self.records) != len(other.records):
            return min(len(self.records), len(other.records)) + 1
        return None


def initial_block(ctx: NetContext) -> NetBlock:
    """Block centered at 1: W(-2,0)..W(5,0) and W(0,1), W(1,1), W(2,1)."""
    return NetBlock(1, ctx.initial_first_row, ctx.initial_second_row)


def step_plan(m: int) -> List[StepKind]:
    """Steps after the leading bit of m: 0 -> double, 1 -> doubleadd."""
    if m < 1:
        raise ValueError(f"Net index must be positive, got {m}")
    return [StepKind.DOUBLE_ADD if bit == "1" else StepKind.DOUBLE for bit in bin(m)[3:]]


def net_walk(ctx: NetContext, m: int, trace: Optional[StepTrace] = None,
             step: StepFunction = run_step) -> NetBlock:
    """
    Block centered at m.

    Args:
        ctx: Net constants
        m: Target index, m >= 1
        trace: Optional step recorder
        step: Step implementation (sequential by default)

    Raises:
        ValueError: If m < 1
    """
    block = initial_block(ctx)
    plan = step_plan(m)
    for kind in plan:
        block = step(ctx, block, kind)
        logger.debug(f"{kind.value} -> center {block.center}")
        if trace is not None:
            trace.add(kind, block)
    return block


def net_eval(ctx: NetContext, m: int, trace: Optional[StepTrace] = None,
             step: StepFunction = run_step) -> Tuple[FieldElement, FieldElement]:
    """(W(m,0), W(m,1)) of the context's net, m >= 1."""
    block = net_walk(ctx, m, trace, step)
    return block.w0(m), block.w1(m)
