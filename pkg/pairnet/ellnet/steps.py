"""
Double and DoubleAdd Steps

Implements:
1. The factor table U1..U12, V1, V2, X0..X7, Y1, Y4 and the relations
   L1..L9, T1..T4 that take a block at k to a block at 2k or 2k+1
2. Sequential evaluation of a step from that table
3. The per-step operation tally the table implies

The table is shared with the parallel executor, which evaluates the same
operations under a processor schedule. Every operation reads named slots
(block values or earlier operations) and writes exactly one named value.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Mapping, Tuple

from pairnet.ellnet.block import FIRST_SLOTS, SECOND_SLOTS, NetBlock, slot_name
from pairnet.ellnet.context import NetContext
from pairnet.fieldtower.counter import OpCounter, OpKind
from pairnet.fieldtower.element import FieldElement

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class StepKind(Enum):
    """Step types of the double-and-add walk."""
    DOUBLE = "double"
    DOUBLE_ADD = "doubleadd"


class OpShape(Enum):
    """Arithmetic shape of a table operation."""
    PRODUCT = "product"        # a * b
    SQUARE = "square"          # a^2
    CROSS = "cross"            # a*b - c*d
    CROSS_NORM = "cross_norm"  # (a*b - c*d) * W(2,0)^-1
    SCALE = "scale"            # row-1 value times row-0 value
    DIFFERENCE = "difference"  # a - b
    T1 = "t1"
    T3 = "t3"
    T4 = "t4"


@dataclass(frozen=True)
class StepOp:
    name: str
    shape: OpShape
    inputs: Tuple[str, ...]

    @property
    def group(self) -> str:
        """Leading letter: U, V, L, X, Y or T."""
        return self.name[0]

    @property
    def is_factor(self) -> bool:
        """U and V read only block values."""
        return self.group in ("U", "V")


def _w(offset: int) -> str:
    return slot_name(offset, 0)


def _w1(offset: int) -> str:
    return slot_name(offset, 1)


_P, _S, _C, _N = OpShape.PRODUCT, OpShape.SQUARE, OpShape.CROSS, OpShape.CROSS_NORM

STEP_OPS: Tuple[StepOp, ...] = (
    StepOp("U1", _P, (_w(0), _w(-2))),
    StepOp("U2", _S, (_w(-2),)),
    StepOp("U3", _P, (_w(-3), _w(-1))),
    StepOp("U4", _S, (_w(-1),)),
    StepOp("U5", _P, (_w(-1), _w(1))),
    StepOp("U6", _S, (_w(0),)),
    StepOp("U7", _P, (_w(0), _w(2))),
    StepOp("U8", _S, (_w(1),)),
    StepOp("U9", _P, (_w(1), _w(3))),
    StepOp("U10", _S, (_w(2),)),
    StepOp("U11", _P, (_w(2), _w(4))),
    StepOp("U12", _S, (_w(3),)),
    StepOp("V1", _P, (_w1(1), _w1(-1))),
    StepOp("V2", _S, (_w1(0),)),
    StepOp("L1", _C, ("U1", "U2", "U3", "U4")),
    StepOp("L2", _N, ("U5", "U2", "U3", "U6")),
    StepOp("L3", _C, ("U5", "U4", "U1", "U6")),
    StepOp("L4", _N, ("U7", "U4", "U1", "U8")),
    StepOp("L5", _C, ("U7", "U6", "U5", "U8")),
    StepOp("L6", _N, ("U9", "U6", "U5", "U10")),
    StepOp("L7", _C, ("U9", "U8", "U7", "U10")),
    StepOp("L8", _N, ("U11", "U8", "U7", "U12")),
    StepOp("L9", _C, ("U11", "U10", "U9", "U12")),
    StepOp("X0", OpShape.SCALE, ("V1", "U4")),
    StepOp("X1", OpShape.SCALE, ("V2", "U1")),
    StepOp("X2", OpShape.SCALE, ("V1", "U6")),
    StepOp("X3", OpShape.SCALE, ("V2", "U5")),
    StepOp("X4", OpShape.SCALE, ("V1", "U8")),
    StepOp("X5", OpShape.SCALE, ("V2", "U7")),
    StepOp("X6", OpShape.SCALE, ("V2", "U9")),
    StepOp("X7", OpShape.SCALE, ("V1", "U10")),
    StepOp("Y1", OpShape.DIFFERENCE, ("X0", "X1")),
    StepOp("Y4", OpShape.DIFFERENCE, ("X6", "X7")),
    StepOp("T1", OpShape.T1, ("Y1",)),
    StepOp("T2", OpShape.DIFFERENCE, ("X2", "X3")),
    StepOp("T3", OpShape.T3, ("X4", "X5")),
    StepOp("T4", OpShape.T4, ("Y4",)),
)

OPS_BY_NAME: Dict[str, StepOp] = {op.name: op for op in STEP_OPS}

# New first row (8 values) then new second row (3 values)
STEP_OUTPUTS: Dict[StepKind, Tuple[str, ...]] = {
    StepKind.DOUBLE: ("L1", "L2", "L3", "L4", "L5", "L6", "L7", "L8", "T1", "T2", "T3"),
    StepKind.DOUBLE_ADD: ("L2", "L3", "L4", "L5", "L6", "L7", "L8", "L9", "T2", "T3", "T4"),
}

BLOCK_SLOTS = FIRST_SLOTS + SECOND_SLOTS


def required_ops(kind: StepKind) -> List[StepOp]:
    """Operations a step needs, in table (dependency) order."""
    needed = set()
    stack = list(STEP_OUTPUTS[kind])
    while stack:
        name = stack.pop()
        if name in needed or name in BLOCK_SLOTS:
            continue
        needed.add(name)
        stack.extend(OPS_BY_NAME[name].inputs)
    return [op for op in STEP_OPS if op.name in needed]


def _scaled(value: FieldElement, scale) -> FieldElement:
    return value if scale is None else value * scale


def apply_op(op: StepOp, ctx: NetContext, values: Mapping[str, FieldElement]) -> FieldElement:
    """Evaluate one table operation on already available inputs."""
    args = [values[name] for name in op.inputs]
    shape = op.shape
    if shape is OpShape.PRODUCT or shape is OpShape.SCALE:
        return args[0] * args[1]
    if shape is OpShape.SQUARE:
        return args[0].square()
    if shape is OpShape.CROSS:
        return args[0] * args[1] - args[2] * args[3]
    if shape is OpShape.CROSS_NORM:
        return (args[0] * args[1] - args[2] * args[3]).scale_by(ctx.w2_inv, OpKind.NORM)
    if shape is OpShape.DIFFERENCE:
        return args[0] - args[1]
    if shape is OpShape.T1:
        return _scaled(args[0], ctx.t1_scale)
    if shape is OpShape.T3:
        return _scaled(args[0] - args[1], ctx.t3_scale)
    return args[0] * ctx.t4_scale


def assemble_block(kind: StepKind, center: int, values: Mapping[str, FieldElement]) -> NetBlock:
    """Block at 2k (double) or 2k+1 (doubleadd) from the step outputs."""
    names = STEP_OUTPUTS[kind]
    new_center = 2 * center + (1 if kind is StepKind.DOUBLE_ADD else 0)
    return NetBlock(new_center, tuple(values[n] for n in names[:8]), tuple(values[n] for n in names[8:]))


StepFunction = Callable[[NetContext, NetBlock, StepKind], NetBlock]


def run_step(ctx: NetContext, block: NetBlock, kind: StepKind) -> NetBlock:
    """Sequential evaluation of one step."""
    values: Dict[str, FieldElement] = block.slots()
    for op in required_ops(kind):
        values[op.name] = apply_op(op, ctx, values)
    return assemble_block(kind, block.center, values)


def double_step(ctx: NetContext, block: NetBlock) -> NetBlock:
    """Block centered at k -> block centered at 2k."""
    return run_step(ctx, block, StepKind.DOUBLE)


def doubleadd_step(ctx: NetContext, block: NetBlock) -> NetBlock:
    """Block centered at k -> block centered at 2k+1."""
    return run_step(ctx, block, StepKind.DOUBLE_ADD)


def per_step_model(kind: StepKind, ctx: NetContext) -> OpCounter:
    """
    Tally one step is expected to record under `ctx`.

    Row-0 operations sit at degree d0, row-1 at d1; a row-1 by row-0 product
    counts (d1/d0) M_d0.
    """
    d0, d1 = ctx.row0_degree, ctx.row1_degree
    ratio = d1 // d0
    counter = OpCounter(label=f"{kind.value} model")
    for op in required_ops(kind):
        if op.group == "U":
            counter.record(OpKind.MUL if op.shape is OpShape.PRODUCT else OpKind.SQR, d0)
        elif op.group == "V":
            counter.record(OpKind.MUL if op.shape is OpShape.PRODUCT else OpKind.SQR, d1)
        elif op.group == "L":
            counter.record(OpKind.MUL, d0, 2)
            if op.shape is OpShape.CROSS_NORM:
                counter.record(OpKind.NORM, d0)
        elif op.group == "X":
            counter.record(OpKind.MUL, d0, ratio)
        else:
            _record_scalar(counter, op, ctx, d1)
    return counter


def _record_scalar(counter: OpCounter, op: StepOp, ctx: NetContext, d1: int) -> None:
    scale = {OpShape.T1: ctx.t1_scale, OpShape.T3: ctx.t3_scale, OpShape.T4: ctx.t4_scale}.get(op.shape)
    if scale is None:
        return
    counter.record(OpKind.MUL, scale.degree, d1 // scale.degree)
