"""Rank-2 elliptic nets: contexts, blocks, steps and oracles."""

from pairnet.ellnet.block import NetBlock
from pairnet.ellnet.context import DegenerateNetError, NetContext, build_context, modified_value, to_modified
from pairnet.ellnet.evaluate import StepTrace, initial_block, net_eval, net_walk, step_plan
from pairnet.ellnet.rank1 import Rank1Net, multiple_point, rank1_psi
from pairnet.ellnet.recurrence import (
    NaiveNet,
    ReconstructedCurve,
    block_values,
    check_recurrence,
    reconstruct_curve,
    reconstruct_from_context,
    sample_index_tuples,
)
from pairnet.ellnet.steps import (
    STEP_OPS,
    STEP_OUTPUTS,
    OpShape,
    StepKind,
    StepOp,
    apply_op,
    assemble_block,
    double_step,
    doubleadd_step,
    per_step_model,
    required_ops,
    run_step,
)

__all__ = [
    "STEP_OPS",
    "STEP_OUTPUTS",
    "DegenerateNetError",
    "NaiveNet",
    "NetBlock",
    "NetContext",
    "OpShape",
    "Rank1Net",
    "ReconstructedCurve",
    "StepKind",
    "StepOp",
    "StepTrace",
    "apply_op",
    "assemble_block",
    "block_values",
    "build_context",
    "check_recurrence",
    "double_step",
    "doubleadd_step",
    "initial_block",
    "modified_value",
    "multiple_point",
    "net_eval",
    "net_walk",
    "per_step_model",
    "rank1_psi",
    "reconstruct_curve",
    "reconstruct_from_context",
    "required_ops",
    "run_step",
    "sample_index_tuples",
    "step_plan",
    "to_modified",
]
