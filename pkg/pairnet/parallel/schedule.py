"""
Processor Schedules for Net Steps

Implements:
1. StepSchedule: ordered task lists per processor for one step kind
2. Loading the shipped 4- and 8-processor schedules
3. Validation: known tasks, single producer, completeness, factor/combine
   phase order and acyclicity of data plus program-order dependencies
4. Critical path: per-processor cost under the published pricing and the
   most expensive processor

Reads of values produced on another processor are not listed in the
documents; they follow from the operation inputs.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Set, Tuple, Union

from pairnet.config.config_validator import ConfigError
from pairnet.costmodel.cost_table import CostExpr, CostTable, ReducedCost
from pairnet.costmodel.step_cost import SUPPORTED_PROCESSORS, StepCostSpec
from pairnet.ellnet.steps import BLOCK_SLOTS, OPS_BY_NAME, OpShape, StepKind, StepOp, required_ops

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).parent / "data"

SCHEDULE_FILES = {
    (StepKind.DOUBLE, 4): "double_4.json",
    (StepKind.DOUBLE_ADD, 4): "add_4.json",
    (StepKind.DOUBLE, 8): "double_8.json",
    (StepKind.DOUBLE_ADD, 8): "add_8.json",
}


class ScheduleError(ValueError):
    """A schedule cannot be executed as written."""

    def __init__(self, message: str, issues: Optional[List[ConfigError]] = None):
        self.issues = issues or []
        super().__init__(message)


@dataclass(frozen=True)
class StepSchedule:
    """
    Per-processor assignment of the operations of one step.

    Attributes:
        name: Schedule name, e.g. "double-4"
        kind: Step kind the schedule computes
        assignments: Task names per processor, in execution order
        description: Free text
    """
    name: str
    kind: StepKind
    assignments: Tuple[Tuple[str, ...], ...]
    description: str = ""

    @property
    def processors(self) -> int:
        return len(self.assignments)

    @property
    def tasks(self) -> List[str]:
        return [task for tasks in self.assignments for task in tasks]

    def producers(self) -> Dict[str, int]:
        """Task name -> 0-based processor index (first producer wins)."""
        out: Dict[str, int] = {}
        for index, tasks in enumerate(self.assignments):
            for task in tasks:
                out.setdefault(task, index)
        return out

    def factor_tasks(self, index: int) -> List[str]:
        return [t for t in self.assignments[index] if t in OPS_BY_NAME and OPS_BY_NAME[t].is_factor]

    def combine_tasks(self, index: int) -> List[str]:
        return [t for t in self.assignments[index] if t in OPS_BY_NAME and not OPS_BY_NAME[t].is_factor]

    def reads(self, index: int) -> List[str]:
        """Values processor `index` reads from other processors."""
        producers = self.producers()
        seen: List[str] = []
        for task in self.assignments[index]:
            for name in OPS_BY_NAME[task].inputs if task in OPS_BY_NAME else ():
                if name not in BLOCK_SLOTS and producers.get(name, index) != index and name not in seen:
                    seen.append(name)
        return seen

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "StepSchedule":
        """
        Build from a schedule document.

        Raises:
            ScheduleError: On a malformed document
        """
        try:
            kind = StepKind(data["kind"])
            ordered = sorted(data["assignments"], key=lambda a: int(a["processor"]))
            assignments = tuple(tuple(str(t) for t in a["tasks"]) for a in ordered)
        except (KeyError, TypeError, ValueError) as e:
            raise ScheduleError(f"Malformed schedule document: {e}") from e
        declared = data.get("processors", len(assignments))
        if declared != len(assignments):
            raise ScheduleError(f"Schedule declares {declared} processors but assigns {len(assignments)}")
        return cls(name=data.get("name", f"{kind.value}-{len(assignments)}"), kind=kind,
                   assignments=assignments, description=data.get("description", ""))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "kind": self.kind.value,
            "processors": self.processors,
            "description": self.description,
            "assignments": [
                {"processor": i + 1, "tasks": list(tasks)} for i, tasks in enumerate(self.assignments)
            ],
        }

    @classmethod
    def load(cls, path: Union[str, Path]) -> "StepSchedule":
        with open(path, "r") as f:
            schedule = cls.from_dict(json.load(f))
        logger.info(f"Loaded schedule '{schedule.name}' ({schedule.processors} processors) from {path}")
        return schedule


def load_schedule(kind: StepKind, processors: int) -> StepSchedule:
    """
    Shipped schedule for a step kind and processor count.

    Raises:
        ScheduleError: If no schedule exists for the combination
    """
    try:
        filename = SCHEDULE_FILES[(kind, processors)]
    except KeyError:
        raise ScheduleError(f"No {kind.value} schedule for {processors} processors "
                            f"(supported: {', '.join(map(str, SUPPORTED_PROCESSORS))})") from None
    return StepSchedule.load(DATA_DIR / filename)


def op_cost(op: StepOp, spec: StepCostSpec) -> CostExpr:
    """
    Published price of one operation at the field layout of `spec`.

    Normalising multiplications of the even L relations are not priced.
    """
    e, k = spec.e, spec.k
    group = op.group
    if group == "U":
        return CostExpr.of("M" if op.shape is OpShape.PRODUCT else "S", e)
    if group == "V":
        return CostExpr.of("M" if op.shape is OpShape.PRODUCT else "S", k)
    if group == "L":
        return CostExpr.of("M", e, 2)
    if group == "X":
        return CostExpr.of("M", e, spec.delta)
    if op.shape is OpShape.T1:
        return CostExpr.of("M", k // 2, 2)
    if op.shape is OpShape.T4:
        return CostExpr.of("M", k)
    return CostExpr()


@dataclass
class ScheduleDiagnostics:
    """Outcome of validate_schedule."""
    schedule: str
    is_valid: bool = True
    issues: List[ConfigError] = field(default_factory=list)
    processor_costs: List[CostExpr] = field(default_factory=list)
    critical_path: Optional[CostExpr] = None
    worst_processor: Optional[int] = None
    critical_value: Optional[ReducedCost] = None

    @property
    def errors(self) -> List[ConfigError]:
        return [i for i in self.issues if i.severity == "error"]

    def raise_for_errors(self) -> None:
        if not self.is_valid:
            summary = "; ".join(str(i) for i in self.errors)
            raise ScheduleError(f"Schedule '{self.schedule}' is invalid: {summary}", self.errors)


def _dependency_edges(schedule: StepSchedule) -> Dict[str, Set[str]]:
    """Task -> tasks it must wait for: producers of its inputs, its predecessor, the phase barrier."""
    producers = set(schedule.tasks)
    factors = {t for t in producers if t in OPS_BY_NAME and OPS_BY_NAME[t].is_factor}
    edges: Dict[str, Set[str]] = {t: set() for t in producers}
    for tasks in schedule.assignments:
        for position, task in enumerate(tasks):
            if task not in OPS_BY_NAME:
                continue
            deps = edges[task]
            deps.update(name for name in OPS_BY_NAME[task].inputs if name in producers)
            if position:
                deps.add(tasks[position - 1])
            if not OPS_BY_NAME[task].is_factor:
                deps.update(factors)
    return edges


def _find_cycle(edges: Dict[str, Set[str]]) -> List[str]:
    """Tasks left over by a topological sort (empty when acyclic)."""
    remaining = {task: set(deps) for task, deps in edges.items()}
    ready = [t for t, deps in remaining.items() if not deps]
    while ready:
        done = ready.pop()
        del remaining[done]
        for task, deps in remaining.items():
            if done in deps:
                deps.discard(done)
                if not deps and task not in ready:
                    ready.append(task)
    return sorted(remaining)


def validate_schedule(schedule: StepSchedule, spec: Optional[StepCostSpec] = None,
                      table: Optional[CostTable] = None) -> ScheduleDiagnostics:
    """
    Check that a schedule computes its step and, given a field layout,
    price each processor.

    Args:
        schedule: Schedule to check
        spec: Field layout used for the critical path (skipped when None)
        table: Prices used to rank processors (shipped table when None)

    Returns:
        Diagnostics; validation problems never raise here
    """
    diag = ScheduleDiagnostics(schedule=schedule.name)

    def error(parameter: str, value: Any, reason: str) -> None:
        diag.issues.append(ConfigError(parameter, value, reason, "error"))

    if schedule.processors not in SUPPORTED_PROCESSORS:
        error("processors", schedule.processors, "Processor count must be 4 or 8")

    seen: Dict[str, int] = {}
    for index, tasks in enumerate(schedule.assignments):
        for task in tasks:
            if task not in OPS_BY_NAME:
                error(f"P{index + 1}", task, f"Unknown task {task}")
            elif task in seen:
                error(f"P{index + 1}", task, f"{task} is already produced by P{seen[task] + 1}")
            else:
                seen[task] = index

    needed = {op.name for op in required_ops(schedule.kind)}
    for name in sorted(needed - set(seen), key=lambda n: list(OPS_BY_NAME).index(n)):
        error("outputs", name, f"No processor produces {name}")
    for name in sorted(set(seen) - needed):
        diag.issues.append(ConfigError("outputs", name, f"{name} is not used by a {schedule.kind.value} step",
                                       "warning"))

    for index in range(schedule.processors):
        tasks = [t for t in schedule.assignments[index] if t in OPS_BY_NAME]
        first_combine = next((i for i, t in enumerate(tasks) if not OPS_BY_NAME[t].is_factor), len(tasks))
        late = [t for t in tasks[first_combine:] if OPS_BY_NAME[t].is_factor]
        if late:
            error(f"P{index + 1}", late, "Factor tasks must precede combination tasks")

    cycle = _find_cycle(_dependency_edges(schedule))
    if cycle:
        error("order", cycle, f"Read-before-write cycle among {', '.join(cycle)}")

    diag.is_valid = not diag.errors

    if spec is not None:
        table = table or CostTable.load()
        for tasks in schedule.assignments:
            cost = CostExpr()
            for task in tasks:
                if task in OPS_BY_NAME:
                    cost = cost + op_cost(OPS_BY_NAME[task], spec)
            diag.processor_costs.append(cost)
        ranked = [cost.upper_bound(table) for cost in diag.processor_costs]
        worst = max(range(len(ranked)), key=lambda i: (ranked[i].m, ranked[i].i))
        diag.worst_processor = worst + 1
        diag.critical_path = diag.processor_costs[worst]
        diag.critical_value = ranked[worst]

    if diag.is_valid:
        logger.debug(f"Schedule '{schedule.name}' is valid")
    else:
        logger.error(f"Schedule '{schedule.name}' failed validation with {len(diag.errors)} errors")
    return diag

