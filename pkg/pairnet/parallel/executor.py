"""
Parallel Step Executor

Implements:
1. One worker thread per processor of a schedule
2. Two phases separated by a barrier: factors (U, V), then combinations
   (L, X, Y, T) reading published values from the shared board
3. Private per-worker operation counters, merged into the caller's
   counting scope after the step
4. A StepFunction adapter so net walks can run every step in parallel

Blocks produced here are identical to the sequential step's.
"""

import contextvars
import logging
import threading
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from pairnet.costmodel.cost_table import CostExpr, CostTable, ReducedCost
from pairnet.ellnet.block import NetBlock
from pairnet.ellnet.context import NetContext
from pairnet.ellnet.steps import OPS_BY_NAME, StepKind, apply_op, assemble_block
from pairnet.fieldtower.counter import OpCounter, counting, current_counter
from pairnet.parallel.board import SharedBoard
from pairnet.parallel.schedule import ScheduleError, StepSchedule, load_schedule, validate_schedule

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

DEFAULT_TIMEOUT = 30.0


@dataclass
class WorkerReport:
    """What one processor did during a step."""
    processor: int
    tasks: List[str]
    reads: List[str]
    counter: OpCounter = field(default_factory=OpCounter)

    def cost(self) -> CostExpr:
        return CostExpr.from_counter(self.counter)


@dataclass
class ParallelStepResult:
    """Output block and per-worker reports of one scheduled step."""
    block: NetBlock
    schedule: str
    workers: List[WorkerReport]

    def total_counter(self) -> OpCounter:
        total = OpCounter(label=f"{self.schedule} total")
        for worker in self.workers:
            total.merge(worker.counter)
        return total

    def critical_value(self, table: CostTable) -> ReducedCost:
        """Largest per-worker cost, unpriced squarings bounded by multiplications."""
        costs = [w.cost().upper_bound(table) for w in self.workers]
        return max(costs, key=lambda c: (c.m, c.i))


class _StepRun:
    def __init__(self, ctx: NetContext, block: NetBlock, schedule: StepSchedule, timeout: float):
        self.ctx = ctx
        self.block = block
        self.schedule = schedule
        self.board = SharedBoard(block.slots(), schedule.tasks, timeout=timeout)
        self.barrier = threading.Barrier(schedule.processors, timeout=timeout)
        self.workers = [
            WorkerReport(processor=i + 1, tasks=list(tasks), reads=schedule.reads(i))
            for i, tasks in enumerate(schedule.assignments)
        ]
        self.errors: Dict[int, BaseException] = {}

    def _compute(self, name: str) -> None:
        op = OPS_BY_NAME[name]
        inputs = {arg: self.board.read(arg) for arg in op.inputs}
        self.board.publish(name, apply_op(op, self.ctx, inputs))

    def work(self, index: int) -> None:
        report = self.workers[index]
        try:
            with counting(f"P{index + 1}") as counter:
                report.counter = counter
                for name in self.schedule.factor_tasks(index):
                    self._compute(name)
                self.barrier.wait()
                for name in self.schedule.combine_tasks(index):
                    self._compute(name)
        except threading.BrokenBarrierError as e:
            if not self.board.aborted:
                self.errors[index] = ScheduleError(f"P{index + 1} timed out at the phase barrier")
                self.board.abort()
            logger.debug(f"P{index + 1} stopped: {e!r}")
        except Exception as e:
            if self.board.aborted:
                logger.debug(f"P{index + 1} stopped after abort: {e}")
                return
            self.errors[index] = e
            self.board.abort()
            self.barrier.abort()
            logger.error(f"P{index + 1} failed in schedule '{self.schedule.name}': {e}")

    def run(self) -> ParallelStepResult:
        threads = [
            threading.Thread(target=contextvars.Context().run, args=(self.work, i),
                             name=f"{self.schedule.name}-P{i + 1}", daemon=True)
            for i in range(self.schedule.processors)
        ]
        for thread in threads:
            thread.start()
        for thread in threads:
            thread.join()

        if self.errors:
            first = min(self.errors)
            raise self.errors[first]

        parent = current_counter()
        if parent is not None:
            for worker in self.workers:
                parent.merge(worker.counter)

        block = assemble_block(self.schedule.kind, self.block.center, self.board.published())
        return ParallelStepResult(block=block, schedule=self.schedule.name, workers=self.workers)


def execute_schedule(ctx: NetContext, block: NetBlock, schedule: StepSchedule,
                     timeout: float = DEFAULT_TIMEOUT, validate: bool = True) -> ParallelStepResult:
    """
    Run one step of `schedule.kind` across the schedule's processors.

    Raises:
        ScheduleError: If the schedule is invalid, a slot is written twice,
            or a read times out
    """
    if validate:
        validate_schedule(schedule).raise_for_errors()
    result = _StepRun(ctx, block, schedule, timeout).run()
    logger.debug(f"{schedule.name}: center {block.center} -> {result.block.center}")
    return result


def run_step_parallel(ctx: NetContext, block: NetBlock, schedule: StepSchedule,
                      timeout: float = DEFAULT_TIMEOUT) -> NetBlock:
    """Output block of one scheduled step."""
    return execute_schedule(ctx, block, schedule, timeout).block


class ScheduledStepper:
    """
    StepFunction running every step under the shipped schedules for one
    processor count.
    """

    def __init__(self, processors: int = 4, timeout: float = DEFAULT_TIMEOUT,
                 schedules: Optional[Dict[StepKind, StepSchedule]] = None):
        self.processors = processors
        self.timeout = timeout
        self.schedules = schedules or {kind: load_schedule(kind, processors) for kind in StepKind}
        for kind, schedule in self.schedules.items():
            if schedule.kind is not kind:
                raise ScheduleError(f"Schedule '{schedule.name}' computes {schedule.kind.value}, not {kind.value}")
            validate_schedule(schedule).raise_for_errors()
        self.last: Optional[ParallelStepResult] = None
        self.steps = 0

    def __call__(self, ctx: NetContext, block: NetBlock, kind: StepKind) -> NetBlock:
        self.last = execute_schedule(ctx, block, self.schedules[kind], self.timeout, validate=False)
        self.steps += 1
        return self.last.block
