"""Net steps executed across 4 or 8 worker threads under fixed schedules."""

from pairnet.parallel.board import SharedBoard
from pairnet.parallel.executor import (
    ParallelStepResult,
    ScheduledStepper,
    WorkerReport,
    execute_schedule,
    run_step_parallel,
)
from pairnet.parallel.schedule import (
    ScheduleDiagnostics,
    ScheduleError,
    StepSchedule,
    load_schedule,
    op_cost,
    validate_schedule,
)

__all__ = [
    "ParallelStepResult",
    "ScheduleDiagnostics",
    "ScheduleError",
    "ScheduledStepper",
    "SharedBoard",
    "StepSchedule",
    "WorkerReport",
    "execute_schedule",
    "load_schedule",
    "op_cost",
    "run_step_parallel",
    "validate_schedule",
]
