"""
Cost Reports

Implements:
1. Cost records for every published security-level seed: step counts,
   Miller-loop cost and net path cost on 4 and 8 processors
2. Per-family step costs
3. Human-readable tables, one per security level
4. Line-delimited JSON records and their parser
5. Comparison against the shipped expected values
"""

import json
import logging
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from pairnet.costmodel.cost_table import DATA_DIR, CostTable
from pairnet.costmodel.step_cost import SUPPORTED_PROCESSORS, StepCostSpec, step_cost
from pairnet.costmodel.totals import loop_expansion, miller_cost, pairing_cost
from pairnet.curves.families import FAMILIES, CurveFamily
from pairnet.curves.scalar import parse_seed
from pairnet.ellnet.steps import StepKind

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

DEFAULT_EXPECTED_PATH = DATA_DIR / "expected.json"

REPORT_ORDER = (CurveFamily.BN, CurveFamily.BLS12, CurveFamily.KSS16, CurveFamily.BLS24, CurveFamily.BLS48)

COST_UNIT = "M+I"
STEP_UNIT = "steps"


@dataclass(frozen=True)
class CostRecord:
    """One reported quantity."""
    metric: str
    family: str
    processors: int
    value: str
    unit: str
    level: int = 0
    seed: str = ""

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CostRecord":
        return cls(
            metric=data["metric"],
            family=data["family"],
            processors=int(data["processors"]),
            value=str(data["value"]),
            unit=data["unit"],
            level=int(data.get("level", 0)),
            seed=data.get("seed", ""),
        )


@dataclass(frozen=True)
class CostMismatch:
    """A reported value that differs from the expected one."""
    family: str
    seed: str
    metric: str
    processors: int
    expected: str
    actual: Optional[str]
    source: str = ""

    def __str__(self) -> str:
        where = f"{self.family} {self.seed} {self.metric}"
        if self.processors:
            where += f" ({self.processors} processors)"
        text = f"{where}: expected {self.expected}, got {self.actual or 'nothing'}"
        return f"{text} [{self.source}]" if self.source else text


def build_step_records(table: CostTable,
                       processors: Sequence[int] = SUPPORTED_PROCESSORS) -> List[CostRecord]:
    """Doubling and addition step costs for every family."""
    records = []
    for family in REPORT_ORDER:
        params = FAMILIES[family]
        for count in processors:
            for kind, metric in ((StepKind.DOUBLE, "double-step"), (StepKind.DOUBLE_ADD, "add-step")):
                cost = step_cost(StepCostSpec.for_family(params, count, kind), table)
                records.append(CostRecord(metric, params.name, count, str(cost.reduce(table)), COST_UNIT))
    return records


def build_report(table: CostTable,
                 processors: Sequence[int] = SUPPORTED_PROCESSORS) -> List[CostRecord]:
    """
    Records for every published seed, ordered by security level.

    Raises:
        UnpricedCostError: If a total references an entry the table lacks
    """
    records = []
    seeds = [(seed, FAMILIES[family]) for family in REPORT_ORDER for seed in FAMILIES[family].published]
    for seed, params in sorted(seeds, key=lambda item: item[0].security_bits):
        expansion = parse_seed(seed.expression)
        loop = loop_expansion(params, expansion)

        def record(metric: str, count: int, value: str, unit: str = COST_UNIT) -> CostRecord:
            return CostRecord(metric, params.name, count, value, unit, seed.security_bits, seed.label)

        records.append(record("doublings", 0, str(loop.doublings), STEP_UNIT))
        records.append(record("additions", 0, str(loop.additions), STEP_UNIT))
        records.append(record("miller", 0, str(miller_cost(params, expansion, table).reduce(table))))
        for count in processors:
            total = pairing_cost(params, expansion, count, table)
            records.append(record("pairing", count, str(total.reduce(table))))
    logger.info(f"Built cost report with {len(records)} records")
    return records


def to_json_lines(records: Sequence[CostRecord]) -> str:
    return "\n".join(record.to_json() for record in records)


def parse_json_lines(text: str) -> List[CostRecord]:
    """
    Parse line-delimited records; blank lines are skipped.

    Raises:
        ValueError: On a line that is not a record
    """
    records = []
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            records.append(CostRecord.from_dict(json.loads(line)))
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            raise ValueError(f"Line {number} is not a cost record: {e}") from e
    return records


def format_table(records: Sequence[CostRecord]) -> str:
    """One table per security level: curve, steps, Miller loop, net path per processor count."""
    rows: Dict[int, Dict[tuple, Dict[str, str]]] = {}
    processors = sorted({r.processors for r in records if r.metric == "pairing"})
    for r in records:
        if not r.level:
            continue
        row = rows.setdefault(r.level, {}).setdefault((r.family, r.seed), {})
        key = f"{r.metric}:{r.processors}" if r.metric == "pairing" else r.metric
        row[key] = r.value

    header = f"{'Curve':<18}{'Steps':>10}{'Miller':>12}" + "".join(f"{f'{n} proc':>14}" for n in processors)
    lines = []
    for level in sorted(rows):
        lines.append(f"Security level {level} (path without final exponentiation)")
        lines.append(header)
        lines.append("-" * len(header))
        for (family, seed), row in rows[level].items():
            steps = f"{row.get('doublings', '?')}/{row.get('additions', '?')}"
            line = f"{family.upper() + ' ' + seed:<18}{steps:>10}{row.get('miller', '-'):>12}"
            line += "".join(f"{row.get(f'pairing:{n}', '-'):>14}" for n in processors)
            lines.append(line)
        lines.append("")
    return "\n".join(lines).rstrip()


def load_expected(path: Optional[Path] = None) -> Dict[str, Any]:
    path = Path(path) if path else DEFAULT_EXPECTED_PATH
    with open(path, "r") as f:
        return json.load(f)


def check_report(records: Sequence[CostRecord], step_records: Sequence[CostRecord] = (),
                 expected: Optional[Dict[str, Any]] = None) -> List[CostMismatch]:
    """
    Every expected value that the records do not reproduce exactly.

    Values for processor counts absent from the records are skipped.
    """
    expected = expected if expected is not None else load_expected()
    index = {(r.family, r.seed, r.metric, r.processors): r.value for r in records}
    sources = expected.get("sources", {})
    present = {r.processors for r in records if r.metric == "pairing"}
    mismatches = []

    def compare(family: str, seed: str, metric: str, processors: int, want: str) -> None:
        got = index.get((family, seed, metric, processors))
        if got != want:
            mismatches.append(CostMismatch(family, seed, metric, processors, want, got, sources.get(metric, "")))

    for row in expected.get("levels", []):
        family, seed = row["family"], row["seed"]
        compare(family, seed, "doublings", 0, str(row["doublings"]))
        compare(family, seed, "additions", 0, str(row["additions"]))
        compare(family, seed, "miller", 0, row["miller"])
        for count in sorted(present):
            if str(count) in row:
                compare(family, seed, "pairing", count, row[str(count)])

    if step_records:
        index.update({(r.family, "", r.metric, r.processors): r.value for r in step_records})
        step_counts = {r.processors for r in step_records}
        for family, per_count in expected.get("steps", {}).items():
            for count, values in per_count.items():
                if int(count) not in step_counts:
                    continue
                compare(family, "", "double-step", int(count), values["double"])
                compare(family, "", "add-step", int(count), values["add"])

    for mismatch in mismatches:
        logger.error(f"Cost check failed: {mismatch}")
    if not mismatches:
        logger.info("✓ All expected cost values reproduced")
    return mismatches
