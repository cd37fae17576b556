"""
Verification Suite

Implements:
1. Net integrity: recurrence, division polynomials, twist transport,
   modified nets
2. Pairing agreement: net vs Miller optimal ate, net vs Miller Tate,
   bilinearity
3. Parallel steps: scheduled output equals sequential output, critical
   paths equal the closed forms
4. Counts and costs: loop step counts, expected cost tables, measured
   tallies against the per-step model

Each check yields CheckResult records; the suite aggregates them into an
overall status and a report dictionary.
"""

import logging
import random
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterable, List, Optional

from pairnet.config.fixtures import FixtureStore
from pairnet.costmodel.cost_table import CostExpr, CostTable
from pairnet.costmodel.report import build_report, build_step_records, check_report, load_expected
from pairnet.costmodel.step_cost import SUPPORTED_PROCESSORS, StepCostSpec, step_cost
from pairnet.costmodel.totals import loop_cost, loop_expansion, measured_vs_model, net_loop_model
from pairnet.curves.families import get_family
from pairnet.curves.instance import CurveInstance
from pairnet.curves.scalar import binary_step_counts, parse_seed
from pairnet.ellnet.block import NetBlock
from pairnet.ellnet.context import NetContext, build_context, modified_value
from pairnet.ellnet.evaluate import StepTrace, net_walk
from pairnet.ellnet.rank1 import Rank1Net, multiple_point
from pairnet.ellnet.recurrence import NaiveNet, check_recurrence, reconstruct_from_context, sample_index_tuples
from pairnet.ellnet.steps import StepKind, run_step
from pairnet.fieldtower.counter import counting, paused
from pairnet.fieldtower.element import FieldElement
from pairnet.pairing.optimal_ate import optimal_ate, optimal_ate_miller, pairing_context
from pairnet.pairing.tate import TateForm, tate_miller, tate_net
from pairnet.parallel.executor import DEFAULT_TIMEOUT, execute_schedule
from pairnet.parallel.schedule import load_schedule, validate_schedule

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

CHECK_NAMES = (
    "recurrence",
    "division-polynomial",
    "twist-transport",
    "modified-net",
    "net-miller",
    "tate",
    "bilinearity",
    "parallel",
    "step-count",
    "cost-table",
)

# Checks that do not depend on a curve instance
GLOBAL_CHECKS = ("cost-table",)


class CheckStatus(Enum):
    """Outcome of a check."""
    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"


@dataclass
class CheckResult:
    """Single check outcome."""
    name: str
    family: str
    status: CheckStatus
    message: str = ""
    details: Dict[str, Any] = field(default_factory=dict)
    duration: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status is CheckStatus.PASS


def _result(name: str, family: str, ok: bool, message: str, **details: Any) -> CheckResult:
    return CheckResult(name, family, CheckStatus.PASS if ok else CheckStatus.FAIL, message, details)


def _groups(instance: CurveInstance):
    instance._require_groups()
    return instance.g2, instance.g1


def check_net_recurrence(ctx: NetContext, family: str, rng: random.Random, samples: int = 500,
                         bound: int = 40, walk_to: int = 24) -> CheckResult:
    """
    The four-term relation on sampled tuples, the curve recovered from the
    early values, and walked blocks against naive recursion.
    """
    naive = NaiveNet(ctx, bound)
    report = check_recurrence(naive, sample_index_tuples(rng, samples, bound))
    mismatched = []
    for m in range(1, walk_to + 1):
        block = net_walk(ctx, m)
        if block.w0(m) != naive(m, 0) or block.w1(m) != naive(m, 1):
            mismatched.append(m)
    curve_ok = True
    if not ctx.modified:
        curve_ok = reconstruct_from_context(ctx).matches(ctx.curve)
    ok = report.holds and not mismatched and curve_ok
    message = (f"relation on {report.checked} tuples ({len(report.failures)} failures), "
               f"walk mismatches {mismatched[:5]}, curve {'recovered' if curve_ok else 'mismatch'}")
    return _result("recurrence", family, ok, message, checked=report.checked,
                   failures=[str(t) for t in report.failures[:10]], walk_mismatches=mismatched)


def check_division_polynomial(ctx: NetContext, family: str, up_to: int = 50) -> CheckResult:
    """W(n,0) = psi_n of the first point, and [n]S from division polynomials."""
    naive = NaiveNet(ctx, up_to + 2)
    rank1 = Rank1Net(ctx.first)
    bad = [n for n in range(1, up_to + 1) if naive(n, 0) != rank1.psi(n)]
    bad_points = [n for n in (2, 3, 5, 7, 11) if multiple_point(ctx.first, n) != ctx.first * n]
    ok = not bad and not bad_points
    return _result("division-polynomial", family, ok,
                   f"psi_n agrees for n <= {up_to}" if ok else f"psi mismatch at {bad[:5]}, multiples {bad_points}",
                   psi_mismatches=bad, multiple_mismatches=bad_points)


def check_twist_transport(instance: CurveInstance, up_to: int = 20) -> CheckResult:
    """W_{Q,P}(n,0) = theta^(n^2-1) W~(n,0) and W_{Q,P}(n,1) = theta^(n^2-n) W~(n,1)."""
    Q, P = _groups(instance)
    twisted = NaiveNet(pairing_context(instance, Q, P, modified=False), up_to + 2)
    untwisted = NaiveNet(build_context(instance.twist_map(Q), instance.lift_g1(P)), up_to + 2)
    bad = []
    with paused():
        for n in range(1, up_to + 1):
            if untwisted(n, 0) != instance.theta_power(n * n - 1) * twisted(n, 0):
                bad.append((n, 0))
            if untwisted(n, 1) != instance.theta_power(n * n - n) * twisted(n, 1):
                bad.append((n, 1))
    return _result("twist-transport", instance.family, not bad,
                   f"transport holds for n <= {up_to}" if not bad else f"transport fails at {bad[:5]}",
                   mismatches=bad)


def check_modified_net(instance: CurveInstance, rng: random.Random, samples: int = 500,
                       walk_to: int = 24) -> CheckResult:
    """The rescaled net satisfies the relation and matches c^(uv) W(u,v)."""
    Q, P = _groups(instance)
    plain = pairing_context(instance, Q, P, modified=False)
    modified = pairing_context(instance, Q, P, modified=True)
    naive_plain = NaiveNet(plain, 40)
    report = check_recurrence(NaiveNet(modified, 40), sample_index_tuples(rng, samples, 40))
    bad = []
    for m in range(1, walk_to + 1):
        block = net_walk(modified, m)
        if block.w1(m) != modified_value(modified, m, 1, naive_plain(m, 1)):
            bad.append(m)
    ok = report.holds and not bad
    return _result("modified-net", instance.family, ok,
                   f"relation on {report.checked} tuples ({len(report.failures)} failures), walk mismatches {bad[:5]}",
                   checked=report.checked, walk_mismatches=bad, half_degree=modified.half_degree)


def check_net_miller(instance: CurveInstance) -> CheckResult:
    Q, P = _groups(instance)
    net = optimal_ate(instance, Q, P)
    reference = optimal_ate_miller(instance, Q, P)
    ok = net.reduced == reference.reduced and net.is_root_of_unity(instance.r) and not net.reduced.is_one()
    return _result("net-miller", instance.family, ok,
                   f"net {net.reduced.digest()} vs Miller {reference.reduced.digest()}",
                   net=net.reduced.digest(), miller=reference.reduced.digest(), steps=list(net.steps))


def check_tate(instance: CurveInstance) -> CheckResult:
    Q, P = _groups(instance)
    Q_k = instance.twist_map(Q)
    reference = tate_miller(instance, P, Q_k).reduced
    digests = {"miller": reference.digest()}
    ok = not reference.is_one()
    for form in TateForm:
        value = tate_net(instance, P, Q_k, form=form).reduced
        digests[form.value] = value.digest()
        ok = ok and value == reference
    return _result("tate", instance.family, ok, ", ".join(f"{k} {v}" for k, v in digests.items()), **digests)


def check_bilinearity(instance: CurveInstance, rng: random.Random, scalars: int = 20) -> CheckResult:
    """e([a]Q, P) = e(Q, [a]P) = e(Q, P)^a for random a, and e(Q, P) != 1."""
    Q, P = _groups(instance)
    base = optimal_ate(instance, Q, P).reduced
    failures = []
    for _ in range(scalars):
        a = rng.randrange(2, instance.r)
        with paused():
            expected = base ** a
        left = optimal_ate(instance, Q * a, P).reduced
        right = optimal_ate(instance, Q, P * a).reduced
        if left != expected or right != expected:
            failures.append(a)
    ok = not failures and not base.is_one()
    return _result("bilinearity", instance.family, ok,
                   f"{scalars - len(failures)}/{scalars} scalar checks" + ("" if not base.is_one() else ", e(Q,P) = 1"),
                   failures=failures, scalars=scalars)


def random_block(ctx: NetContext, rng: random.Random) -> NetBlock:
    tower = ctx.w2.tower
    first = tuple(FieldElement.sample(tower, ctx.row0_degree, rng) for _ in range(8))
    second = tuple(FieldElement.sample(tower, ctx.row1_degree, rng) for _ in range(3))
    return NetBlock(rng.randrange(1, 1 << 20), first, second)


def check_parallel(instance: CurveInstance, rng: random.Random, blocks: int = 100,
                   table: Optional[CostTable] = None, timeout: float = DEFAULT_TIMEOUT) -> CheckResult:
    """Scheduled steps equal sequential ones; critical paths equal the closed forms."""
    Q, P = _groups(instance)
    ctx = pairing_context(instance, Q, P, modified=True)
    table = table or CostTable.load()
    params = instance.params
    mismatched: List[str] = []
    paths: Dict[str, str] = {}
    for processors in SUPPORTED_PROCESSORS:
        for kind in StepKind:
            schedule = load_schedule(kind, processors)
            spec = StepCostSpec.for_family(params, processors, kind)
            diag = validate_schedule(schedule, spec, table)
            closed = step_cost(spec, table)
            paths[schedule.name] = str(diag.critical_value)
            if not diag.is_valid or diag.critical_path != closed:
                mismatched.append(f"{schedule.name} critical path {diag.critical_path} != {closed}")
            for _ in range(blocks):
                block = random_block(ctx, rng)
                with counting("sequential") as sequential:
                    expected = run_step(ctx, block, kind)
                result = execute_schedule(ctx, block, schedule, timeout=timeout, validate=False)
                if result.block != expected:
                    mismatched.append(f"{schedule.name} block at center {block.center}")
                    break
                if result.total_counter().to_dict() != sequential.to_dict():
                    mismatched.append(f"{schedule.name} tallies {result.total_counter()} != {sequential}")
                    break
    return _result("parallel", instance.family, not mismatched,
                   f"{blocks} blocks x {len(paths)} schedules" if not mismatched else "; ".join(mismatched[:3]),
                   critical_paths=paths, mismatches=mismatched)


def check_step_count(instance: CurveInstance, expected: Optional[Dict[str, Any]] = None) -> CheckResult:
    """Published loop scalars give the expected step counts; walks take one step per bit."""
    expected = expected if expected is not None else load_expected()
    params = instance.params
    problems = []
    for row in expected.get("levels", []):
        if row["family"] != params.name:
            continue
        seed = params.published_seed(row["seed"])
        loop = loop_expansion(params, parse_seed(seed.expression))
        if (loop.doublings, loop.additions) != (row["doublings"], row["additions"]):
            source = expected.get("sources", {}).get("doublings")
            problems.append(f"{row['seed']}: {loop.doublings}/{loop.additions}, expected "
                            f"{row['doublings']}/{row['additions']}" + (f" [{source}]" if source else ""))
    if instance.g1 is not None and instance.g2 is not None:
        m = instance.loop_scalar
        trace = StepTrace(label=f"{params.name} loop")
        net_walk(pairing_context(instance, instance.g2, instance.g1), abs(m), trace=trace)
        adds = sum(1 for r in trace.records if r["type"] == StepKind.DOUBLE_ADD.value)
        if (len(trace.records), adds) != binary_step_counts(m):
            problems.append(f"desk walk took {len(trace.records)} steps with {adds} additions")
    return _result("step-count", params.name, not problems,
                   "step counts reproduced" if not problems else "; ".join(problems), problems=problems)


def check_cost_table(table: Optional[CostTable] = None, instance: Optional[CurveInstance] = None) -> CheckResult:
    """Expected tables reproduced, M_12 consistent, and measured tallies matching the step model."""
    table = table or CostTable.load()
    mismatches = [str(m) for m in check_report(build_report(table), build_step_records(table))]
    bn = get_family("bn")
    bn_seed = parse_seed(bn.published_seed().expression)
    bn_loop = loop_cost(bn, bn_seed, 4).reduce(table)
    if bn_loop.m != 14286 or bn_loop.i:
        mismatches.append(f"BN 4-processor loop {bn_loop}, expected 14286M")
    back_solved = 117 - (19 * table.price("M", 2).m + 3 * table.price("S", 2).m)
    if table.price("M", 12).m != back_solved:
        mismatches.append(f"M_12 = {table.price('M', 12)} but the BN doubling implies {back_solved}M")
    model_message = ""
    if instance is not None and instance.g1 is not None:
        ctx = pairing_context(instance, instance.g2, instance.g1)
        m = abs(instance.loop_scalar)
        with counting("loop") as measured:
            net_walk(ctx, m)
        comparison = measured_vs_model(measured, CostExpr.from_counter(net_loop_model(ctx, m)))
        model_message = f", {instance.family} walk: {comparison.describe()}"
        if not comparison.matches:
            mismatches.append(f"{instance.family} walk: {comparison.describe()}")
    ok = not mismatches
    return _result("cost-table", "all", ok,
                   ("all expected values reproduced" + model_message) if ok else "; ".join(mismatches[:5]),
                   mismatches=mismatches)


class VerificationSuite:
    """Runs named checks over fixture instances."""

    def __init__(self, store: Optional[FixtureStore] = None, families: Optional[Iterable[str]] = None,
                 rng_seed: int = 2024, scalars: int = 20, blocks: int = 100, samples: int = 500,
                 timeout: float = DEFAULT_TIMEOUT):
        self.store = store or FixtureStore.load()
        self.families = list(families) if families else self.store.names()
        self.rng_seed = rng_seed
        self.scalars = scalars
        self.blocks = blocks
        self.samples = samples
        self.timeout = timeout
        self.results: List[CheckResult] = []
        logger.info(f"Verification suite initialized for {', '.join(self.families)}")

    def _instance_check(self, name: str) -> Callable[[CurveInstance, random.Random], CheckResult]:
        def plain_ctx(instance: CurveInstance) -> NetContext:
            Q, P = _groups(instance)
            return pairing_context(instance, Q, P, modified=False)

        checks: Dict[str, Callable[[CurveInstance, random.Random], CheckResult]] = {
            "recurrence": lambda i, rng: check_net_recurrence(plain_ctx(i), i.family, rng, self.samples),
            "division-polynomial": lambda i, rng: check_division_polynomial(plain_ctx(i), i.family),
            "twist-transport": lambda i, rng: check_twist_transport(i),
            "modified-net": lambda i, rng: check_modified_net(i, rng, self.samples),
            "net-miller": lambda i, rng: check_net_miller(i),
            "tate": lambda i, rng: check_tate(i),
            "bilinearity": lambda i, rng: check_bilinearity(i, rng, self.scalars),
            "parallel": lambda i, rng: check_parallel(i, rng, self.blocks, timeout=self.timeout),
            "step-count": lambda i, rng: check_step_count(i),
        }
        return checks[name]

    def _timed(self, run: Callable[[], CheckResult], name: str, family: str) -> CheckResult:
        start = time.perf_counter()
        try:
            result = run()
        except Exception as e:
            logger.error(f"Check {name} on {family} raised {e!r}")
            result = CheckResult(name, family, CheckStatus.FAIL, f"{type(e).__name__}: {e}")
        result.duration = time.perf_counter() - start
        return result

    def run(self, only: Optional[Iterable[str]] = None) -> List[CheckResult]:
        """
        Run checks (all by default).

        Raises:
            ValueError: On unknown check names
        """
        names = list(only) if only else list(CHECK_NAMES)
        unknown = [n for n in names if n not in CHECK_NAMES]
        if unknown:
            raise ValueError(f"Unknown checks: {', '.join(unknown)} (available: {', '.join(CHECK_NAMES)})")

        self.results = []
        for name in names:
            if name in GLOBAL_CHECKS:
                model_instance = self.store.get("bls12") if "bls12" in self.families else None
                self.results.append(self._timed(lambda: check_cost_table(instance=model_instance), name, "all"))
                continue
            check = self._instance_check(name)
            for family in self.families:
                rng = random.Random(f"{self.rng_seed}:{name}:{family}")
                self.results.append(self._timed(lambda: check(self.store.get(family), rng), name, family))
        passed = sum(1 for r in self.results if r.passed)
        logger.info(f"Verification finished: {passed}/{len(self.results)} checks passed")
        return self.results

    def get_overall_status(self) -> CheckStatus:
        if not self.results or all(r.status is CheckStatus.SKIP for r in self.results):
            return CheckStatus.SKIP
        if any(r.status is CheckStatus.FAIL for r in self.results):
            return CheckStatus.FAIL
        return CheckStatus.PASS

    def get_report(self) -> Dict[str, Any]:
        return {
            'timestamp': int(time.time()),
            'overall_status': self.get_overall_status().value,
            'families': self.families,
            'checks': [
                {
                    'name': r.name,
                    'family': r.family,
                    'status': r.status.value,
                    'message': r.message,
                    'duration': round(r.duration, 3),
                }
                for r in self.results
            ],
        }
