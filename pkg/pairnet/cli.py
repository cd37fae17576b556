"""
pairnet CLI - Command Line Interface for Net Pairings and Cost Reports

This module provides a command-line interface for:
1. Computing optimal ate pairings on desk-scale or published seeds
2. Emitting and checking the operation-count report
3. Running the verification suite
4. Inspecting the parallel step schedules

Exit codes: 0 success, 1 verification failure, 2 configuration or usage error.
"""

import logging
import random
from typing import Any, Dict, List, Optional, Sequence

import click
from colorama import Fore, Style
from colorama import init as colorama_init

from pairnet.config.fixtures import FixtureStore
from pairnet.config.run_config import RunConfig, RunConfigManager
from pairnet.costmodel.cost_table import CostTable, UnpricedCostError
from pairnet.costmodel.report import build_report, build_step_records, check_report, format_table, to_json_lines
from pairnet.costmodel.step_cost import SUPPORTED_PROCESSORS, StepCostSpec, step_cost
from pairnet.costmodel.totals import loop_cost, loop_expansion, pairing_cost
from pairnet.curves.families import CurveFamily, get_family
from pairnet.curves.instance import CurveInstance, InstanceError, instantiate
from pairnet.curves.scalar import SignedExpansion, binary_step_counts, parse_seed
from pairnet.ellnet.context import DegenerateNetError
from pairnet.ellnet.steps import StepKind
from pairnet.fieldtower.counter import counting
from pairnet.pairing.optimal_ate import optimal_ate
from pairnet.parallel.executor import ScheduledStepper
from pairnet.parallel.schedule import ScheduleError, StepSchedule, load_schedule, validate_schedule
from pairnet.verification.suite import CHECK_NAMES, CheckStatus, VerificationSuite, check_bilinearity

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2

FAMILY_NAMES = [f.value for f in CurveFamily]

# Commands whose --processors option may repeat
MULTI_PROCESSOR_COMMANDS = ("cost-report", "schedule")


def print_header(title: str) -> None:
    """Print formatted header."""
    click.echo("\n" + "=" * 60)
    click.echo(f"  {title}")
    click.echo("=" * 60 + "\n")


def print_success(message: str, err: bool = False) -> None:
    click.echo(f"{Fore.GREEN}✓{Style.RESET_ALL} {message}", err=err)


def print_error(message: str, err: bool = False) -> None:
    click.echo(f"{Fore.RED}✗{Style.RESET_ALL} {message}", err=err)


def print_info(message: str) -> None:
    click.echo(f"{Fore.CYAN}ℹ{Style.RESET_ALL} {message}")


def build_config(ctx: click.Context, command: str, options: Dict[str, Any]) -> RunConfig:
    """
    RunConfig from command options; exits with EXIT_CONFIG when invalid.
    """
    data = {key: value for key, value in options.items() if value is not None}
    data["command"] = command
    try:
        config = RunConfig.from_dict(data)
    except ValueError as e:
        print_error(f"Invalid configuration: {e}")
        ctx.exit(EXIT_CONFIG)
    errors = [issue for issue in config.issues() if issue.severity == "error"]
    if errors:
        for issue in errors:
            print_error(str(issue))
        ctx.exit(EXIT_CONFIG)
    return config


def _profile_defaults(manager: RunConfigManager, profile: str) -> Dict[str, Dict[str, Any]]:
    defaults = manager.default_map(profile)
    for command in MULTI_PROCESSOR_COMMANDS:
        if "processors" in defaults.get(command, {}):
            defaults[command]["processors"] = [defaults[command]["processors"]]
    return defaults


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Log at DEBUG level")
@click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False),
              help="Run profile document")
@click.option("--profile", help="Profile in the run profile document supplying option defaults")
@click.pass_context
def cli(ctx: click.Context, verbose: bool, config_file: Optional[str], profile: Optional[str]) -> None:
    """Elliptic-net optimal ate pairings, parallel steps and cost reports."""
    colorama_init()
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    if profile and not config_file:
        raise click.UsageError("--profile needs --config")
    if config_file:
        manager = RunConfigManager()
        try:
            manager.load_from_file(config_file)
            if profile:
                ctx.default_map = _profile_defaults(manager, profile)
        except KeyError:
            raise click.UsageError(f"No profile '{profile}' in {config_file}")
        except ValueError as e:
            raise click.UsageError(str(e))


# Pairing

def _report_pairing(instance: CurveInstance, processors: int, timeout: float) -> bool:
    """Compute e(Q, P) on the instance generators with scheduled steps."""
    stepper = ScheduledStepper(processors=processors, timeout=timeout)
    with counting("pair") as counter:
        output = optimal_ate(instance, instance.g2, instance.g1, step=stepper)
    doublings, additions = output.steps
    print_info(f"Net walk: {doublings} doubles, {additions} adds on {processors} processors")
    print_info(f"Reduced value digest: {output.reduced.digest()}")
    print_info(f"Operation tallies: {counter}")
    if output.reduced.is_one():
        print_error("e(Q, P) = 1 on the generators")
        return False
    if not output.is_root_of_unity(instance.r):
        print_error(f"e(Q, P) is not an r-th root of unity (r = {instance.r})")
        return False
    print_success(f"e(Q, P) is a nontrivial {instance.r}-th root of unity")
    return True


def _report_counts(config: RunConfig, expansion: SignedExpansion) -> None:
    params = get_family(config.family)
    loop = loop_expansion(params, expansion)
    print_info(f"Loop scalar {loop}: {loop.doublings} doubles, {loop.additions} adds")
    table = CostTable.load(config.cost_table_path)
    for count in SUPPORTED_PROCESSORS:
        path = loop_cost(params, expansion, count).reduce(table)
        total = pairing_cost(params, expansion, count, table).reduce(table)
        print_info(f"{count} processors: loop {path}, path without final exponentiation {total}")


def _bilinearity(instance: CurveInstance, config: RunConfig) -> bool:
    result = check_bilinearity(instance, random.Random(config.rng_seed), config.scalars)
    if result.passed:
        print_success(f"Bilinearity PASS with {result.message}")
    else:
        print_error(f"Bilinearity FAIL: {result.message}")
    return result.passed


@cli.command()
@click.option("--family", type=click.Choice(FAMILY_NAMES), help="Curve family")
@click.option("--x", "seed", help='Seed: decimal or signed 2-power expression, e.g. "2^114+2^101-2^14-1"')
@click.option("--desk-scale/--no-desk-scale", default=None, help="Use the shipped small instance")
@click.option("--processors", type=int, default=4, show_default=True, help="Worker threads per step (4 or 8)")
@click.option("--fixture", "fixture_path", type=click.Path(exists=True, dir_okay=False), help="Fixture document")
@click.option("--cost-table", "cost_table_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--force-compute", is_flag=True, help="Compute the pairing even for a large seed")
@click.option("--count-only", is_flag=True, help="Report step counts and costs only")
@click.option("--verify-bilinearity", is_flag=True, help="Check bilinearity on random scalars")
@click.option("--scalars", type=int, default=20, show_default=True)
@click.option("--rng-seed", type=int, default=2024, show_default=True)
@click.option("--timeout", type=float, default=30.0, show_default=True, help="Worker read timeout in seconds")
@click.pass_context
def pair(ctx: click.Context, **options: Any) -> None:
    """Compute an optimal ate pairing."""
    if options["seed"] is None and options["desk_scale"] is None:
        options["desk_scale"] = True
    config = build_config(ctx, "pair", options)
    params = get_family(config.family)

    try:
        if config.desk_scale:
            print_header(f"Optimal Ate Pairing: {params.name.upper()} (desk scale)")
            instance = FixtureStore.load(config.fixture_path).get(params.name)
            print_info(f"x = {instance.x}, p = {instance.p} ({instance.p.bit_length()} bits), r = {instance.r}")
            m = instance.loop_scalar
            doublings, additions = binary_step_counts(m)
            if config.count_only:
                print_info(f"Loop scalar {m}: {doublings} doubles, {additions} adds")
                _report_counts(config, parse_seed(str(instance.x)))
                ctx.exit(EXIT_OK)
        else:
            print_header(f"Optimal Ate Pairing: {params.name.upper()} at x = {config.seed}")
            expansion = parse_seed(config.seed)
            x = expansion.value
            if not params.admissible(x):
                print_error(f"x = {x} is not admissible for {params.name}")
                ctx.exit(EXIT_CONFIG)
            print_info(f"p: {params.p(x).bit_length()} bits, r: {params.r(x).bit_length()} bits")
            _report_counts(config, expansion)
            if config.count_only or not config.force_compute:
                if not config.count_only:
                    print_info("Full computation skipped for a large seed; pass --force-compute")
                ctx.exit(EXIT_OK)
            instance = instantiate(params, x, rng_seed=config.rng_seed)

        ok = _report_pairing(instance, config.processors, config.timeout)
        if ok and config.verify_bilinearity:
            ok = _bilinearity(instance, config)
    except (InstanceError, DegenerateNetError, ScheduleError, UnpricedCostError, KeyError) as e:
        print_error(str(e))
        ctx.exit(EXIT_CONFIG)
    ctx.exit(EXIT_OK if ok else EXIT_FAILED)


# Cost report

@cli.command("cost-report")
@click.option("--processors", type=int, multiple=True, help="Processor counts to report (4, 8; default both)")
@click.option("--format", "output_format", type=click.Choice(["table", "records"]), default="table",
              show_default=True)
@click.option("--cost-table", "cost_table_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--check", is_flag=True, help="Compare against the expected tables")
@click.pass_context
def cost_report(ctx: click.Context, processors: Sequence[int], output_format: str,
                cost_table_path: Optional[str], check: bool) -> None:
    """Emit the operation-count report."""
    counts = list(processors) or list(SUPPORTED_PROCESSORS)
    for count in counts:
        build_config(ctx, "cost-report", {"processors": count, "output_format": output_format,
                                          "cost_table_path": cost_table_path})
    try:
        table = CostTable.load(cost_table_path)
        records = build_report(table, counts)
        step_records = build_step_records(table, counts)
    except UnpricedCostError as e:
        print_error(f"Unpriced cost entry: {e.entry}")
        ctx.exit(EXIT_CONFIG)

    if output_format == "records":
        click.echo(to_json_lines(records + step_records))
    else:
        print_header("Computational Costs of the Path without Final Exponentiation")
        click.echo(format_table(records))
        click.echo("")
        for record in step_records:
            click.echo(f"  {record.family.upper():<7}{record.metric:<13}{record.processors} proc  {record.value}")

    if check:
        # Records output stays parseable; check results go to stderr
        to_stderr = output_format == "records"
        mismatches = check_report(records, step_records)
        if mismatches:
            for mismatch in mismatches:
                print_error(str(mismatch), err=to_stderr)
            ctx.exit(EXIT_FAILED)
        total = len(records) + len(step_records)
        print_success(f"All expected values reproduced ({total} records)", err=to_stderr)


# Verification

@cli.command()
@click.option("--only", help=f"Comma-separated checks ({', '.join(CHECK_NAMES)})")
@click.option("--family", type=click.Choice(FAMILY_NAMES), help="Restrict to one family")
@click.option("--fixture", "fixture_path", type=click.Path(exists=True, dir_okay=False), help="Fixture document")
@click.option("--blocks", type=int, default=100, show_default=True, help="Random blocks per schedule")
@click.option("--scalars", type=int, default=20, show_default=True, help="Bilinearity scalars")
@click.option("--rng-seed", type=int, default=2024, show_default=True)
@click.option("--timeout", type=float, default=30.0, show_default=True)
@click.pass_context
def verify(ctx: click.Context, only: Optional[str], family: Optional[str], fixture_path: Optional[str],
           blocks: int, scalars: int, rng_seed: int, timeout: float) -> None:
    """Run the verification suite on the fixtures."""
    config = build_config(ctx, "verify", {"only": only, "family": family, "fixture_path": fixture_path,
                                          "scalars": scalars, "rng_seed": rng_seed, "timeout": timeout})
    names = [n.strip() for n in config.only.split(",") if n.strip()] if config.only else None
    unknown = [n for n in names or [] if n not in CHECK_NAMES]
    if unknown:
        print_error(f"Unknown checks: {', '.join(unknown)}")
        ctx.exit(EXIT_CONFIG)

    print_header("Verification Suite")
    store = FixtureStore.load(config.fixture_path)
    suite = VerificationSuite(store, families=[config.family] if config.family else None,
                              rng_seed=config.rng_seed, scalars=config.scalars, blocks=blocks,
                              timeout=config.timeout)
    for result in suite.run(names):
        line = f"{result.name} [{result.family}] {result.message} ({result.duration:.2f}s)"
        if result.status is CheckStatus.PASS:
            print_success(line)
        elif result.status is CheckStatus.SKIP:
            print_info(line)
        else:
            print_error(f"FAIL {line}")

    status = suite.get_overall_status()
    click.echo(f"\nOverall: {status.value.upper()}")
    ctx.exit(EXIT_FAILED if status is CheckStatus.FAIL else EXIT_OK)


# Schedules

def _show_schedule(schedule: StepSchedule, spec: StepCostSpec, table: CostTable) -> bool:
    diag = validate_schedule(schedule, spec, table)
    click.echo(f"{schedule.name}: {schedule.description}")
    for index in range(schedule.processors):
        factors = " ".join(schedule.factor_tasks(index)) or "-"
        combines = " ".join(schedule.combine_tasks(index)) or "-"
        reads = " ".join(schedule.reads(index)) or "-"
        cost = diag.processor_costs[index] if diag.processor_costs else ""
        click.echo(f"  P{index + 1}: {factors} | {combines}   reads {reads}   cost {cost}")
    for issue in diag.issues:
        (print_error if issue.severity == "error" else print_info)(str(issue))
    if not diag.is_valid:
        return False
    closed = step_cost(spec)
    click.echo(f"  critical path P{diag.worst_processor}: {diag.critical_path} = {diag.critical_value}")
    if diag.critical_path != closed:
        print_error(f"critical path differs from the closed form {closed}")
        return False
    print_success(f"critical path equals the closed form {closed}")
    return True


@cli.command()
@click.option("--family", type=click.Choice(FAMILY_NAMES), default="bls12", show_default=True,
              help="Field layout used to price tasks")
@click.option("--processors", type=int, multiple=True, help="4, 8 (default both)")
@click.option("--kind", type=click.Choice([k.value for k in StepKind]), help="Step kind (default both)")
@click.option("--file", "schedule_file", type=click.Path(exists=True, dir_okay=False),
              help="Validate a schedule document instead of the shipped ones")
@click.pass_context
def schedule(ctx: click.Context, family: str, processors: Sequence[int], kind: Optional[str],
             schedule_file: Optional[str]) -> None:
    """Show per-processor tasks, reads and critical paths."""
    counts = list(processors) or list(SUPPORTED_PROCESSORS)
    for count in counts:
        build_config(ctx, "schedule", {"family": family, "processors": count})
    params = get_family(family)
    table = CostTable.load()
    print_header(f"Step Schedules ({params.name.upper()} field layout)")

    schedules: List[StepSchedule] = []
    try:
        if schedule_file:
            schedules.append(StepSchedule.load(schedule_file))
        else:
            kinds = [StepKind(kind)] if kind else list(StepKind)
            schedules = [load_schedule(k, n) for n in counts for k in kinds]
    except ScheduleError as e:
        print_error(str(e))
        ctx.exit(EXIT_CONFIG)

    ok = True
    for item in schedules:
        if item.processors not in SUPPORTED_PROCESSORS:
            print_error(f"{item.name}: {item.processors} processors is unsupported")
            ok = False
            continue
        spec = StepCostSpec.for_family(params, item.processors, item.kind)
        ok = _show_schedule(item, spec, table) and ok
        click.echo("")
    ctx.exit(EXIT_OK if ok else EXIT_FAILED)


def main() -> None:
    """Main entry point."""
    cli()


if __name__ == "__main__":
    main()
