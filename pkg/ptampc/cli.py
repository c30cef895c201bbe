"""
Command-line front for the risk-averse PTA-MPC toolkit

Subcommands:
- validate <fixture>
- analyze <fixture> --path q1,q2,...
- plan <fixture> --controller {plain|cb|pcm} --beta B
- simulate <scenario>
- compare <scenario>
- calibrate <fixture> --path q1,q2,... --target 5/32

Exit codes: 0 success, 2 UNSAT, 3 parse / not found, 4 schema, 5 validation.
"""

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

from pydantic import ValidationError

from ptampc.core.config import get_settings
from ptampc.core.errors import InvalidObjectiveError, LayoutValidationError, PtaMpcError
from ptampc.core.logging import configure_logging
from ptampc.schemas.common import to_fraction
from ptampc.schemas.plan import ControllerKind, Objective
from ptampc.schemas.scenario import Scenario
from ptampc.services.analysis_service import AnalysisService
from ptampc.services.controller_service import ControllerService
from ptampc.services.fixture_service import FixtureService
from ptampc.services.layout_service import LayoutService
from ptampc.services.planning_service import PlanningService
from ptampc.services.report_service import ReportService
from ptampc.services.simulation_service import SimulationService

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_UNSAT = 2


def _state_list(value: str) -> List[str]:
    states = [part.strip() for part in value.split(",") if part.strip()]
    if not states:
        raise argparse.ArgumentTypeError("expected a comma separated list of states")
    return states


def _rational(value: str) -> Fraction:
    try:
        return to_fraction(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _write(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {output}")
    else:
        sys.stdout.write(text)


def _objective(kind: ControllerKind, beta: Fraction) -> Objective:
    try:
        return Objective(kind=kind, beta=beta)
    except ValidationError as exc:
        raise InvalidObjectiveError(f"Invalid beta {beta}: {exc.errors()[0]['msg']}") from exc


def _rebuild_scenario(scenario: Scenario, updates: dict) -> Scenario:
    try:
        return Scenario(**{**dict(scenario), **updates})
    except ValidationError as exc:
        raise InvalidObjectiveError(f"Invalid scenario override: {exc.errors()[0]['msg']}") from exc


def _layout_with_failures(automaton, failed: Sequence[str]):
    layout = ControllerService.initial_layout(automaton)
    if failed:
        layout = ControllerService.update_operator(layout, failed)
    return layout


# =============================================================================
# Subcommands
# =============================================================================


def cmd_validate(args: argparse.Namespace) -> int:
    path = FixtureService.resolve_document(args.fixture)
    data = FixtureService.read_json(path)
    try:
        automaton = FixtureService.parse_fixture(data, default_name=path.stem)
    except LayoutValidationError as exc:
        if exc.report is not None:
            sys.stdout.write(ReportService.render_validation(path.stem, exc.report))
        else:
            sys.stdout.write(f"{path.stem}: {exc.message}\n")
        return exc.exit_code

    partition = LayoutService.partition(automaton)
    sys.stdout.write(ReportService.render_validation(automaton.name, LayoutService.validate(automaton)))
    sys.stdout.write(
        f"  {len(automaton.states)} states, {len(automaton.edges)} edges, "
        f"{partition.k} redundant paths\n"
    )
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace) -> int:
    automaton = FixtureService.load_fixture(args.fixture)
    layout = _layout_with_failures(automaton, args.fail or [])
    profile = AnalysisService.risk_profile(layout.automaton, layout.analysis_partition, args.path)
    if args.json:
        sys.stdout.write(json.dumps(ReportService.profile_record(profile), indent=2) + "\n")
    else:
        sys.stdout.write(ReportService.render_profile(profile))
    return EXIT_OK


def cmd_plan(args: argparse.Namespace) -> int:
    settings = get_settings()
    automaton = FixtureService.load_fixture(args.fixture)
    layout = _layout_with_failures(automaton, args.fail or [])
    start = args.start or automaton.initial
    desired = list(automaton.desired_sequence)
    while desired and desired[0] == start:
        desired.pop(0)

    beta = args.beta if args.beta is not None else settings.beta()
    objective = _objective(ControllerKind(args.controller), beta)
    max_hops = args.max_hops if args.max_hops is not None else settings.max_hops
    plan = PlanningService.plan(layout, start, desired, objective, max_hops)
    sys.stdout.write(ReportService.render_plan(plan))
    return EXIT_OK if plan is not None else EXIT_UNSAT


def _run_scenario(args: argparse.Namespace, controllers: Optional[List[ControllerKind]]) -> int:
    settings = get_settings()
    scenario = FixtureService.load_scenario(args.scenario)
    updates = {}
    if controllers is not None:
        updates["controllers"] = tuple(controllers)
    if args.beta is not None:
        updates["beta"] = args.beta
    if updates:
        scenario = _rebuild_scenario(scenario, updates)

    max_hops = args.max_hops if args.max_hops is not None else settings.max_hops
    report = SimulationService.simulate(scenario, max_hops=max_hops)
    _write(ReportService.emit_comparison(report, args.format), args.output)
    return EXIT_OK if report.winner is not None else EXIT_UNSAT


def cmd_simulate(args: argparse.Namespace) -> int:
    return _run_scenario(args, None)


def cmd_compare(args: argparse.Namespace) -> int:
    return _run_scenario(args, list(ControllerKind))


def cmd_calibrate(args: argparse.Namespace) -> int:
    automaton = FixtureService.load_fixture(args.fixture)
    layout = _layout_with_failures(automaton, args.fail or [])
    result = AnalysisService.calibrate(layout.automaton, layout.analysis_partition, args.path, args.target)
    sys.stdout.write(ReportService.render_calibration(result))
    return EXIT_OK


# =============================================================================
# Parser
# =============================================================================


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptampc",
        description="Risk-averse model predictive control over priced timed automata",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s validate paintshop
  %(prog)s analyze paintshop --path q1,q2,q3,q4,q5,q6,q7,q8
  %(prog)s plan paintshop --controller pcm --beta 1
  %(prog)s compare scenario2 --format csv --output scenario2.csv
  %(prog)s calibrate paintshop --path q1,q2,q3,q4,q5,q6,q7,q8 --target 5/32

Fixture and scenario names are looked up on PTAMPC_FIXTURE_PATH, then in the
bundled fixtures.
        """,
    )
    parser.add_argument("--log-level", help="Override PTAMPC_LOG_LEVEL")
    subparsers = parser.add_subparsers(dest="command", required=True)

    validate = subparsers.add_parser("validate", help="Check a fixture's structural invariants")
    validate.add_argument("fixture")
    validate.set_defaults(handler=cmd_validate)

    analyze = subparsers.add_parser("analyze", help="Risk profile of a path")
    analyze.add_argument("fixture")
    analyze.add_argument("--path", type=_state_list, required=True, help="Comma separated states")
    analyze.add_argument("--fail", type=_state_list, help="States to mark failed first")
    analyze.add_argument("--json", action="store_true", help="Machine-readable output")
    analyze.set_defaults(handler=cmd_analyze)

    plan = subparsers.add_parser("plan", help="Single optimal plan")
    plan.add_argument("fixture")
    plan.add_argument("--start", help="Start state (initial state by default)")
    plan.add_argument("--controller", choices=[kind.value for kind in ControllerKind], default="pcm")
    plan.add_argument("--beta", type=_rational, help="Risk significance factor")
    plan.add_argument("--max-hops", type=int, help="Hop bound for path enumeration")
    plan.add_argument("--fail", type=_state_list, help="States to mark failed (enables redundant paths)")
    plan.set_defaults(handler=cmd_plan)

    for name, handler, help_text in (
        ("simulate", cmd_simulate, "Run the scenario's controllers"),
        ("compare", cmd_compare, "Run all three controllers on a scenario"),
    ):
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("scenario")
        sub.add_argument("--format", choices=["text", "csv"], default="text")
        sub.add_argument("--output", help="Write the report to a file instead of stdout")
        sub.add_argument("--beta", type=_rational, help="Override the scenario's beta")
        sub.add_argument("--max-hops", type=int, help="Hop bound for path enumeration")
        sub.set_defaults(handler=handler)

    calibrate = subparsers.add_parser("calibrate", help="Kappa of a path under every CSP convention")
    calibrate.add_argument("fixture")
    calibrate.add_argument("--path", type=_state_list, required=True, help="Comma separated states")
    calibrate.add_argument("--target", type=_rational, help="Value to match, e.g. 5/32")
    calibrate.add_argument("--fail", type=_state_list, help="States to mark failed first")
    calibrate.set_defaults(handler=cmd_calibrate)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    CLI entry point

    Returns:
        Process exit code
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    settings = get_settings()
    if args.log_level:
        settings = settings.model_copy(update={"log_level": args.log_level.upper()})
    configure_logging(settings)

    try:
        return args.handler(args)
    except PtaMpcError as exc:
        logger.debug("Command failed", exc_info=True)
        sys.stderr.write(f"{exc}\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
