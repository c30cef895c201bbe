"""
Simulation Service

Runs every requested controller on a scenario and compares them.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence

from ptampc.core.config import get_settings
from ptampc.schemas.analysis import CspConvention
from ptampc.schemas.plan import ControllerKind, Objective
from ptampc.schemas.scenario import ComparisonReport, RunResult, Scenario
from ptampc.services.controller_service import ControllerService
from ptampc.services.failure_service import FailureService

logger = logging.getLogger(__name__)


class SimulationService:
    """
    Service for scenario simulation

    Each controller gets its own run with its own trigger history; runs
    share nothing, so they may execute on a thread pool. Results are
    always reported in the scenario's controller order.
    """

    @staticmethod
    def run_controller(
        scenario: Scenario,
        controller: ControllerKind,
        max_hops: Optional[int] = None,
        convention: Optional[CspConvention] = None,
    ) -> RunResult:
        """Single controller run on a scenario"""
        objective = Objective(kind=controller, beta=scenario.beta)
        return ControllerService.run(scenario.automaton, objective, scenario.schedule, max_hops, convention)

    @staticmethod
    def winner(runs: Sequence[RunResult]) -> Optional[ControllerKind]:
        """Lowest reported V among finished runs; ties go to the earlier run"""
        best: Optional[RunResult] = None
        for run in runs:
            if not run.finished:
                continue
            if best is None or run.reported_value < best.reported_value:
                best = run
        return best.controller if best else None

    @staticmethod
    def simulate(
        scenario: Scenario,
        max_hops: Optional[int] = None,
        convention: Optional[CspConvention] = None,
        max_workers: Optional[int] = None,
    ) -> ComparisonReport:
        """
        Run the scenario's controllers and pick the winner

        Args:
            scenario: Fixture, schedule, beta and controllers
            max_hops: Optional enumeration hop bound
            convention: CSP convention for PCM scoring
            max_workers: Thread pool size (settings value when omitted)

        Returns:
            ComparisonReport with one RunResult per controller

        Raises:
            ScenarioValidationError: If the schedule references unknown states
                or fails an occupied state
        """
        FailureService.validate_schedule(scenario.schedule, scenario.automaton)
        workers = max_workers if max_workers is not None else get_settings().max_workers

        logger.info(
            f"Simulating '{scenario.name}' with {[c.value for c in scenario.controllers]} "
            f"(beta={scenario.beta}, workers={workers})"
        )
        runs: List[RunResult]
        if workers > 1 and len(scenario.controllers) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futures = [
                    pool.submit(SimulationService.run_controller, scenario, controller, max_hops, convention)
                    for controller in scenario.controllers
                ]
                runs = [future.result() for future in futures]
        else:
            runs = [
                SimulationService.run_controller(scenario, controller, max_hops, convention)
                for controller in scenario.controllers
            ]

        winner = SimulationService.winner(runs)
        logger.info(f"Scenario '{scenario.name}' winner: {winner.value if winner else 'none'}")
        return ComparisonReport(scenario=scenario.name, beta=scenario.beta, runs=tuple(runs), winner=winner)
