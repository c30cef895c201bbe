"""
Controller Service

Receding-horizon loop over the working layout:
- update_operator: fold sensed failures into the layout and enable redundant paths
- mpc_step: plan from the current state and execute the first transition
- run: sense, update and step until the desired set is exhausted or UNSAT
"""

import logging
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from ptampc.core.config import get_settings
from ptampc.core.errors import NonTerminationError, UnknownStateError
from ptampc.schemas.analysis import CspConvention
from ptampc.schemas.automaton import Automaton
from ptampc.schemas.controller import ControllerMemory, StepKind, StepOutcome, WorkingLayout
from ptampc.schemas.plan import Objective, Plan
from ptampc.schemas.scenario import FailureTrigger, RunResult, RunStatus, TraceRecord
from ptampc.services.failure_service import EventHistory, FailureService
from ptampc.services.layout_service import LayoutService
from ptampc.services.planning_service import PlanningService

logger = logging.getLogger(__name__)

CURRENT_STATE_FAILED = "current_state_failed"
NO_LEGAL_PATH = "no_legal_path"


def _consume(remaining: Tuple[str, ...], state: str) -> Tuple[str, ...]:
    """Drop the head of the desired sequence while it is the given state"""
    while remaining and remaining[0] == state:
        remaining = remaining[1:]
    return remaining


class ControllerService:
    """
    Service running the MPC controller

    Layouts and memories are immutable; every update returns a new instance.
    """

    @staticmethod
    def initial_layout(automaton: Automaton) -> WorkingLayout:
        """
        Working layout at tick 0

        Redundant paths start disabled; states flagged failed in the fixture
        go through the update operator, which enables them.
        """
        clean = WorkingLayout(base=automaton, partition=LayoutService.partition(automaton))
        return ControllerService.update_operator(clean, automaton.failed_states)

    @staticmethod
    def update_operator(layout: WorkingLayout, sensed_failures: Iterable[str]) -> WorkingLayout:
        """
        Mark sensed failures and enable redundant routes

        Once any failure is known every redundant path is enabled; the planner
        then picks the nearest usable one.

        Args:
            layout: Current working layout
            sensed_failures: States reported failed

        Returns:
            Updated working layout (the same instance when nothing changes)

        Raises:
            UnknownStateError: If a sensed state is not in the layout
        """
        sensed = frozenset(sensed_failures)
        for state in sorted(sensed):
            if not layout.base.has_state(state):
                raise UnknownStateError(state)

        failed = layout.failed_states | sensed
        enabled = layout.enabled_redundant
        if failed:
            enabled = frozenset(rp.key for rp in layout.partition.redundant_paths)
        if failed == layout.failed_states and enabled == layout.enabled_redundant:
            return layout

        new_failures = sorted(failed - layout.failed_states)
        if new_failures:
            logger.info(f"Sensed failures {new_failures}; {len(enabled)} redundant paths enabled")
        return WorkingLayout(
            base=layout.base,
            partition=layout.partition,
            failed_states=failed,
            enabled_redundant=enabled,
        )

    @staticmethod
    def mpc_step(
        memory: ControllerMemory,
        layout: WorkingLayout,
        objective: Objective,
        max_hops: Optional[int] = None,
        convention: Optional[CspConvention] = None,
    ) -> Tuple[StepOutcome, ControllerMemory]:
        """
        One controller tick

        Candidates never re-enter an executed state and are ranked on the
        executed prefix plus the candidate.

        Args:
            memory: Executed prefix and remaining desired states
            layout: Working layout after this tick's updates
            objective: Controller objective
            max_hops: Optional hop bound of the whole route, executed prefix included
            convention: CSP convention for PCM scoring

        Returns:
            (StepOutcome, updated ControllerMemory)
        """
        current = memory.current
        if current in layout.failed_states:
            logger.info(f"Occupied state {current} failed")
            return StepOutcome(kind=StepKind.UNSAT, cause=CURRENT_STATE_FAILED), memory

        remaining = _consume(memory.remaining_desired, current)
        if not remaining:
            done = ControllerMemory(executed=memory.executed, remaining_desired=(), step_index=memory.step_index)
            return StepOutcome(kind=StepKind.FINISHED), done

        prefix = memory.executed[:-1]
        hops = None if max_hops is None else max(max_hops - len(prefix), 0)
        plan = PlanningService.plan(layout, current, remaining, objective, hops, convention, prefix)
        if plan is None:
            return StepOutcome(kind=StepKind.UNSAT, cause=NO_LEGAL_PATH), memory

        next_state = plan.next_state
        remaining = _consume(remaining, next_state)
        updated = ControllerMemory(
            executed=memory.executed + (next_state,),
            remaining_desired=remaining,
            step_index=memory.step_index + 1,
        )
        kind = StepKind.FINISHED if not remaining else StepKind.MOVED
        logger.debug(f"{objective.kind.value} tick {memory.step_index}: {current} -> {next_state} via {plan.path}")
        return StepOutcome(kind=kind, planned_path=plan, executed_state=next_state), updated

    @staticmethod
    def run(
        automaton: Automaton,
        objective: Objective,
        failure_schedule: Sequence[FailureTrigger] = (),
        max_hops: Optional[int] = None,
        convention: Optional[CspConvention] = None,
    ) -> RunResult:
        """
        Run the controller until the desired states are reached or UNSAT

        Args:
            automaton: Total layout
            objective: Controller objective
            failure_schedule: Triggers evaluated against this run's own history
            max_hops: Optional hop bound of the whole route, executed prefix included
            convention: CSP convention for PCM scoring

        Returns:
            RunResult with executed path, entry times, trace and reported V

        Raises:
            NonTerminationError: If the step bound is exceeded
        """
        settings = get_settings()
        bound = settings.step_bound_factor * len(automaton.states)
        report_beta = objective.beta

        layout = ControllerService.initial_layout(automaton)
        memory = ControllerMemory.initial(automaton)
        history = EventHistory.start(automaton.initial)
        fired: Set[int] = set()
        plans: List[Plan] = []
        trace: List[TraceRecord] = []

        logger.info(f"Starting {objective.kind.value} run on '{automaton.name}'")
        while True:
            tick = memory.step_index
            if tick > bound:
                raise NonTerminationError(f"Run exceeded {bound} steps")

            evaluation = FailureService.evaluate_triggers(failure_schedule, history, fired)
            fired |= evaluation.fired
            if evaluation.failed_states:
                layout = ControllerService.update_operator(layout, evaluation.failed_states)

            current = memory.current
            outcome, memory = ControllerService.mpc_step(memory, layout, objective, max_hops, convention)
            fired_now = tuple(sorted(evaluation.failed_states))

            if outcome.kind == StepKind.UNSAT:
                trace.append(TraceRecord(
                    tick=tick, controller=objective.kind, current=current,
                    fired_failures=fired_now, action="unsat",
                ))
                logger.info(f"{objective.kind.value} UNSAT at {current} (tick {tick}, {outcome.cause})")
                return RunResult(
                    controller=objective.kind,
                    status=RunStatus.UNSAT,
                    executed=memory.executed,
                    entry_times=dict(history.entries),
                    unsat_tick=tick,
                    unsat_state=current,
                    unsat_cause=outcome.cause,
                    failed_states=tuple(sorted(layout.failed_states)),
                    per_step_plans=tuple(plans),
                    trace=tuple(trace),
                )

            projected = memory.executed
            if outcome.planned_path is not None:
                plan = outcome.planned_path
                plans.append(plan)
                projected = plan.route
                history.record_move(current, outcome.executed_state, tick)
            planned_value = ControllerService.reported_value(layout, projected, report_beta, convention)
            trace.append(TraceRecord(
                tick=tick,
                controller=objective.kind,
                current=current,
                planned_path=outcome.planned_path.path if outcome.planned_path else (current,),
                planned_value=planned_value,
                fired_failures=fired_now,
                action="move" if outcome.kind == StepKind.MOVED else "finished",
                next_state=outcome.executed_state,
            ))

            if outcome.kind == StepKind.FINISHED:
                kappa = PlanningService.objective_terms(
                    PlanningService.context_for(layout, convention), memory.executed
                )[1]
                value = ControllerService.reported_value(layout, memory.executed, report_beta, convention)
                logger.info(f"{objective.kind.value} finished on {memory.executed} with V={float(value):g}")
                return RunResult(
                    controller=objective.kind,
                    status=RunStatus.FINISHED,
                    executed=memory.executed,
                    entry_times=dict(history.entries),
                    reported_value=value,
                    reported_kappa=kappa,
                    failed_states=tuple(sorted(layout.failed_states)),
                    per_step_plans=tuple(plans),
                    trace=tuple(trace),
                )

    @staticmethod
    def reported_value(
        layout: WorkingLayout,
        path: Sequence[str],
        beta: Fraction,
        convention: Optional[CspConvention] = None,
    ) -> Fraction:
        """PCM-form objective of a path, used to report every controller"""
        return PlanningService.objective_pcm(
            layout.automaton, layout.analysis_partition, path, beta, convention
        )
