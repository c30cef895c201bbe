"""
Failure Service

Evaluates failure triggers against a run's own event history. Each
controller experiences the schedule at its own occupation times, so the
same scenario can fail a station for one route and never for another.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Sequence

from ptampc.core.errors import ScenarioValidationError
from ptampc.schemas.automaton import Automaton
from ptampc.schemas.scenario import FailureTrigger, TriggerType

logger = logging.getLogger(__name__)


@dataclass
class EventHistory:
    """Entry and exit ticks of every state the product has visited"""

    entries: Dict[str, int] = field(default_factory=dict)
    exits: Dict[str, int] = field(default_factory=dict)

    @classmethod
    def start(cls, initial: str) -> "EventHistory":
        return cls(entries={initial: 0})

    def record_move(self, src: str, dst: str, tick: int) -> None:
        """The product leaves src during tick and occupies dst from tick + 1"""
        self.exits.setdefault(src, tick)
        self.entries.setdefault(dst, tick + 1)


@dataclass(frozen=True)
class TriggerEvaluation:
    """Triggers fired by one evaluation"""

    fired: FrozenSet[int]
    failed_states: FrozenSet[str]


class FailureService:
    """
    Service evaluating failure schedules

    Triggers fire at most once per run and are evaluated before each
    planning call (sense, then plan).
    """

    @staticmethod
    def is_due(trigger: FailureTrigger, history: EventHistory) -> bool:
        """
        Whether a trigger's condition holds for the event history

        Args:
            trigger: Failure trigger
            history: The run's entry/exit log

        Returns:
            True if the trigger fires now
        """
        when = trigger.when
        if when.type == TriggerType.AT_START:
            return True
        if when.type == TriggerType.AFTER_EXIT:
            return when.state in history.exits
        if when.type == TriggerType.AFTER_ENTRY:
            return when.state in history.entries
        return when.after_exit in history.exits and when.before_entry not in history.entries

    @staticmethod
    def evaluate_triggers(
        schedule: Sequence[FailureTrigger],
        event_history: EventHistory,
        already_fired: Iterable[int],
    ) -> TriggerEvaluation:
        """
        Evaluate the schedule and return the newly failed states

        Args:
            schedule: Failure triggers of the scenario
            event_history: This run's own entry/exit log
            already_fired: Indices of triggers that fired earlier in the run

        Returns:
            TriggerEvaluation with the indices fired now and their target states
        """
        done = set(already_fired)
        fired = []
        for index, trigger in enumerate(schedule):
            if index in done:
                continue
            if FailureService.is_due(trigger, event_history):
                fired.append(index)
        failed = frozenset(schedule[index].target for index in fired)
        if failed:
            logger.debug(f"Triggers {fired} fired: {sorted(failed)}")
        return TriggerEvaluation(fired=frozenset(fired), failed_states=failed)

    @staticmethod
    def validate_schedule(schedule: Sequence[FailureTrigger], automaton: Automaton) -> None:
        """
        Reject schedules with unknown states or that fail the occupied state

        Args:
            schedule: Failure triggers
            automaton: Fixture the schedule runs on

        Raises:
            ScenarioValidationError: On the first offending trigger
        """
        problems: List[str] = []
        for index, trigger in enumerate(schedule):
            for state in [trigger.target] + trigger.when.referenced_states():
                if not automaton.has_state(state):
                    problems.append(f"trigger {index} references unknown state '{state}'")
            if trigger.when.type == TriggerType.AT_START and trigger.target == automaton.initial:
                problems.append(f"trigger {index} fails the initial state at start")
            if trigger.when.type == TriggerType.AFTER_ENTRY and trigger.target == trigger.when.state:
                problems.append(f"trigger {index} fails '{trigger.target}' while it is occupied")
        if problems:
            raise ScenarioValidationError("; ".join(problems))
