"""
Failure scenario and run result schemas

- FailureTrigger: when a workstation fails, keyed to the run's own event history
- Scenario: fixture, failure schedule, beta and the controllers to compare
- TraceRecord / RunResult / ComparisonReport: what a simulation produces
"""

from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, validator

from ptampc.schemas.automaton import Automaton
from ptampc.schemas.common import to_fraction
from ptampc.schemas.plan import ControllerKind, Plan


class TriggerType(str, Enum):
    """Trigger conditions"""
    AT_START = "at_start"
    AFTER_EXIT = "after_exit"
    AFTER_ENTRY = "after_entry"
    WINDOW = "window"


class TriggerCondition(BaseModel):
    """
    Condition under which a failure fires

    - at_start: before tick 0
    - after_exit(state): once the product has left state
    - after_entry(state): on arrival at state, before the next planning call
    - window(after_exit, before_entry): after leaving after_exit, only while
      before_entry has not been entered yet
    """
    type: TriggerType
    state: Optional[str] = None
    after_exit: Optional[str] = None
    before_entry: Optional[str] = None

    class Config:
        frozen = True
        extra = "forbid"

    @validator("before_entry", always=True)
    def validate_references(cls, v, values):
        trigger_type = values.get("type")
        if trigger_type in (TriggerType.AFTER_EXIT, TriggerType.AFTER_ENTRY) and not values.get("state"):
            raise ValueError(f"{trigger_type.value} trigger needs a 'state'")
        if trigger_type == TriggerType.WINDOW and (not values.get("after_exit") or not v):
            raise ValueError("window trigger needs 'after_exit' and 'before_entry'")
        return v

    def referenced_states(self) -> List[str]:
        return [s for s in (self.state, self.after_exit, self.before_entry) if s]


class FailureTrigger(BaseModel):
    """A workstation failure and the event that fires it"""
    target: str
    when: TriggerCondition

    class Config:
        frozen = True
        extra = "forbid"


FailureSchedule = Tuple[FailureTrigger, ...]


class Scenario(BaseModel):
    """A fixture plus a failure schedule and the controllers to run on it"""
    name: str
    fixture: str = Field(..., description="Fixture name or path the automaton was loaded from")
    automaton: Automaton
    schedule: FailureSchedule = Field(default_factory=tuple)
    beta: Fraction = Field(default=Fraction(1))
    controllers: Tuple[ControllerKind, ...]

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    @validator("beta", pre=True)
    def validate_beta(cls, v):
        beta = to_fraction(v)
        if beta < 0:
            raise ValueError("beta must be non-negative")
        return beta

    @validator("controllers")
    def validate_controllers(cls, v):
        if not v:
            raise ValueError("a scenario needs at least one controller")
        return v


class RunStatus(str, Enum):
    FINISHED = "finished"
    UNSAT = "unsat"


class TraceRecord(BaseModel):
    """One controller tick, serialized as a CSV row"""
    tick: int = Field(..., ge=0)
    controller: ControllerKind
    current: str
    planned_path: Tuple[str, ...] = Field(default_factory=tuple)
    planned_value: Optional[Fraction] = Field(default=None, description="PCM-form objective of the projected route")
    fired_failures: Tuple[str, ...] = Field(default_factory=tuple)
    action: str = Field(..., description="move, unsat or finished")
    next_state: Optional[str] = None

    class Config:
        frozen = True
        arbitrary_types_allowed = True


class RunResult(BaseModel):
    """Outcome of one controller on one scenario"""
    controller: ControllerKind
    status: RunStatus
    executed: Tuple[str, ...]
    entry_times: Dict[str, int] = Field(default_factory=dict)
    reported_value: Optional[Fraction] = None
    reported_kappa: Optional[Fraction] = None
    unsat_tick: Optional[int] = None
    unsat_state: Optional[str] = None
    unsat_cause: Optional[str] = None
    failed_states: Tuple[str, ...] = Field(default_factory=tuple)
    per_step_plans: Tuple[Plan, ...] = Field(default_factory=tuple)
    trace: Tuple[TraceRecord, ...] = Field(default_factory=tuple)

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    @property
    def finished(self) -> bool:
        return self.status == RunStatus.FINISHED


class ComparisonReport(BaseModel):
    """One run per controller on a scenario, with the lowest-V finisher as winner"""
    scenario: str
    beta: Fraction
    runs: Tuple[RunResult, ...]
    winner: Optional[ControllerKind] = None

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    def run_for(self, controller: ControllerKind) -> Optional[RunResult]:
        for run in self.runs:
            if run.controller == controller:
                return run
        return None
