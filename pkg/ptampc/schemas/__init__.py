"""
Pydantic schemas for the risk-averse PTA-MPC toolkit
"""

from ptampc.schemas.analysis import (
    CalibrationEntry,
    CalibrationResult,
    CommittedSubPath,
    CspConvention,
    LengthUnit,
    PathRiskProfile,
)
from ptampc.schemas.automaton import Automaton, Edge, EdgeKind, LayoutPartition, RedundantPath, State
from ptampc.schemas.common import ValidationReport, Violation
from ptampc.schemas.controller import ControllerMemory, StepKind, StepOutcome, WorkingLayout
from ptampc.schemas.plan import ControllerKind, Objective, Plan
from ptampc.schemas.scenario import (
    ComparisonReport,
    FailureSchedule,
    FailureTrigger,
    RunResult,
    RunStatus,
    Scenario,
    TraceRecord,
    TriggerCondition,
    TriggerType,
)

__all__ = [
    'Automaton',
    'CalibrationEntry',
    'CalibrationResult',
    'CommittedSubPath',
    'ComparisonReport',
    'ControllerKind',
    'ControllerMemory',
    'CspConvention',
    'Edge',
    'EdgeKind',
    'FailureSchedule',
    'FailureTrigger',
    'LayoutPartition',
    'LengthUnit',
    'Objective',
    'PathRiskProfile',
    'Plan',
    'RedundantPath',
    'RunResult',
    'RunStatus',
    'Scenario',
    'State',
    'StepKind',
    'StepOutcome',
    'TraceRecord',
    'TriggerCondition',
    'TriggerType',
    'ValidationReport',
    'Violation',
    'WorkingLayout',
]
