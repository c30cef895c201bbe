"""
Planning schemas: controller objectives and plans
"""

import math
from enum import Enum
from fractions import Fraction
from typing import Tuple

from pydantic import BaseModel, Field, validator

from ptampc.schemas.common import to_fraction


class ControllerKind(str, Enum):
    """Controller objectives compared in a scenario"""
    PLAIN = "plain"
    CB = "cb"
    PCM = "pcm"


class Objective(BaseModel):
    """Controller objective with its risk significance factor beta"""
    kind: ControllerKind
    beta: Fraction = Field(default=Fraction(1), description="Risk significance factor")

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    @validator("beta", pre=True)
    def validate_beta(cls, v):
        if isinstance(v, float) and not math.isfinite(v):
            raise ValueError("beta must be finite")
        beta = to_fraction(v)
        if beta < 0:
            raise ValueError("beta must be non-negative")
        return beta

    @property
    def effective_beta(self) -> Fraction:
        """Plain ignores beta"""
        return Fraction(0) if self.kind == ControllerKind.PLAIN else self.beta


class Plan(BaseModel):
    """
    An ordered state sequence chosen by one optimization call

    path starts at the state the plan was made from; prefix holds the states
    executed before it. Value, cost and risk are those of the whole route.
    """
    path: Tuple[str, ...]
    prefix: Tuple[str, ...] = Field(default_factory=tuple)
    objective_value: Fraction
    cost_sum: Fraction
    kappa_used: Fraction
    controller: ControllerKind

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    @property
    def next_state(self) -> str:
        """First transition target, or the current state for a zero-hop plan"""
        return self.path[1] if len(self.path) > 1 else self.path[0]

    @property
    def route(self) -> Tuple[str, ...]:
        """Executed prefix followed by the planned path"""
        return self.prefix + self.path

    def sort_key(self) -> Tuple[Fraction, Fraction, Tuple[str, ...]]:
        """Objective value, then cost, then lexicographic state sequence"""
        return (self.objective_value, self.cost_sum, self.route)
