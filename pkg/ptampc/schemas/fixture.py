"""
File document schemas for fixtures and scenarios

Documents are the on-disk JSON shape; unknown keys are rejected so typos
surface as schema errors naming the field.
"""

from fractions import Fraction
from typing import List, Optional

from pydantic import BaseModel, Field, validator

from ptampc.schemas.automaton import Automaton, Edge, EdgeKind, State
from ptampc.schemas.common import to_fraction
from ptampc.schemas.plan import ControllerKind
from ptampc.schemas.scenario import FailureTrigger


class StateRecord(BaseModel):
    """A state entry of a fixture document"""
    id: str = Field(..., min_length=1)
    cost: Fraction = Field(default=Fraction(0))
    risk_factor: Fraction = Field(default=Fraction(1))
    location: str = ""
    failed: bool = False

    class Config:
        extra = "forbid"
        arbitrary_types_allowed = True

    @validator("cost", "risk_factor", pre=True)
    def convert_rational(cls, v):
        return to_fraction(v)


class EdgeRecord(BaseModel):
    """An edge entry of a fixture document"""
    src: str
    dst: str
    cost: Fraction = Field(default=Fraction(0))
    kind: EdgeKind = EdgeKind.ORIGINAL
    guard: Optional[str] = None
    reset: Optional[str] = None

    class Config:
        extra = "forbid"
        arbitrary_types_allowed = True

    @validator("cost", pre=True)
    def convert_cost(cls, v):
        return to_fraction(v)


class FixtureDocument(BaseModel):
    """Top-level fixture document"""
    name: str = ""
    states: List[StateRecord]
    edges: List[EdgeRecord] = Field(default_factory=list)
    initial: str
    desired_sequence: List[str]
    clocks: List[str] = Field(default_factory=list)

    class Config:
        extra = "forbid"

    def to_automaton(self) -> Automaton:
        return Automaton(
            name=self.name,
            states=tuple(
                State(
                    id=record.id,
                    cost=record.cost,
                    risk_factor=record.risk_factor,
                    location_label=record.location,
                    failed=record.failed,
                )
                for record in self.states
            ),
            edges=tuple(
                Edge(
                    src=record.src,
                    dst=record.dst,
                    cost=record.cost,
                    kind=record.kind,
                    guard=record.guard,
                    reset=record.reset,
                )
                for record in self.edges
            ),
            initial=self.initial,
            desired_sequence=tuple(self.desired_sequence),
            clocks=tuple(self.clocks),
        )

    @classmethod
    def from_automaton(cls, automaton: Automaton) -> "FixtureDocument":
        return cls(
            name=automaton.name,
            states=[
                StateRecord(
                    id=state.id,
                    cost=state.cost,
                    risk_factor=state.risk_factor,
                    location=state.location_label,
                    failed=state.failed,
                )
                for state in automaton.states
            ],
            edges=[
                EdgeRecord(
                    src=edge.src,
                    dst=edge.dst,
                    cost=edge.cost,
                    kind=edge.kind,
                    guard=edge.guard,
                    reset=edge.reset,
                )
                for edge in automaton.edges
            ],
            initial=automaton.initial,
            desired_sequence=list(automaton.desired_sequence),
            clocks=list(automaton.clocks),
        )


class ScenarioDocument(BaseModel):
    """Top-level scenario document"""
    name: str
    fixture: str
    beta: Fraction = Field(default=Fraction(1))
    controllers: List[ControllerKind] = Field(default_factory=lambda: list(ControllerKind))
    failures: List[FailureTrigger] = Field(default_factory=list)

    class Config:
        extra = "forbid"
        arbitrary_types_allowed = True

    @validator("beta", pre=True)
    def convert_beta(cls, v):
        return to_fraction(v)
