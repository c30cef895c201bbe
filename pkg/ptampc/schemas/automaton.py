"""
Priced timed automaton schemas

- State: a station or buffer with its price and risk factor
- Edge: a material handling resource, original or redundant
- Automaton: the layout tuple with its desired-state sequence and initial state
- RedundantPath / LayoutPartition: the original layout plus its conveyor shortcuts
"""

from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx
from pydantic import BaseModel, Field, validator

from ptampc.schemas.common import to_fraction


class EdgeKind(str, Enum):
    """Edge layout tags"""
    ORIGINAL = "original"
    REDUNDANT = "redundant"


class State(BaseModel):
    """A manufacturing station or buffer (an element of Q)"""
    id: str = Field(..., description="Unique state token, e.g. q1")
    cost: Fraction = Field(default=Fraction(0), description="Price P_i in time units")
    risk_factor: Fraction = Field(default=Fraction(1), description="State risk factor h_i")
    location_label: str = Field(default="", description="Physical location")
    failed: bool = Field(default=False, description="Workstation failure flag")

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    @validator("cost", "risk_factor", pre=True)
    def convert_rational(cls, v):
        return to_fraction(v)

    def with_failed(self, failed: bool) -> "State":
        return self.model_copy(update={"failed": failed})


class Edge(BaseModel):
    """
    A transition between two states

    Guards and resets are carried but never evaluated: every edge is always
    enabled as far as clock constraints go.
    """
    src: str
    dst: str
    cost: Fraction = Field(default=Fraction(0), description="Edge price")
    kind: EdgeKind = Field(default=EdgeKind.ORIGINAL)
    guard: Optional[str] = Field(default=None, description="Inert clock guard")
    reset: Optional[str] = Field(default=None, description="Inert clock reset")

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    @validator("cost", pre=True)
    def convert_cost(cls, v):
        return to_fraction(v)

    @property
    def key(self) -> Tuple[str, str, EdgeKind]:
        return (self.src, self.dst, self.kind)


class Automaton(BaseModel):
    """
    Priced timed automaton A = (Q, C, Sigma, E, I, R, P, q0)

    Structural invariants are not enforced on construction; use
    LayoutService.validate to obtain the list of violations.
    """
    states: Tuple[State, ...] = Field(default_factory=tuple)
    edges: Tuple[Edge, ...] = Field(default_factory=tuple)
    desired_sequence: Tuple[str, ...] = Field(default_factory=tuple)
    initial: str
    clocks: Tuple[str, ...] = Field(default_factory=tuple)
    name: str = Field(default="", description="Fixture name")

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    @cached_property
    def state_map(self) -> Dict[str, State]:
        return {state.id: state for state in self.states}

    @cached_property
    def graph(self) -> nx.DiGraph:
        """Total layout as a directed graph; edge attributes carry cost and kind"""
        graph = nx.DiGraph()
        for state in self.states:
            graph.add_node(state.id, cost=state.cost, failed=state.failed)
        for edge in self.edges:
            graph.add_edge(edge.src, edge.dst, cost=edge.cost, kind=edge.kind)
        return graph

    @property
    def state_ids(self) -> List[str]:
        return [state.id for state in self.states]

    @property
    def failed_states(self) -> FrozenSet[str]:
        return frozenset(state.id for state in self.states if state.failed)

    def has_state(self, state_id: str) -> bool:
        return state_id in self.state_map

    def edge(self, src: str, dst: str) -> Optional[Edge]:
        """First edge from src to dst, if any"""
        for edge in self.edges:
            if edge.src == src and edge.dst == dst:
                return edge
        return None

    def with_failures(self, failed: Iterable[str]) -> "Automaton":
        """Copy of the automaton with exactly the given states flagged as failed"""
        failed = set(failed)
        states = tuple(state.with_failed(state.id in failed) for state in self.states)
        return self.replace(states=states)

    def replace(self, **changes) -> "Automaton":
        """
        Rebuild the automaton with some fields changed

        Cached graph and state map are rebuilt, never copied.
        """
        values = {name: getattr(self, name) for name in type(self).model_fields}
        values.update(changes)
        return type(self)(**values)


class RedundantPath(BaseModel):
    """A conveyor shortcut <q^i, q^r1, ..., q^rn, q^j> between two original states"""
    sequence: Tuple[str, ...]
    enabled: bool = False

    class Config:
        frozen = True

    @validator("sequence")
    def validate_sequence(cls, v):
        if len(v) < 2:
            raise ValueError("A redundant path needs at least an entry and an exit")
        return v

    @property
    def entry(self) -> str:
        return self.sequence[0]

    @property
    def exit(self) -> str:
        return self.sequence[-1]

    @property
    def interior(self) -> Tuple[str, ...]:
        return self.sequence[1:-1]

    @property
    def key(self) -> str:
        return "-".join(self.sequence)

    @property
    def edges(self) -> List[Tuple[str, str]]:
        return list(zip(self.sequence, self.sequence[1:]))


class LayoutPartition(BaseModel):
    """Total layout split into the original automaton and its redundant paths"""
    original: Automaton
    redundant_paths: Tuple[RedundantPath, ...] = Field(default_factory=tuple)
    failed_conveyors: FrozenSet[str] = Field(default_factory=frozenset, description="Failed interior states")

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    @property
    def k(self) -> int:
        return len(self.redundant_paths)

    @property
    def failed_states(self) -> FrozenSet[str]:
        """Failed states of the total layout, conveyor states included"""
        return self.original.failed_states | self.failed_conveyors

    def find(self, key: str) -> Optional[RedundantPath]:
        for rp in self.redundant_paths:
            if rp.key == key:
                return rp
        return None

    def with_failures(self, failed: Iterable[str]) -> "LayoutPartition":
        """Copy carrying exactly the given failure flags, conveyor states included"""
        failed = frozenset(failed)
        conveyors = {state for rp in self.redundant_paths for state in rp.interior}
        return LayoutPartition(
            original=self.original.with_failures(failed),
            redundant_paths=self.redundant_paths,
            failed_conveyors=failed & conveyors,
        )
