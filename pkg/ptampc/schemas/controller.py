"""
Receding-horizon controller schemas
"""

from enum import Enum
from functools import cached_property
from typing import FrozenSet, Optional, Tuple

import networkx as nx
from pydantic import BaseModel, Field

from ptampc.schemas.automaton import Automaton, EdgeKind, LayoutPartition
from ptampc.schemas.plan import Plan


class ControllerMemory(BaseModel):
    """Executed prefix, current state and remaining desired states"""
    executed: Tuple[str, ...]
    remaining_desired: Tuple[str, ...]
    step_index: int = Field(default=0, ge=0)

    class Config:
        frozen = True

    @property
    def current(self) -> str:
        return self.executed[-1]

    @classmethod
    def initial(cls, automaton: Automaton) -> "ControllerMemory":
        """D(t+1) <- Sigma, current <- q0"""
        return cls(executed=(automaton.initial,), remaining_desired=automaton.desired_sequence)


class WorkingLayout(BaseModel):
    """The automaton as updated by sensed failures and enabled redundant paths"""
    base: Automaton
    partition: LayoutPartition
    failed_states: FrozenSet[str] = Field(default_factory=frozenset)
    enabled_redundant: FrozenSet[str] = Field(default_factory=frozenset)

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    @cached_property
    def automaton(self) -> Automaton:
        """Base automaton with the failure flags of this layout"""
        return self.base.with_failures(self.failed_states)

    @cached_property
    def enabled_edges(self) -> FrozenSet[Tuple[str, str]]:
        edges = set()
        for rp in self.partition.redundant_paths:
            if rp.key in self.enabled_redundant:
                edges.update(rp.edges)
        return frozenset(edges)

    @cached_property
    def analysis_partition(self) -> LayoutPartition:
        """Partition whose original automaton carries this layout's failures"""
        return self.partition.with_failures(self.failed_states)

    @cached_property
    def graph(self) -> nx.DiGraph:
        """View of the total layout restricted to usable states and edges"""
        total = self.base.graph
        failed = self.failed_states
        enabled = self.enabled_edges

        def usable_node(node: str) -> bool:
            return node not in failed

        def usable_edge(src: str, dst: str) -> bool:
            if total.edges[src, dst]["kind"] == EdgeKind.ORIGINAL:
                return True
            return (src, dst) in enabled

        return nx.subgraph_view(total, filter_node=usable_node, filter_edge=usable_edge)


class StepKind(str, Enum):
    MOVED = "moved"
    FINISHED = "finished"
    UNSAT = "unsat"


class StepOutcome(BaseModel):
    """Result of one MPC tick"""
    kind: StepKind
    planned_path: Optional[Plan] = None
    executed_state: Optional[str] = None
    cause: Optional[str] = Field(default=None, description="Unsat cause tag")

    class Config:
        frozen = True
