"""
Base interface for controller objectives

Each controller (plain PTA-MPC, centrality-based, PCM risk-averse) scores a
candidate path as V = (1 + beta * risk) * cost. Providers differ only in the
risk term, so the planner stays independent of which controller is running.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from ptampc.schemas.analysis import CspConvention
from ptampc.schemas.automaton import Automaton, LayoutPartition
from ptampc.schemas.plan import ControllerKind, Plan
from ptampc.services.layout_service import LayoutService


@dataclass(frozen=True)
class PlanningContext:
    """Layout a path is scored against"""

    automaton: Automaton
    partition: LayoutPartition
    convention: Optional[CspConvention] = field(default=None)


def path_cost(automaton: Automaton, path: Sequence[str]) -> Fraction:
    """Sum of state prices plus traversed edge prices"""
    graph = automaton.graph
    states = automaton.state_map
    total = sum((states[state].cost for state in path), Fraction(0))
    total += sum((graph.edges[src, dst]["cost"] for src, dst in zip(path, path[1:])), Fraction(0))
    return total


class ObjectiveProvider(ABC):
    """
    Abstract base class for controller objectives

    Providers are cheap to build; a new instance is created per planning call.
    """

    kind: ControllerKind

    def __init__(self, beta: Fraction):
        """
        Initialize objective provider

        Args:
            beta: Risk significance factor
        """
        self.beta = beta
        self.provider_name = self.__class__.__name__

    @abstractmethod
    def risk(self, path: Sequence[str], context: PlanningContext) -> Fraction:
        """
        Risk term of the objective for a path

        Args:
            path: Candidate path
            context: Layout the path is scored against

        Returns:
            Non-negative rational risk
        """
        pass

    def evaluate(self, path: Sequence[str], context: PlanningContext, prefix: Sequence[str] = ()) -> Plan:
        """
        Score a candidate path as the continuation of an executed prefix

        Args:
            path: Candidate path from the current state
            context: Layout the path is scored against
            prefix: States executed before the current one

        Returns:
            Plan carrying V, the cost sum and the risk term of the whole route

        Raises:
            IllegalPathError: If the route is not legal
        """
        route = tuple(prefix) + tuple(path)
        LayoutService.check_path(context.automaton, route)
        cost = path_cost(context.automaton, route)
        risk = self.risk(route, context)
        return Plan(
            path=tuple(path),
            prefix=tuple(prefix),
            objective_value=(1 + self.beta * risk) * cost,
            cost_sum=cost,
            kappa_used=risk,
            controller=self.kind,
        )
