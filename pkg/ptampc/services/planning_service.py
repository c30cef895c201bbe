"""
Planning Service

Path enumeration under the desired-state ordering constraint and selection
of the objective-minimising path:
- Ordering predicate phi(Sigma)
- Enumeration of legal simple paths over a working layout
- Risk-weighted objective V = (1 + beta * risk) * cost for every controller
- Pareto front of (cost, kappa) and the arg min with deterministic tie-breaks
"""

import logging
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from ptampc.core.errors import UnknownStateError
from ptampc.providers.base import PlanningContext, path_cost
from ptampc.providers.objectives import centrality_ratio
from ptampc.providers.registry import get_registry
from ptampc.schemas.analysis import CspConvention
from ptampc.schemas.automaton import Automaton, LayoutPartition
from ptampc.schemas.controller import WorkingLayout
from ptampc.schemas.plan import Objective, Plan
from ptampc.services.analysis_service import AnalysisService
from ptampc.services.layout_service import LayoutService

logger = logging.getLogger(__name__)

Path = Tuple[str, ...]


class PlanningService:
    """
    Service for enumerating candidate paths and picking the optimal plan

    Candidate scoring is pure; the reduction to a single plan is sequential
    and deterministic (objective value, then cost, then state sequence).
    """

    @staticmethod
    def order_satisfied(path: Sequence[str], desired: Sequence[str]) -> bool:
        """
        Check the ordering predicate phi(Sigma)

        Args:
            path: Candidate path
            desired: Desired states in their required order

        Returns:
            True if every desired state occurs and first occurrences respect the order
        """
        first_seen = {}
        for index, state in enumerate(path):
            first_seen.setdefault(state, index)
        positions = []
        for state in desired:
            if state not in first_seen:
                return False
            positions.append(first_seen[state])
        return all(a <= b for a, b in zip(positions, positions[1:]))

    @staticmethod
    def enumerate_paths(
        layout: WorkingLayout,
        start: str,
        desired: Sequence[str],
        max_hops: Optional[int] = None,
        visited: Iterable[str] = (),
    ) -> List[Path]:
        """
        All legal simple paths from start that satisfy the desired ordering

        Paths use only non-failed, unvisited states and enabled edges, end at
        the last desired state and have at most max_hops edges.

        Args:
            layout: Working layout (failures and enabled redundant paths)
            start: Current state
            desired: Remaining desired states, in order
            max_hops: Hop bound (number of states when omitted)
            visited: States already executed before start; never re-entered

        Returns:
            Paths in lexicographic order of their state sequences; empty when unsatisfiable

        Raises:
            UnknownStateError: If start is not a declared state
        """
        if not layout.base.has_state(start):
            raise UnknownStateError(start)
        if start in layout.failed_states:
            return []
        if not desired:
            return [(start,)]
        if max_hops is None:
            max_hops = len(layout.base.states)

        blocked = frozenset(visited) - {start}
        target = desired[-1]
        if target in layout.failed_states or target in blocked or not layout.base.has_state(target):
            return []
        if start == target:
            candidates: Iterable[List[str]] = [[start]]
        elif max_hops < 1:
            candidates = []
        else:
            graph = layout.graph
            if blocked:
                graph = nx.subgraph_view(graph, filter_node=lambda node: node not in blocked)
            candidates = nx.all_simple_paths(graph, start, target, cutoff=max_hops)

        paths = sorted(
            tuple(path) for path in candidates
            if PlanningService.order_satisfied(path, desired)
        )
        logger.debug(f"Enumerated {len(paths)} paths from {start} to {target}")
        return paths

    @staticmethod
    def objective_pcm(
        automaton: Automaton,
        partition: LayoutPartition,
        path: Sequence[str],
        beta: Fraction,
        convention: Optional[CspConvention] = None,
    ) -> Fraction:
        """
        V = (1 + beta * kappa) * sum of prices along the path

        Raises:
            IllegalPathError: If the path is not legal
        """
        kappa = AnalysisService.pcm(automaton, partition, path, convention)
        return (1 + beta * kappa) * path_cost(automaton, path)

    @staticmethod
    def objective_cb(automaton: Automaton, path: Sequence[str], beta: Fraction) -> Fraction:
        """
        Centrality-based baseline: V = (1 + beta * rho) * sum of prices

        Raises:
            IllegalPathError: If the path is not legal
        """
        rho = centrality_ratio(automaton, path)
        return (1 + beta * rho) * path_cost(automaton, path)

    @staticmethod
    def objective_terms(context: PlanningContext, path: Sequence[str]) -> Tuple[Fraction, Fraction]:
        """
        Multi-objective vector (cost, kappa) of a path

        Raises:
            IllegalPathError: If the path is not legal
        """
        LayoutService.check_path(context.automaton, path)
        kappa = AnalysisService.pcm(context.automaton, context.partition, path, context.convention)
        return path_cost(context.automaton, path), kappa

    @staticmethod
    def pareto_front(paths: Iterable[Sequence[str]], context: PlanningContext) -> List[Path]:
        """
        Paths not dominated in (cost, kappa)

        Args:
            paths: Candidate paths
            context: Layout the paths are scored against

        Returns:
            Non-dominated paths in lexicographic order
        """
        scored = [(tuple(path), PlanningService.objective_terms(context, path)) for path in paths]
        front = []
        for path, (cost, kappa) in scored:
            dominated = any(
                other_cost <= cost and other_kappa <= kappa and (other_cost, other_kappa) != (cost, kappa)
                for _, (other_cost, other_kappa) in scored
            )
            if not dominated:
                front.append(path)
        return sorted(front)

    @staticmethod
    def argmin_plan(
        paths: Iterable[Sequence[str]],
        objective: Objective,
        context: PlanningContext,
        prefix: Sequence[str] = (),
    ) -> Optional[Plan]:
        """
        Pick the objective-minimising plan

        Candidates are scored as continuations of the executed prefix, so a
        replanning call ranks whole routes.

        Args:
            paths: Candidate paths
            objective: Controller kind and beta
            context: Layout the paths are scored against
            prefix: States executed before the candidates' first state

        Returns:
            Plan with minimum (V, cost, route), or None for UNSAT
        """
        provider = get_registry().create(objective)
        best: Optional[Plan] = None
        for path in paths:
            plan = provider.evaluate(path, context, prefix)
            if best is None or plan.sort_key() < best.sort_key():
                best = plan
        if best is None:
            logger.debug(f"No candidate paths for {objective.kind.value}: UNSAT")
        return best

    @staticmethod
    def plan(
        layout: WorkingLayout,
        start: str,
        desired: Sequence[str],
        objective: Objective,
        max_hops: Optional[int] = None,
        convention: Optional[CspConvention] = None,
        prefix: Sequence[str] = (),
    ) -> Optional[Plan]:
        """
        Enumerate and minimise in one call

        Args:
            prefix: States executed before start; excluded from the candidates
                and scored with them

        Returns:
            Optimal Plan, or None for UNSAT
        """
        paths = PlanningService.enumerate_paths(layout, start, desired, max_hops, visited=prefix)
        context = PlanningService.context_for(layout, convention)
        return PlanningService.argmin_plan(paths, objective, context, prefix)

    @staticmethod
    def context_for(layout: WorkingLayout, convention: Optional[CspConvention] = None) -> PlanningContext:
        """Planning context carrying the failure flags of a working layout"""
        return PlanningContext(
            automaton=layout.automaton,
            partition=layout.analysis_partition,
            convention=convention,
        )
