"""
Layout Service

Handles the structural side of the priced timed automaton:
- Invariant validation (violations are returned as data)
- Partition of the total layout into the original automaton and its redundant paths
- Path legality checks
- Active / passive classification of redundant paths
"""

import logging
from collections import Counter
from typing import Dict, List, Sequence, Set, Tuple

import networkx as nx

from ptampc.core.errors import IllegalPathError, MalformedRedundantChainError, UnknownRedundantPathError
from ptampc.schemas.automaton import Automaton, Edge, EdgeKind, LayoutPartition, RedundantPath
from ptampc.schemas.common import ValidationReport, Violation

logger = logging.getLogger(__name__)


class LayoutService:
    """
    Service for validating and partitioning manufacturing layouts

    All methods are pure functions of immutable inputs.
    """

    @staticmethod
    def validate(automaton: Automaton) -> ValidationReport:
        """
        Collect every structural invariant violation of an automaton

        Args:
            automaton: Automaton to check

        Returns:
            ValidationReport listing each violation with its offending element
        """
        violations: List[Violation] = []

        counts = Counter(state.id for state in automaton.states)
        for state in automaton.states:
            if not state.id:
                violations.append(Violation(
                    code="empty_state_id",
                    element=repr(state.id),
                    message="State id must be non-empty",
                ))
            if state.cost < 0:
                violations.append(Violation(
                    code="negative_cost",
                    element=state.id,
                    message=f"State cost {state.cost} is negative",
                ))
            if state.risk_factor < 0:
                violations.append(Violation(
                    code="negative_risk_factor",
                    element=state.id,
                    message=f"Risk factor {state.risk_factor} is negative",
                ))
        for state_id, count in sorted(counts.items()):
            if count > 1:
                violations.append(Violation(
                    code="duplicate_state",
                    element=state_id,
                    message=f"State '{state_id}' declared {count} times",
                ))

        known = set(counts)
        if automaton.initial not in known:
            violations.append(Violation(
                code="unknown_initial",
                element=automaton.initial,
                message="Initial state is not a declared state",
            ))
        for desired in automaton.desired_sequence:
            if desired not in known:
                violations.append(Violation(
                    code="unknown_desired_state",
                    element=desired,
                    message="Desired state is not a declared state",
                ))

        seen: Set[Tuple[str, str, EdgeKind]] = set()
        for edge in automaton.edges:
            label = f"{edge.src}->{edge.dst} ({edge.kind.value})"
            for endpoint in (edge.src, edge.dst):
                if endpoint not in known:
                    violations.append(Violation(
                        code="unknown_edge_endpoint",
                        element=label,
                        message=f"Endpoint '{endpoint}' is not a declared state",
                    ))
            if edge.src == edge.dst:
                violations.append(Violation(
                    code="self_loop",
                    element=label,
                    message="Edge source and destination coincide",
                ))
            if edge.cost < 0:
                violations.append(Violation(
                    code="negative_cost",
                    element=label,
                    message=f"Edge cost {edge.cost} is negative",
                ))
            if edge.key in seen:
                violations.append(Violation(
                    code="duplicate_edge",
                    element=label,
                    message="Edge declared more than once",
                ))
            seen.add(edge.key)

        kinds_by_pair: Dict[Tuple[str, str], Set[EdgeKind]] = {}
        for edge in automaton.edges:
            kinds_by_pair.setdefault((edge.src, edge.dst), set()).add(edge.kind)
        for (src, dst), kinds in sorted(kinds_by_pair.items()):
            if len(kinds) > 1:
                violations.append(Violation(
                    code="parallel_edge",
                    element=f"{src}->{dst}",
                    message="States joined by both an original and a redundant edge",
                ))

        if violations:
            logger.debug(f"Automaton '{automaton.name}' has {len(violations)} violations")
        return ValidationReport(violations=violations)

    @staticmethod
    def partition(total: Automaton) -> LayoutPartition:
        """
        Split the total layout into the original automaton and its redundant paths

        Interior states of a redundant chain are the states whose incident
        edges are all redundant; every other state belongs to the original
        automaton.

        Args:
            total: Valid total layout

        Returns:
            LayoutPartition with redundant paths sorted by state sequence

        Raises:
            MalformedRedundantChainError: If a chain does not end in an original state
        """
        original_edges = [edge for edge in total.edges if edge.kind == EdgeKind.ORIGINAL]
        redundant_edges = [edge for edge in total.edges if edge.kind == EdgeKind.REDUNDANT]

        incident_kinds: Dict[str, Set[EdgeKind]] = {state.id: set() for state in total.states}
        redundant_out: Dict[str, List[Edge]] = {state.id: [] for state in total.states}
        redundant_in: Dict[str, List[Edge]] = {state.id: [] for state in total.states}
        for edge in total.edges:
            incident_kinds.setdefault(edge.src, set()).add(edge.kind)
            incident_kinds.setdefault(edge.dst, set()).add(edge.kind)
        for edge in redundant_edges:
            redundant_out.setdefault(edge.src, []).append(edge)
            redundant_in.setdefault(edge.dst, []).append(edge)

        interior = {
            state_id for state_id, kinds in incident_kinds.items()
            if kinds == {EdgeKind.REDUNDANT}
        }

        paths: List[RedundantPath] = []
        covered: Set[Tuple[str, str]] = set()
        for edge in redundant_edges:
            if edge.src in interior:
                continue
            sequence = [edge.src, edge.dst]
            covered.add((edge.src, edge.dst))
            while sequence[-1] in interior:
                node = sequence[-1]
                if len(redundant_in[node]) != 1 or len(redundant_out[node]) != 1:
                    raise MalformedRedundantChainError(
                        f"Conveyor state '{node}' must have exactly one predecessor and one successor"
                    )
                nxt = redundant_out[node][0].dst
                if nxt in sequence:
                    raise MalformedRedundantChainError(f"Redundant chain through '{node}' is cyclic")
                covered.add((node, nxt))
                sequence.append(nxt)
            paths.append(RedundantPath(sequence=tuple(sequence)))

        uncovered = sorted((e.src, e.dst) for e in redundant_edges if (e.src, e.dst) not in covered)
        if uncovered:
            src, dst = uncovered[0]
            raise MalformedRedundantChainError(
                f"Redundant edge {src}->{dst} is not on a chain entered from the original layout"
            )

        original = total.replace(
            states=tuple(state for state in total.states if state.id not in interior),
            edges=tuple(original_edges),
        )
        paths.sort(key=lambda rp: rp.sequence)

        logger.debug(f"Partitioned '{total.name}': {len(paths)} redundant paths, {len(interior)} conveyor states")
        failed_conveyors = frozenset(state.id for state in total.states if state.failed and state.id in interior)
        return LayoutPartition(original=original, redundant_paths=tuple(paths), failed_conveyors=failed_conveyors)

    @staticmethod
    def merge(partition: LayoutPartition) -> Tuple[Set[str], Set[Tuple[str, str, EdgeKind]]]:
        """
        State ids and edge keys of the layout a partition was taken from

        Args:
            partition: Layout partition

        Returns:
            Tuple of (state ids, edge keys)
        """
        states = {state.id for state in partition.original.states}
        edges = {edge.key for edge in partition.original.edges}
        for rp in partition.redundant_paths:
            states.update(rp.sequence)
            edges.update((src, dst, EdgeKind.REDUNDANT) for src, dst in rp.edges)
        return states, edges

    @staticmethod
    def check_path(automaton: Automaton, path: Sequence[str]) -> None:
        """
        Ensure every state exists and consecutive states are connected

        Args:
            automaton: Total layout
            path: State sequence

        Raises:
            IllegalPathError: If the path is empty, names an unknown state or skips an edge
        """
        if not path:
            raise IllegalPathError("Path is empty", path)
        graph = automaton.graph
        for state_id in path:
            if not automaton.has_state(state_id):
                raise IllegalPathError(f"Unknown state '{state_id}' on path", path)
        for src, dst in zip(path, path[1:]):
            if not graph.has_edge(src, dst):
                raise IllegalPathError(f"No edge {src}->{dst}", path)

    @staticmethod
    def is_active_redundant(rp: RedundantPath, layout: LayoutPartition, path_context: Sequence[str]) -> bool:
        """
        Decide whether a redundant path is active for a path

        The prefix of path_context ending at the entry must be legal and a
        legal original-layout path must lead from the exit to the last state
        of path_context. Legal means connected through non-failed states.

        Args:
            rp: Redundant path of the layout
            layout: Partition carrying the failure flags in its original automaton
            path_context: Path the redundant path would branch from

        Returns:
            True if active, False if passive

        Raises:
            UnknownRedundantPathError: If rp is not part of the layout
        """
        if layout.find(rp.key) is None:
            raise UnknownRedundantPathError(f"Redundant path {rp.key} is not part of the layout")
        if rp.entry not in path_context or not path_context:
            return False
        if any(state_id in layout.failed_conveyors for state_id in rp.interior):
            return False

        failed = layout.failed_states
        prefix = list(path_context[: list(path_context).index(rp.entry) + 1])
        connected = {(edge.src, edge.dst) for edge in layout.original.edges}
        for other in layout.redundant_paths:
            connected.update(other.edges)
        if any(state_id in failed for state_id in prefix):
            return False
        if any((src, dst) not in connected for src, dst in zip(prefix, prefix[1:])):
            return False

        target = path_context[-1]
        original_graph = layout.original.graph
        if rp.exit in failed or target in failed or rp.exit not in original_graph or target not in original_graph:
            return False
        usable = nx.subgraph_view(original_graph, filter_node=lambda node: node not in failed)
        return nx.has_path(usable, rp.exit, target)

    @staticmethod
    def active_redundant_paths(layout: LayoutPartition, path: Sequence[str]) -> List[RedundantPath]:
        """
        Active redundant paths branching off a path

        Counts redundant paths whose entry lies on the path, which are active
        and which the path does not itself traverse.

        Args:
            layout: Partition carrying failure flags
            path: Path under analysis

        Returns:
            Active redundant paths in partition order
        """
        on_path = set(path)
        traversed = set(zip(path, path[1:]))
        active = []
        for rp in layout.redundant_paths:
            if rp.entry not in on_path:
                continue
            if on_path.intersection(rp.interior) or rp.edges[0] in traversed:
                continue
            if LayoutService.is_active_redundant(rp, layout, path):
                active.append(rp)
        return active
