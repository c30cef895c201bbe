"""
Analysis Service

Graph risk metrics over paths of a layout:
- Out-degree centrality and branch states
- Committed sub-paths (CSPs) under a configurable convention
- Path Commitment Measure (PCM, kappa) and the per-path risk profile
- Calibration of kappa across all CSP conventions
"""

import itertools
import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from ptampc.core.config import get_settings
from ptampc.core.errors import UnknownStateError, ZeroLengthPathError
from ptampc.schemas.analysis import (
    CalibrationEntry,
    CalibrationResult,
    CommittedSubPath,
    CspConvention,
    LengthUnit,
    PathRiskProfile,
)
from ptampc.schemas.automaton import Automaton, LayoutPartition
from ptampc.services.layout_service import LayoutService

logger = logging.getLogger(__name__)

Span = Tuple[int, int]


def default_convention() -> CspConvention:
    """CSP convention configured in settings"""
    settings = get_settings()
    return CspConvention(
        length_unit=LengthUnit(settings.pcm_length_unit),
        terminal_closes=settings.pcm_terminal_closes,
        allow_adjacent=settings.pcm_allow_adjacent,
    )


def all_conventions() -> List[CspConvention]:
    """Every combination of length unit, terminal handling and adjacency"""
    return [
        CspConvention(length_unit=unit, terminal_closes=terminal, allow_adjacent=adjacent)
        for unit, terminal, adjacent in itertools.product(LengthUnit, (False, True), (False, True))
    ]


class AnalysisService:
    """
    Service computing centrality, committed sub-paths and the PCM of paths

    Centrality is always taken on the total layout, whether or not redundant
    edges are currently enabled.
    """

    # =========================================================================
    # Degree-sequence core
    # =========================================================================

    @staticmethod
    def path_length(degrees: Sequence[int], convention: CspConvention) -> int:
        """L(U) of a path with the given number of states"""
        if not degrees:
            return 0
        if convention.length_unit == LengthUnit.STATES:
            return len(degrees)
        return len(degrees) - 1

    @staticmethod
    def committed_spans(degrees: Sequence[int], convention: CspConvention) -> List[Span]:
        """
        Positions (start, end) of every CSP of a path given its out-degrees

        A CSP runs between two consecutive branch states (degree >= 2) whose
        interior states all have degree 1. The interior must be non-empty
        unless the convention allows adjacent pairs.
        """
        branch = [i for i, x in enumerate(degrees) if x >= 2]
        min_gap = 1 if convention.allow_adjacent else 2

        ends = list(zip(branch, branch[1:]))
        last = len(degrees) - 1
        if convention.terminal_closes and branch and branch[-1] < last:
            ends.append((branch[-1], last))

        spans = []
        for start, end in ends:
            if end - start < min_gap:
                continue
            if all(degrees[j] == 1 for j in range(start + 1, end)):
                spans.append((start, end))
        return spans

    @staticmethod
    def span_length(span: Span, convention: CspConvention) -> int:
        start, end = span
        if convention.length_unit == LengthUnit.STATES:
            return end - start + 1
        return end - start

    @staticmethod
    def kappa_from_degrees(
        degrees: Sequence[int],
        active_count: int,
        convention: Optional[CspConvention] = None,
    ) -> Fraction:
        """
        PCM of an abstract path described by its out-degree sequence

        kappa = Gamma / (m * L); 1 with fewer than two active redundant
        paths; 0 when there is no CSP at all.

        Args:
            degrees: Out-degree of each state along the path
            active_count: Number of active redundant paths branching off it
            convention: CSP convention (settings default when omitted)

        Returns:
            kappa in [0, 1]

        Raises:
            ZeroLengthPathError: If a CSP exists on a zero-length path
        """
        convention = convention or default_convention()
        if active_count < 2:
            return Fraction(1)
        spans = AnalysisService.committed_spans(degrees, convention)
        if not spans:
            return Fraction(0)
        length = AnalysisService.path_length(degrees, convention)
        if length == 0:
            raise ZeroLengthPathError("Committed sub-paths found on a zero-length path")
        total = sum(AnalysisService.span_length(span, convention) for span in spans)
        return Fraction(total, len(spans) * length)

    # =========================================================================
    # Operations on automaton paths
    # =========================================================================

    @staticmethod
    def out_degree(automaton: Automaton, state: str) -> int:
        """
        Out-degree centrality x_i of a state on the total layout

        Raises:
            UnknownStateError: If the state is not declared
        """
        if not automaton.has_state(state):
            raise UnknownStateError(state)
        return automaton.graph.out_degree(state)

    @staticmethod
    def degrees(automaton: Automaton, path: Sequence[str]) -> List[int]:
        return [AnalysisService.out_degree(automaton, state) for state in path]

    @staticmethod
    def branch_states(automaton: Automaton, path: Sequence[str]) -> Tuple[str, ...]:
        """
        States of a legal path with out-degree of at least 2, in path order

        Raises:
            IllegalPathError: If the path is not legal
        """
        LayoutService.check_path(automaton, path)
        return tuple(state for state in dict.fromkeys(path) if automaton.graph.out_degree(state) >= 2)

    @staticmethod
    def committed_subpaths(
        automaton: Automaton,
        path: Sequence[str],
        convention: Optional[CspConvention] = None,
    ) -> List[CommittedSubPath]:
        """
        Committed sub-paths of a legal path, in path order

        Raises:
            IllegalPathError: If the path is not legal
        """
        convention = convention or default_convention()
        LayoutService.check_path(automaton, path)
        degrees = AnalysisService.degrees(automaton, path)
        return [
            CommittedSubPath(
                states=tuple(path[start : end + 1]),
                length=AnalysisService.span_length((start, end), convention),
            )
            for start, end in AnalysisService.committed_spans(degrees, convention)
        ]

    @staticmethod
    def pcm(
        automaton: Automaton,
        partition: LayoutPartition,
        path: Sequence[str],
        convention: Optional[CspConvention] = None,
    ) -> Fraction:
        """
        Path Commitment Measure of a legal path

        Args:
            automaton: Total layout
            partition: Partition of the same layout, carrying failure flags
            path: Path under analysis
            convention: CSP convention (settings default when omitted)

        Returns:
            kappa in [0, 1]

        Raises:
            IllegalPathError: If the path is not legal
        """
        LayoutService.check_path(automaton, path)
        degrees = AnalysisService.degrees(automaton, path)
        active = LayoutService.active_redundant_paths(partition, path)
        return AnalysisService.kappa_from_degrees(degrees, len(active), convention)

    @staticmethod
    def risk_profile(
        automaton: Automaton,
        partition: LayoutPartition,
        path: Sequence[str],
        convention: Optional[CspConvention] = None,
    ) -> PathRiskProfile:
        """
        Aggregate every risk metric of a legal path

        Raises:
            IllegalPathError: If the path is not legal
        """
        convention = convention or default_convention()
        LayoutService.check_path(automaton, path)
        degrees = AnalysisService.degrees(automaton, path)
        out_degrees = dict(zip(path, degrees))
        branch = AnalysisService.branch_states(automaton, path)
        csps = AnalysisService.committed_subpaths(automaton, path, convention)
        active = LayoutService.active_redundant_paths(partition, path)
        kappa = AnalysisService.kappa_from_degrees(degrees, len(active), convention)

        return PathRiskProfile(
            path=tuple(path),
            length=AnalysisService.path_length(degrees, convention),
            branch_states=branch,
            out_degrees=out_degrees,
            gamma_centrality=sum(out_degrees[state] for state in branch),
            csp_list=tuple(csps),
            csp_count=len(csps),
            csp_total_length=sum(csp.length for csp in csps),
            kappa=kappa,
            active_redundant_count=len(active),
            active_redundant_paths=tuple(rp.key for rp in active),
        )

    @staticmethod
    def calibrate(
        automaton: Automaton,
        partition: LayoutPartition,
        path: Sequence[str],
        target: Optional[Fraction] = None,
    ) -> CalibrationResult:
        """
        Evaluate kappa of a path under every CSP convention

        Args:
            automaton: Total layout
            partition: Partition of the same layout
            path: Path under analysis
            target: Value to look for, e.g. a published kappa

        Returns:
            CalibrationResult with one entry per convention
        """
        LayoutService.check_path(automaton, path)
        degrees = AnalysisService.degrees(automaton, path)
        active = len(LayoutService.active_redundant_paths(partition, path))
        entries = []
        for convention in all_conventions():
            kappa = AnalysisService.kappa_from_degrees(degrees, active, convention)
            entries.append(CalibrationEntry(
                convention=convention,
                kappa=kappa,
                matches=target is not None and kappa == target,
            ))
        result = CalibrationResult(path=tuple(path), target=target, entries=entries)
        if target is not None and not result.matching:
            logger.info(f"No CSP convention reproduces kappa={target} for {'-'.join(path)}")
        return result
