"""
Tests for centrality, committed sub-paths and the Path Commitment Measure
"""

from fractions import Fraction

import pytest

from ptampc.core.errors import IllegalPathError, UnknownStateError
from ptampc.core.config import get_settings
from ptampc.schemas.analysis import CspConvention, LengthUnit
from ptampc.services.analysis_service import AnalysisService, all_conventions, default_convention
from ptampc.services.layout_service import LayoutService
from tests.conftest import LINE1, LINE2, LINE3

ADJACENT = CspConvention(allow_adjacent=True)


class TestCentrality:
    """Out-degree centrality on the total layout"""

    @pytest.mark.parametrize(
        "state, degree",
        [("q1", 3), ("q2", 2), ("q3", 1), ("q8", 0), ("q15", 3), ("q18", 3), ("q21", 1)],
    )
    def test_out_degree(self, paintshop, state, degree):
        assert AnalysisService.out_degree(paintshop, state) == degree

    def test_unknown_state(self, paintshop):
        with pytest.raises(UnknownStateError) as exc_info:
            AnalysisService.out_degree(paintshop, "q99")
        assert exc_info.value.state_id == "q99"

    def test_failures_do_not_change_centrality(self, paintshop):
        failed = paintshop.with_failures(["q10", "q5"])
        assert AnalysisService.out_degree(failed, "q15") == 3

    def test_branch_states_in_path_order(self, paintshop):
        assert AnalysisService.branch_states(paintshop, LINE3) == ("q1", "q2", "q4", "q6")
        assert AnalysisService.branch_states(paintshop, LINE1) == ("q1", "q15", "q18")
        assert AnalysisService.branch_states(paintshop, LINE2) == ("q1",)

    def test_branch_states_reject_illegal_path(self, paintshop):
        with pytest.raises(IllegalPathError):
            AnalysisService.branch_states(paintshop, ("q1", "q5"))


class TestCommittedSubPaths:
    """CSP extraction under the reference and alternative conventions"""

    def test_line_one(self, paintshop):
        csps = AnalysisService.committed_subpaths(paintshop, LINE1)
        assert [csp.states for csp in csps] == [("q1", "q14", "q15"), ("q15", "q16", "q17", "q18")]
        assert [csp.length for csp in csps] == [2, 3]

    def test_line_three(self, paintshop):
        csps = AnalysisService.committed_subpaths(paintshop, LINE3)
        assert [csp.states for csp in csps] == [("q2", "q3", "q4"), ("q4", "q5", "q6")]

    def test_adjacent_branch_states_form_a_pair(self, paintshop):
        csps = AnalysisService.committed_subpaths(paintshop, LINE3, ADJACENT)
        assert csps[0].states == ("q1", "q2")
        assert csps[0].length == 1

    def test_terminal_never_closes_by_default(self, paintshop):
        csps = AnalysisService.committed_subpaths(paintshop, LINE3)
        assert all(csp.states[-1] != "q8" for csp in csps)

    def test_terminal_closing_variant(self, paintshop):
        convention = CspConvention(terminal_closes=True)
        csps = AnalysisService.committed_subpaths(paintshop, LINE3, convention)
        assert csps[-1].states == ("q6", "q7", "q8")

    def test_all_branch_path_has_none(self, all_branch):
        assert AnalysisService.committed_subpaths(all_branch, ("a", "b", "c", "t")) == []

    def test_states_length_unit(self):
        convention = CspConvention(length_unit=LengthUnit.STATES)
        assert AnalysisService.committed_spans([2, 1, 1, 2, 0], convention) == [(0, 3)]
        assert AnalysisService.span_length((0, 3), convention) == 4
        assert AnalysisService.path_length([2, 1, 1, 2, 0], convention) == 5


class TestPathCommitmentMeasure:
    """kappa of the paintshop lines and synthetic paths"""

    def test_line_values(self, paintshop, partition):
        assert AnalysisService.pcm(paintshop, partition, LINE1) == Fraction(5, 14)
        assert AnalysisService.pcm(paintshop, partition, LINE2) == Fraction(1)
        assert AnalysisService.pcm(paintshop, partition, LINE3) == Fraction(2, 7)

    def test_line_ordering(self, paintshop, partition):
        kappas = [AnalysisService.pcm(paintshop, partition, line) for line in (LINE3, LINE1, LINE2)]
        assert kappas[0] < kappas[1] < kappas[2] == 1

    def test_adjacent_variant_for_line_three(self, paintshop, partition):
        assert AnalysisService.pcm(paintshop, partition, LINE3, ADJACENT) == Fraction(5, 21)

    def test_settings_select_the_convention(self, paintshop, partition, monkeypatch):
        monkeypatch.setenv("PTAMPC_PCM_ALLOW_ADJACENT", "true")
        get_settings.cache_clear()
        assert default_convention().allow_adjacent
        assert AnalysisService.pcm(paintshop, partition, LINE3) == Fraction(5, 21)

    def test_all_branch_states_give_zero(self, all_branch):
        partition = LayoutService.partition(all_branch)
        assert AnalysisService.pcm(all_branch, partition, ("a", "b", "c", "t")) == 0

    def test_single_state_path_falls_back_to_one(self, paintshop, partition):
        assert AnalysisService.pcm(paintshop, partition, ("q8",)) == 1

    def test_failure_turns_line_three_remainder_passive(self, paintshop, partition):
        failed = paintshop.with_failures(["q10", "q5"])
        failed_partition = partition.with_failures(["q10", "q5"])
        rest = ("q2", "q3", "q4", "q21", "q11", "q12", "q13", "q8")
        assert AnalysisService.pcm(failed, failed_partition, rest) == 1

    def test_illegal_path(self, paintshop, partition):
        with pytest.raises(IllegalPathError):
            AnalysisService.pcm(paintshop, partition, ("q1", "q8"))

    @pytest.mark.parametrize(
        "degrees, active, expected",
        [
            ([2, 1, 1, 2, 1, 0], 2, Fraction(3, 5)),
            ([2, 1, 2, 1, 2], 3, Fraction(1, 2)),
            ([2, 2, 2], 2, Fraction(0)),
            ([2, 1, 2], 1, Fraction(1)),
            ([1, 1, 1], 0, Fraction(1)),
        ],
    )
    def test_kappa_from_degrees(self, degrees, active, expected):
        assert AnalysisService.kappa_from_degrees(degrees, active) == expected


class TestRiskProfile:
    """Aggregated per-path analytics"""

    def test_line_one_profile(self, paintshop, partition):
        profile = AnalysisService.risk_profile(paintshop, partition, LINE1)
        assert profile.length == 7
        assert profile.branch_states == ("q1", "q15", "q18")
        assert profile.gamma_centrality == 9
        assert profile.csp_count == 2
        assert profile.csp_total_length == 5
        assert profile.kappa == Fraction(5, 14)
        assert profile.active_redundant_count == 4
        assert profile.out_degrees["q8"] == 0

    def test_profile_matches_pcm(self, paintshop, partition):
        for line in (LINE1, LINE2, LINE3):
            profile = AnalysisService.risk_profile(paintshop, partition, line)
            assert profile.kappa == AnalysisService.pcm(paintshop, partition, line)


class TestCalibration:
    """kappa of a path under every CSP convention"""

    def test_eight_conventions(self):
        conventions = all_conventions()
        assert len(conventions) == 8
        assert len({c.label for c in conventions}) == 8
        assert conventions[0] == CspConvention()

    def test_published_line_three_value_has_no_match(self, paintshop, partition):
        result = AnalysisService.calibrate(paintshop, partition, LINE3, Fraction(5, 32))
        assert result.matching == []
        assert [entry.kappa for entry in result.entries] == [
            Fraction(2, 7),
            Fraction(5, 21),
            Fraction(2, 7),
            Fraction(1, 4),
            Fraction(3, 8),
            Fraction(1, 3),
            Fraction(3, 8),
            Fraction(11, 32),
        ]

    def test_adjacent_value_is_found(self, paintshop, partition):
        result = AnalysisService.calibrate(paintshop, partition, LINE3, Fraction(5, 21))
        assert [c.label for c in result.matching] == ["edges/terminal-exclusive/adjacent"]

    def test_without_target_nothing_matches(self, paintshop, partition):
        result = AnalysisService.calibrate(paintshop, partition, LINE1)
        assert result.target is None
        assert result.matching == []
