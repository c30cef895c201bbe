"""
Report Service

Renders analysis, plans and scenario comparisons:
- Human-readable text with decimals at a fixed number of significant digits
- Plot-ready CSV traces, one row per controller tick
- JSON-ready records for machine consumers
"""

import csv
import io
import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional

from ptampc.core.config import get_settings
from ptampc.schemas.analysis import CalibrationResult, PathRiskProfile
from ptampc.schemas.common import ValidationReport, format_rational
from ptampc.schemas.plan import Plan
from ptampc.schemas.scenario import ComparisonReport, RunResult, TraceRecord

logger = logging.getLogger(__name__)

TRACE_HEADER = ["tick", "controller", "current", "action", "planned_V", "fired_failures"]


def _digits(digits: Optional[int]) -> int:
    return digits if digits is not None else get_settings().significant_digits


def _fmt(value: Optional[Fraction], digits: Optional[int] = None) -> str:
    if value is None:
        return ""
    return format_rational(value, _digits(digits))


class ReportService:
    """Service for rendering toolkit results"""

    # =========================================================================
    # Scenario comparison
    # =========================================================================

    @staticmethod
    def trace_action(record: TraceRecord) -> str:
        """move:<next>, finished:<next>, finished or unsat"""
        if record.next_state is not None and record.action in ("move", "finished"):
            return f"{record.action}:{record.next_state}"
        return record.action

    @staticmethod
    def trace_rows(report: ComparisonReport, digits: Optional[int] = None) -> List[List[str]]:
        """CSV rows of every run, controllers in report order"""
        rows = []
        for run in report.runs:
            for record in run.trace:
                rows.append([
                    str(record.tick),
                    record.controller.value,
                    record.current,
                    ReportService.trace_action(record),
                    _fmt(record.planned_value, digits),
                    ";".join(record.fired_failures),
                ])
        return rows

    @staticmethod
    def run_summary(run: RunResult, digits: Optional[int] = None) -> str:
        """One-line status of a controller run"""
        if run.finished:
            return (
                f"{run.controller.value:<6} FINISHED  path={','.join(run.executed)}  "
                f"V={_fmt(run.reported_value, digits)}  kappa={_fmt(run.reported_kappa, digits)}"
            )
        return (
            f"{run.controller.value:<6} UNSAT     at {run.unsat_state} (tick {run.unsat_tick}, {run.unsat_cause})  "
            f"executed={','.join(run.executed)}"
        )

    @staticmethod
    def emit_comparison(report: ComparisonReport, fmt: str = "text", digits: Optional[int] = None) -> str:
        """
        Serialize a comparison report

        Args:
            report: Comparison of controller runs
            fmt: "text" or "csv"
            digits: Significant digits (settings value when omitted)

        Returns:
            Rendered output; identical reports render to identical strings

        Raises:
            ValueError: For an unknown format
        """
        if fmt == "csv":
            buffer = io.StringIO()
            writer = csv.writer(buffer, lineterminator="\n")
            writer.writerow(TRACE_HEADER)
            writer.writerows(ReportService.trace_rows(report, digits))
            return buffer.getvalue()
        if fmt != "text":
            raise ValueError(f"Unknown report format: {fmt}")

        lines = [f"Scenario: {report.scenario}  (beta={_fmt(report.beta, digits)})"]
        for run in report.runs:
            lines.append("  " + ReportService.run_summary(run, digits))
            if run.failed_states:
                lines.append(f"         failed stations: {', '.join(run.failed_states)}")
        lines.append(f"Winner: {report.winner.value if report.winner else 'none'}")
        return "\n".join(lines) + "\n"

    # =========================================================================
    # Analysis and planning
    # =========================================================================

    @staticmethod
    def profile_record(profile: PathRiskProfile) -> Dict[str, Any]:
        """JSON-ready record of a path risk profile; rationals as "p/q" strings"""
        return {
            "path": list(profile.path),
            "length": profile.length,
            "branch_states": list(profile.branch_states),
            "out_degrees": dict(profile.out_degrees),
            "gamma_centrality": profile.gamma_centrality,
            "csps": [list(csp.states) for csp in profile.csp_list],
            "csp_count": profile.csp_count,
            "csp_total_length": profile.csp_total_length,
            "active_redundant_paths": list(profile.active_redundant_paths),
            "kappa": str(profile.kappa),
            "kappa_decimal": float(profile.kappa),
        }

    @staticmethod
    def render_profile(profile: PathRiskProfile, digits: Optional[int] = None) -> str:
        lines = [
            f"Path:            {','.join(profile.path)}",
            f"Length L(U):     {profile.length}",
            f"Branch states:   {','.join(profile.branch_states) or '-'}",
            f"Centrality:      {profile.gamma_centrality}",
            f"CSPs (m={profile.csp_count}):",
        ]
        lines.extend(f"  {'-'.join(csp.states)}  (length {csp.length})" for csp in profile.csp_list)
        lines.append(f"CSP length sum:  {profile.csp_total_length}")
        lines.append(f"Active redundant paths: {', '.join(profile.active_redundant_paths) or '-'}")
        lines.append(f"kappa:           {profile.kappa} ({_fmt(profile.kappa, digits)})")
        return "\n".join(lines) + "\n"

    @staticmethod
    def render_plan(plan: Optional[Plan], digits: Optional[int] = None) -> str:
        if plan is None:
            return "UNSAT: no legal path satisfies the desired ordering\n"
        return (
            f"Controller: {plan.controller.value}\n"
            f"Path:       {','.join(plan.path)}\n"
            f"Cost:       {_fmt(plan.cost_sum, digits)}\n"
            f"Risk:       {_fmt(plan.kappa_used, digits)}\n"
            f"V:          {_fmt(plan.objective_value, digits)}\n"
        )

    @staticmethod
    def render_calibration(result: CalibrationResult, digits: Optional[int] = None) -> str:
        lines = [f"Path: {','.join(result.path)}"]
        if result.target is not None:
            lines.append(f"Target kappa: {result.target} ({_fmt(result.target, digits)})")
        for entry in result.entries:
            marker = "  <= match" if entry.matches else ""
            lines.append(f"  {entry.convention.label:<40} {str(entry.kappa):>6}  {_fmt(entry.kappa, digits)}{marker}")
        if result.target is not None and not result.matching:
            lines.append("No convention reproduces the target value")
        return "\n".join(lines) + "\n"

    @staticmethod
    def render_validation(name: str, report: ValidationReport) -> str:
        if report.is_valid:
            return f"{name}: valid\n"
        lines = [f"{name}: {len(report)} violations"]
        lines.extend(f"  [{v.code}] {v.element}: {v.message}" for v in report.violations)
        return "\n".join(lines) + "\n"
