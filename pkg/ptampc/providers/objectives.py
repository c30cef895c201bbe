"""
Built-in controller objectives

- PlainObjective: cost-optimal PTA-MPC, no risk term
- CentralityObjective: centrality-based baseline, risk = sum of h_i over the
  clamped sum of out-degrees
- CommitmentObjective: risk-averse PTA-MPC, risk = Path Commitment Measure
"""

import logging
from fractions import Fraction
from typing import Sequence

from ptampc.providers.base import ObjectiveProvider, PlanningContext
from ptampc.schemas.automaton import Automaton
from ptampc.schemas.plan import ControllerKind
from ptampc.services.analysis_service import AnalysisService
from ptampc.services.layout_service import LayoutService

logger = logging.getLogger(__name__)


def centrality_ratio(automaton: Automaton, path: Sequence[str]) -> Fraction:
    """
    rho = sum(h_q) / max(sum(x_q), 1) over the states of the path

    The clamp is taken on the sum so a lone sink state still yields a finite ratio.
    """
    LayoutService.check_path(automaton, path)
    states = automaton.state_map
    weight = sum((states[state].risk_factor for state in path), Fraction(0))
    centrality = sum(AnalysisService.out_degree(automaton, state) for state in path)
    return weight / max(centrality, 1)


class PlainObjective(ObjectiveProvider):
    """Cost-only objective; beta is ignored"""

    kind = ControllerKind.PLAIN

    def __init__(self, beta: Fraction):
        super().__init__(Fraction(0))

    def risk(self, path: Sequence[str], context: PlanningContext) -> Fraction:
        return Fraction(0)


class CentralityObjective(ObjectiveProvider):
    """Centrality-based risk-averse baseline"""

    kind = ControllerKind.CB

    def risk(self, path: Sequence[str], context: PlanningContext) -> Fraction:
        return centrality_ratio(context.automaton, path)


class CommitmentObjective(ObjectiveProvider):
    """PCM risk-averse objective V = (1 + beta * kappa) * sum(P)"""

    kind = ControllerKind.PCM

    def risk(self, path: Sequence[str], context: PlanningContext) -> Fraction:
        return AnalysisService.pcm(context.automaton, context.partition, path, context.convention)
