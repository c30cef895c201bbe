"""
Controller objective providers
"""

from ptampc.providers.base import ObjectiveProvider, PlanningContext, path_cost
from ptampc.providers.objectives import CentralityObjective, CommitmentObjective, PlainObjective
from ptampc.providers.registry import ObjectiveRegistry, get_registry

__all__ = [
    'CentralityObjective',
    'CommitmentObjective',
    'ObjectiveProvider',
    'ObjectiveRegistry',
    'PlainObjective',
    'PlanningContext',
    'get_registry',
    'path_cost',
]
