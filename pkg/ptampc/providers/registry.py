"""
Objective registry

Central lookup from controller kind to objective provider class. The three
built-in controllers are registered on import; extra objectives can be
registered at runtime for experiments.
"""

import logging
from typing import Dict, List, Type

from ptampc.core.errors import InvalidObjectiveError
from ptampc.providers.base import ObjectiveProvider
from ptampc.providers.objectives import CentralityObjective, CommitmentObjective, PlainObjective
from ptampc.schemas.plan import ControllerKind, Objective

logger = logging.getLogger(__name__)


class ObjectiveRegistry:
    """
    Registry for controller objectives

    Supports:
    - Registering provider classes per controller kind
    - Creating a provider instance for an Objective
    """

    def __init__(self):
        """Initialize empty registry"""
        self._providers: Dict[ControllerKind, Type[ObjectiveProvider]] = {}

    def register(self, kind: ControllerKind, provider_class: Type[ObjectiveProvider]):
        """
        Register an objective provider class

        Args:
            kind: Controller kind served by the provider
            provider_class: Class deriving from ObjectiveProvider

        Raises:
            ValueError: If the class does not derive from ObjectiveProvider
        """
        if not issubclass(provider_class, ObjectiveProvider):
            raise ValueError(f"Provider class must inherit from {ObjectiveProvider.__name__}")
        self._providers[kind] = provider_class
        logger.debug(f"Registered objective provider for {kind.value}: {provider_class.__name__}")

    def create(self, objective: Objective) -> ObjectiveProvider:
        """
        Build the provider for an objective

        Args:
            objective: Controller kind and beta

        Returns:
            ObjectiveProvider instance

        Raises:
            InvalidObjectiveError: If no provider is registered for the kind
        """
        provider_class = self._providers.get(objective.kind)
        if provider_class is None:
            raise InvalidObjectiveError(f"No objective registered for controller '{objective.kind.value}'")
        return provider_class(objective.beta)

    def list_kinds(self) -> List[ControllerKind]:
        return list(self._providers)

    def is_registered(self, kind: ControllerKind) -> bool:
        return kind in self._providers


# Global registry instance
_registry = ObjectiveRegistry()
_registry.register(ControllerKind.PLAIN, PlainObjective)
_registry.register(ControllerKind.CB, CentralityObjective)
_registry.register(ControllerKind.PCM, CommitmentObjective)


def get_registry() -> ObjectiveRegistry:
    """Get the global objective registry"""
    return _registry
