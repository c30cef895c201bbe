"""
Fixture Service

Loads and saves fixture and scenario documents:
- Name resolution on the configured search path
- JSON parse errors with line and column
- Schema errors naming every offending field
- Layout validation of the loaded automaton
"""

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Union

from pydantic import ValidationError

from ptampc.core.config import get_settings
from ptampc.core.errors import (
    FixtureNotFoundError,
    LayoutValidationError,
    MalformedRedundantChainError,
    ParseError,
    SchemaError,
)
from ptampc.schemas.automaton import Automaton
from ptampc.schemas.fixture import FixtureDocument, ScenarioDocument
from ptampc.schemas.scenario import Scenario
from ptampc.services.failure_service import FailureService
from ptampc.services.layout_service import LayoutService

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _rational_json(value: Fraction) -> Union[int, str]:
    """Integers stay numbers, other rationals are written as "p/q" strings"""
    return value.numerator if value.denominator == 1 else str(value)


def _schema_error(kind: str, exc: ValidationError) -> SchemaError:
    fields = [".".join(str(part) for part in error["loc"]) or "<root>" for error in exc.errors()]
    details = "; ".join(
        f"{'.'.join(str(part) for part in error['loc']) or '<root>'}: {error['msg']}" for error in exc.errors()
    )
    return SchemaError(f"Invalid {kind} document: {details}", fields)


class FixtureService:
    """
    Service for reading and writing layout documents

    Every failure maps onto the toolkit error hierarchy so the CLI can
    report the right exit code.
    """

    @staticmethod
    def resolve_document(name: PathLike, extra_dirs: Sequence[Path] = ()) -> Path:
        """
        Locate a document by path or by name on the search path

        Args:
            name: File path, or a bare name with or without ".json"
            extra_dirs: Directories searched before the configured ones

        Returns:
            Existing file path

        Raises:
            FixtureNotFoundError: If nothing matches
        """
        candidate = Path(name)
        if candidate.is_file():
            return candidate

        names = [candidate.name] if candidate.suffix else [f"{candidate.name}.json", candidate.name]
        for directory in list(extra_dirs) + get_settings().search_dirs():
            for filename in names:
                path = Path(directory) / filename
                if path.is_file():
                    logger.debug(f"Resolved '{name}' to {path}")
                    return path
        raise FixtureNotFoundError(f"Document '{name}' not found on the search path")

    @staticmethod
    def read_json(path: Path) -> Any:
        """
        Parse a JSON document

        Raises:
            ParseError: If the document is not well-formed
        """
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise FixtureNotFoundError(f"Cannot read {path}: {exc.strerror}") from exc
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path.name}: {exc.msg}", exc.lineno, exc.colno) from exc

    @staticmethod
    def parse_fixture(data: Any, default_name: str = "") -> Automaton:
        """
        Build a validated automaton from a decoded fixture document

        Raises:
            SchemaError: On missing or mistyped fields
            LayoutValidationError: On invariant violations or malformed redundant chains
        """
        try:
            document = FixtureDocument.model_validate(data)
        except ValidationError as exc:
            raise _schema_error("fixture", exc) from exc

        automaton = document.to_automaton()
        if not automaton.name and default_name:
            automaton = automaton.replace(name=default_name)

        report = LayoutService.validate(automaton)
        if not report.is_valid:
            first = report.violations[0]
            raise LayoutValidationError(
                f"Fixture '{automaton.name}' has {len(report)} violations, first: {first.code} at {first.element}",
                report,
            )
        try:
            LayoutService.partition(automaton)
        except MalformedRedundantChainError as exc:
            raise LayoutValidationError(exc.message) from exc
        return automaton

    @staticmethod
    def load_fixture(name: PathLike) -> Automaton:
        """
        Load a fixture by path or name

        Raises:
            FixtureNotFoundError, ParseError, SchemaError, LayoutValidationError
        """
        path = FixtureService.resolve_document(name)
        automaton = FixtureService.parse_fixture(FixtureService.read_json(path), default_name=path.stem)
        logger.info(f"Loaded fixture '{automaton.name}' ({len(automaton.states)} states, {len(automaton.edges)} edges)")
        return automaton

    @staticmethod
    def fixture_document(automaton: Automaton) -> Dict[str, Any]:
        """JSON-ready fixture document of an automaton"""
        document = FixtureDocument.from_automaton(automaton)
        return {
            "name": document.name,
            "initial": document.initial,
            "desired_sequence": document.desired_sequence,
            "clocks": document.clocks,
            "states": [
                {
                    "id": record.id,
                    "cost": _rational_json(record.cost),
                    "risk_factor": _rational_json(record.risk_factor),
                    "location": record.location,
                    "failed": record.failed,
                }
                for record in document.states
            ],
            "edges": [
                {
                    "src": record.src,
                    "dst": record.dst,
                    "cost": _rational_json(record.cost),
                    "kind": record.kind.value,
                    "guard": record.guard,
                    "reset": record.reset,
                }
                for record in document.edges
            ],
        }

    @staticmethod
    def save_fixture(automaton: Automaton, path: PathLike) -> Path:
        """
        Write an automaton as a fixture document

        Loading the written file yields an equal automaton.
        """
        target = Path(path)
        target.write_text(json.dumps(FixtureService.fixture_document(automaton), indent=2) + "\n", encoding="utf-8")
        logger.info(f"Saved fixture '{automaton.name}' to {target}")
        return target

    @staticmethod
    def load_scenario(name: PathLike, fixture_override: Optional[Automaton] = None) -> Scenario:
        """
        Load a scenario and the fixture it names

        The fixture is resolved next to the scenario file first, then on the
        search path.

        Raises:
            FixtureNotFoundError, ParseError, SchemaError, LayoutValidationError,
            ScenarioValidationError
        """
        path = FixtureService.resolve_document(name)
        try:
            document = ScenarioDocument.model_validate(FixtureService.read_json(path))
        except ValidationError as exc:
            raise _schema_error("scenario", exc) from exc

        if fixture_override is not None:
            automaton = fixture_override
        else:
            fixture_path = FixtureService.resolve_document(document.fixture, extra_dirs=[path.parent])
            automaton = FixtureService.parse_fixture(
                FixtureService.read_json(fixture_path), default_name=fixture_path.stem
            )

        try:
            scenario = Scenario(
                name=document.name,
                fixture=document.fixture,
                automaton=automaton,
                schedule=tuple(document.failures),
                beta=document.beta,
                controllers=tuple(document.controllers),
            )
        except ValidationError as exc:
            raise _schema_error("scenario", exc) from exc

        FailureService.validate_schedule(scenario.schedule, automaton)
        logger.info(f"Loaded scenario '{scenario.name}' with {len(scenario.schedule)} triggers")
        return scenario
