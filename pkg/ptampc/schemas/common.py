"""
Common schemas and helpers used across the toolkit
"""

import math
from fractions import Fraction
from typing import Any, List

from pydantic import BaseModel, Field


def to_fraction(value: Any) -> Fraction:
    """
    Convert an int, float, Decimal or "p/q" string into an exact Fraction

    Floats go through their shortest repr so 0.1 becomes 1/10.

    Raises:
        ValueError: If the value is not a finite rational
    """
    if isinstance(value, bool):
        raise ValueError("Booleans are not rational numbers")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"Non-finite value: {value}")
        return Fraction(repr(value))
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"Not a rational number: {value!r}") from exc


def format_rational(value: Fraction, digits: int = 6) -> str:
    """Render a rational as a decimal with the given significant digits"""
    return format(float(value), f".{digits}g")


class Violation(BaseModel):
    """A single invariant violation found by layout validation"""
    code: str = Field(..., description="Machine-readable violation code")
    element: str = Field(..., description="Offending state, edge or reference")
    message: str = Field(..., description="Human-readable explanation")

    class Config:
        frozen = True


class ValidationReport(BaseModel):
    """Result of validating an automaton; empty means valid"""
    violations: List[Violation] = Field(default_factory=list)

    class Config:
        frozen = True

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def __len__(self) -> int:
        return len(self.violations)
