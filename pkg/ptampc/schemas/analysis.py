"""
Path risk analysis schemas
"""

from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, validator


class LengthUnit(str, Enum):
    """How path and CSP lengths are counted"""
    EDGES = "edges"
    STATES = "states"


class CspConvention(BaseModel):
    """
    Convention used to extract committed sub-paths and measure lengths

    The default (edges, terminal never closes, no adjacent pairs) is the
    reference convention.
    """
    length_unit: LengthUnit = LengthUnit.EDGES
    terminal_closes: bool = False
    allow_adjacent: bool = False

    class Config:
        frozen = True

    @property
    def label(self) -> str:
        terminal = "terminal-inclusive" if self.terminal_closes else "terminal-exclusive"
        adjacent = "adjacent" if self.allow_adjacent else "non-adjacent"
        return f"{self.length_unit.value}/{terminal}/{adjacent}"


class CommittedSubPath(BaseModel):
    """A stretch of the path between two branch states with no escape route"""
    states: Tuple[str, ...]
    length: int = Field(..., ge=1)

    class Config:
        frozen = True


class PathRiskProfile(BaseModel):
    """Per-path analytics: branch states, CSPs and the Path Commitment Measure"""
    path: Tuple[str, ...]
    length: int = Field(..., ge=0, description="L(U)")
    branch_states: Tuple[str, ...] = Field(default_factory=tuple)
    out_degrees: Dict[str, int] = Field(default_factory=dict)
    gamma_centrality: int = Field(default=0, ge=0, description="Sum of branch-state out-degrees")
    csp_list: Tuple[CommittedSubPath, ...] = Field(default_factory=tuple)
    csp_count: int = Field(default=0, ge=0, description="m")
    csp_total_length: int = Field(default=0, ge=0, description="Gamma(H_U)")
    kappa: Fraction
    active_redundant_count: int = Field(default=0, ge=0)
    active_redundant_paths: Tuple[str, ...] = Field(default_factory=tuple)

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    @validator("kappa")
    def validate_kappa(cls, v):
        if not 0 <= v <= 1:
            raise ValueError(f"kappa must lie in [0, 1], got {v}")
        return v


class CalibrationEntry(BaseModel):
    """Kappa of one path under one CSP convention"""
    convention: CspConvention
    kappa: Fraction
    matches: bool

    class Config:
        frozen = True
        arbitrary_types_allowed = True


class CalibrationResult(BaseModel):
    """Outcome of evaluating a path under every CSP convention"""
    path: Tuple[str, ...]
    target: Optional[Fraction] = None
    entries: List[CalibrationEntry] = Field(default_factory=list)

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    @property
    def matching(self) -> List[CspConvention]:
        return [entry.convention for entry in self.entries if entry.matches]
