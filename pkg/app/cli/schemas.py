from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field

Verdict = Literal['synthesized', 'unknown', 'unrealizable', 'rejected-cycle', 'rejected-pattern', 'validation-failed']


class FuzzSummary(BaseModel):
    """Result of random validation of a synthesized controller."""
    traces: int = Field(..., ge=0, description="Simulated traces")
    length: int = Field(..., ge=0, description="Cycles per trace")
    conflicts: int = Field(0, ge=0, description="Traces ending in a runtime conflict")
    violations: List[str] = Field(default_factory=list, description="First violations found")


class RunReport(BaseModel):
    """Outcome of one synthesis run."""
    spec: str = Field(..., description="Spec file")
    verdict: Verdict = Field(..., description="Pipeline verdict")
    exit_code: int = Field(..., description="Process exit code for the verdict")
    detail: Optional[str] = Field(None, description="Rejection reason")
    omega: Optional[int] = Field(None, ge=1, description="Unroll bound of the spec")
    unroll_depth: Optional[int] = Field(None, description="Depth of the unrolled check, if it ran")
    unroll_complete: Optional[bool] = Field(None, description="Whether an unrolled Unsat is conclusive")
    timings: Dict[str, float] = Field(default_factory=dict, description="Milliseconds per phase")
    witness: Optional[Dict[str, bool]] = Field(None, description="Resolution parameter per output")
    provenance: Dict[str, List[str]] = Field(default_factory=dict, description="Actor ids per conjunct label")
    actors: Dict[str, int] = Field(default_factory=dict, description="Actor count per kind")
    encoding: Dict[str, int] = Field(default_factory=dict, description="Size of the static encoding")
    fuzz: Optional[FuzzSummary] = Field(None, description="Random validation, if requested")
    artifacts: Dict[str, str] = Field(default_factory=dict, description="Written files by kind")
