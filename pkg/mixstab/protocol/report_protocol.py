from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class ErrorResponse(BaseModel):
    object: str = "error"
    message: str
    code: int
    type: str


class IrDiagnostics(BaseModel):
    # physical infrared cutoff of the individual integrals; None for closed forms
    k_min: Optional[float] = None
    nt_sensitivity: Optional[float] = None
    mt_sensitivity: Optional[float] = None
    # cutoff-free (1/2pi) int dk (v^2 - u v) / n_c
    sum_ir_safe: float
    sum_ir_safe_closed_form: float
    sum_ir_safe_error: Optional[float] = None


class SelfConsistencyInfo(BaseModel):
    iterations: int
    residual: float
    nt: float
    mt: float
    nt12: float
    mt12: float


class FluctuationReport(BaseModel):
    branch: str
    gamma1d: float
    nt: float
    mt: float
    nt12: float
    mt12: float
    lhy_sum: float
    method: str
    ir_diagnostics: IrDiagnostics
    self_consistency: Optional[SelfConsistencyInfo] = None
    warnings: List[str] = Field(default_factory=list)


class OracleOutcome(BaseModel):
    name: str
    passed: bool
    detail: str = ""
    elapsed_ms: float = 0.0


class ValidationSummary(BaseModel):
    passed: bool
    outcomes: List[OracleOutcome]
    counts: Dict[str, int] = Field(default_factory=dict)
