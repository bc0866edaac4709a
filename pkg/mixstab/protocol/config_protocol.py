import math
from typing import Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, Field, validator

from mixstab.constants import (
    QUAD_ABS_TOL,
    QUAD_MAX_SUBDIVISIONS,
    QUAD_REL_TOL,
    SC_DAMPING,
    SC_MAX_ITER,
    SC_TOL,
)
from mixstab.droplet import DropletConfig
from mixstab.fluctuations import FluctuationQuadratureSettings, SelfConsistencySettings
from mixstab.model import BranchLabel, MixtureParams, SymmetricParams
from mixstab.numerics import QuadratureSettings


class MixtureConfig(BaseModel):
    m1: float
    m2: float
    g11: float
    g22: float
    g12: float
    n1: float
    n2: float
    nc1: float
    nc2: float
    hbar: float = 1.0

    class Config:
        extra = "forbid"

    def to_params(self) -> MixtureParams:
        return MixtureParams(**self.dict())


class SymmetricConfig(BaseModel):
    m: float
    g: float
    lam: float = Field(alias="lambda")
    n: float
    nc: float
    hbar: float = 1.0

    class Config:
        extra = "forbid"
        allow_population_by_field_name = True

    def to_params(self) -> SymmetricParams:
        return SymmetricParams(**self.dict())


class QuadratureConfig(BaseModel):
    rel_tol: float = QUAD_REL_TOL
    abs_tol: float = QUAD_ABS_TOL
    max_subdivisions: int = QUAD_MAX_SUBDIVISIONS
    k_min: float = 0.0
    k_max: Optional[float] = None
    temperature: float = 0.0
    mode: Literal["closed_form", "quadrature"] = "closed_form"

    @validator("rel_tol", "abs_tol")
    def valid_tolerance(cls, v):
        if not v > 0:
            raise ValueError("tolerances must be strictly positive")
        return v

    @validator("temperature")
    def valid_temperature(cls, v):
        if v < 0:
            raise ValueError("`temperature` must be non-negative")
        return v

    def to_settings(self) -> FluctuationQuadratureSettings:
        quad = QuadratureSettings(
            rel_tol=self.rel_tol,
            abs_tol=self.abs_tol,
            max_subdivisions=self.max_subdivisions,
            k_min=self.k_min,
            k_max=self.k_max,
        )
        return FluctuationQuadratureSettings(quad=quad, temperature=self.temperature, mode=self.mode)


class SelfConsistencyConfig(BaseModel):
    enabled: bool = False
    damping: float = SC_DAMPING
    tol: float = SC_TOL
    max_iter: int = SC_MAX_ITER

    @validator("damping")
    def valid_damping(cls, v):
        if not 0.0 < v <= 1.0:
            raise ValueError("`damping` must be in (0, 1]")
        return v

    def to_settings(self) -> Optional[SelfConsistencySettings]:
        if not self.enabled:
            return None
        return SelfConsistencySettings(damping=self.damping, tol=self.tol, max_iter=self.max_iter)


class DropletConfigModel(BaseModel):
    m: float = 1.0
    hbar: float = 1.0
    g: float = 1.0
    dg: float = 0.01
    branch: Literal["minus", "plus"] = "minus"
    correlated: bool = True
    form: Literal["full", "asymptotic", "asymptotic_corrected"] = "asymptotic"
    lhy_coeff_mode: Literal["exact", "paper_rounded"] = "exact"
    n_min: Optional[float] = None
    n_max: Optional[float] = None
    points: int = 400
    log_grid: bool = False

    @validator("points")
    def valid_points(cls, v):
        if v < 1:
            raise ValueError("`points` must be at least 1")
        return v

    def to_config(self) -> DropletConfig:
        return DropletConfig(
            dg=self.dg, m=self.m, hbar=self.hbar, g=self.g,
            branch=BranchLabel.from_str(self.branch),
            correlated=self.correlated,
            form=self.form,
            lhy_coeff_mode=self.lhy_coeff_mode,
        )


class ScanSpec(BaseModel):
    parameter: Literal["lambda", "g12", "n", "dg"]
    start: float
    stop: float
    step: Optional[float] = None
    count: Optional[int] = None
    fluct: Literal["none", "minus", "plus"] = "none"
    outputs: List[Literal["stability", "energy", "mu"]] = Field(default_factory=lambda: ["stability"])

    @validator("count", always=True)
    def valid_count(cls, v, values):
        step = values.get("step")
        if (step is None) == (v is None):
            raise ValueError("give exactly one of `step` and `count`")
        if v is not None and v < 1:
            raise ValueError("`count` must be at least 1")
        return v

    @validator("step")
    def valid_step(cls, v, values):
        if v is None:
            return v
        if v == 0 or not math.isfinite(v):
            raise ValueError("`step` must be finite and non-zero")
        start, stop = values.get("start"), values.get("stop")
        if start is not None and stop is not None and stop != start and (stop - start) * v < 0:
            raise ValueError("`step` points away from `stop`")
        return v

    @validator("outputs")
    def valid_outputs(cls, v):
        if not v:
            raise ValueError("`outputs` cannot be empty")
        return list(dict.fromkeys(v))

    def grid(self) -> np.ndarray:
        """Scan values in ascending order."""
        if self.count is not None:
            values = np.linspace(self.start, self.stop, self.count)
        else:
            span = self.stop - self.start
            # end point included when it falls on the grid
            steps = int(math.floor(span / self.step * (1.0 + 1e-12))) if span != 0 else 0
            values = self.start + self.step * np.arange(steps + 1)
        return np.sort(values)


class RunConfig(BaseModel):
    """The JSON configuration file: every section optional, command-line flags win."""

    params: Optional[Dict[str, float]] = None
    quadrature: QuadratureConfig = Field(default_factory=QuadratureConfig)
    self_consistency: SelfConsistencyConfig = Field(default_factory=SelfConsistencyConfig)
    droplet: DropletConfigModel = Field(default_factory=DropletConfigModel)
    scan: Optional[ScanSpec] = None

    class Config:
        extra = "forbid"
