"""Pydantic request/response models for the computation service.

Weights are integer vectors in the fundamental-weight basis. Rational
coordinates travel as 'p/q' strings so nothing is lost to floating point;
e-coordinate inputs for trigonometric evaluations are plain floats.
"""

from __future__ import annotations

from pydantic import BaseModel, Field, field_validator


class WeightPairRequest(BaseModel):
    algebra: str = Field(examples=["A2"])
    lam: list[int] = Field(alias="lambda")
    mu: list[int]

    model_config = {"populate_by_name": True}


class LrRequest(WeightPairRequest):
    nu: list[int]


class KostkaRequest(WeightPairRequest):
    method: str = "kostant"

    @field_validator("method")
    @classmethod
    def _method_ok(cls, v: str) -> str:
        if v not in ("kostant", "fourier", "findiff"):
            raise ValueError("method must be kostant, fourier or findiff")
        return v


class PartitionRequest(BaseModel):
    algebra: str
    point: list[int] = Field(description="root lattice point, root coordinates")


class ValueResponse(BaseModel):
    value: int


class BoxsplineRequest(BaseModel):
    algebra: str
    point: list[str] | None = Field(default=None, description="rational point, root coordinates")
    table: bool = False
    rpoly: list[float] | None = Field(default=None, description="e-coordinates")


class MeasureModel(BaseModel):
    base: list[str]
    entries: list[dict]


class BoxsplineResponse(BaseModel):
    density: str | None = None
    rpoly: float | None = None
    table: MeasureModel | None = None
    r_coeffs: dict[str, str] | None = None
    kappa_set: list[list[int]] | None = None


class VolumeRequest(WeightPairRequest):
    gamma: list[str] | None = Field(default=None, description="rational point, fundamental-weight coordinates")
    lattice: bool = False


class VolumeResponse(BaseModel):
    value: str | None = None
    measure: MeasureModel | None = None


class DeconvRequest(WeightPairRequest):
    method: str = "algo"
    nu: list[int] | None = None

    @field_validator("method")
    @classmethod
    def _method_ok(cls, v: str) -> str:
        if v not in ("algo", "fourier", "findiff"):
            raise ValueError("method must be algo, fourier or findiff")
        return v


class DeconvEntry(BaseModel):
    nu: list[int]
    C: int


class DeconvResponse(BaseModel):
    method: str
    nu: list[int] | None = None
    C: int | None = None
    table: list[DeconvEntry] | None = None


class RPolyRequest(BaseModel):
    algebra: str
    point: list[float] = Field(description="e-coordinates")


class FloatResponse(BaseModel):
    value: float


class VerifyRequest(BaseModel):
    algebra: str
    suite: str = "all"
    threads: int = 1


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class VerifyResponse(BaseModel):
    algebra: str
    suite: str
    passed: bool
    checks: list[CheckResult]


class AlgebrasResponse(BaseModel):
    algebras: list[str]
