"""Request/response models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: str
    version: str


class FieldInfo(BaseModel):
    name: str | None
    n: int
    modulus: str


class PlanInfo(BaseModel):
    n: int
    ks: list[int]
    t: int
    k1: int
    k_max: int
    mult_count: int
    squaring_count: int


class ReferenceRowInfo(BaseModel):
    n: int
    width_prev: int
    width_this: int
    cnot_prev: int
    cnot_this: int
    depth_prev: int
    depth_this: int


class ReferenceResponse(BaseModel):
    rows: list[ReferenceRowInfo]


class SynthRequest(BaseModel):
    field: str
    modulus: str | None = None
    variant: str = "waterfall"
    uncompute: bool = False


class SynthResponse(BaseModel):
    n: int
    field: str | None
    variant: str
    width: int
    gate_count: int
    result: str
    blocks: dict[str, int]
    circuit_text: str


class AnalyzeRequest(BaseModel):
    """Analyze either a serialized circuit or a freshly built variant."""

    circuit_text: str | None = None
    field: str | None = None
    modulus: str | None = None
    variant: str | None = None
    decompose: bool = False


class AnalyzeResponse(BaseModel):
    width: int
    counts: dict[str, int]
    cnot: int
    toffoli: int
    t_count: int
    depth: int
    t_depth: int
    n: int | None = None
    variant: str | None = None


class VerifyRequest(BaseModel):
    field: str
    modulus: str | None = None
    variant: str = "waterfall"
    mode: str = "exhaustive"
    samples: int = Field(default=32, ge=1)
    seed: int = 0


class FailureInfo(BaseModel):
    input: str
    expected: str
    got: str


class VerifyResponse(BaseModel):
    field: str
    n: int
    variant: str
    mode: str
    total: int
    passed: int
    ok: bool
    failures: list[FailureInfo]


class CompareRequest(BaseModel):
    fields: list[str]
    threads: int | None = Field(default=None, ge=1)


class ComparisonRowInfo(BaseModel):
    n: int
    field: str
    width_waterfall: int
    width_baseline: int
    cnot_waterfall: int
    cnot_baseline: int
    depth_waterfall: int
    depth_baseline: int
    t_count_waterfall: int
    t_count_baseline: int
    t_depth_waterfall: int
    t_depth_baseline: int
    cnot_delta: int
    depth_delta: int
    width_delta: int
    t_count_delta: int
    t_depth_delta: int
    width_prev: int | None
    width_this: int | None
    cnot_prev: int | None
    cnot_this: int | None
    depth_prev: int | None
    depth_this: int | None


class CompareResponse(BaseModel):
    rows: list[ComparisonRowInfo]
    csv: str
    deltas_csv: str
    table: str
