"""HTTP service exposing synthesis, analysis, verification, comparison.

All domain failures surface as ValueError in the core modules and map to
HTTP 400 here; anything else is a genuine server error.
"""

from __future__ import annotations

from dataclasses import asdict

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..circuit import analyze, block_counts, circuit_to_text, parse_circuit
from ..flt import build, plan, with_uncompute
from ..gf2x import FieldSpec
from ..pipeline import (
    compare_fields,
    comparison_csv,
    comparison_table,
    deltas_csv,
    verify_variant,
)
from ..reference import TABLE
from ..registry import load_registry, resolve_field
from .schemas import (
    AnalyzeRequest,
    AnalyzeResponse,
    CompareRequest,
    CompareResponse,
    ComparisonRowInfo,
    FieldInfo,
    HealthResponse,
    PlanInfo,
    ReferenceResponse,
    ReferenceRowInfo,
    SynthRequest,
    SynthResponse,
    VerifyRequest,
    VerifyResponse,
)


def create_app(registry_path: str | None = None) -> FastAPI:
    registry = load_registry(registry_path)
    app = FastAPI(title="qflt", version=__version__)

    @app.exception_handler(ValueError)
    async def handle_value_error(request: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    def resolve(token: str, modulus: str | None) -> FieldSpec:
        return resolve_field(token, modulus_hex=modulus, registry=registry)

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.get("/fields", response_model=list[FieldInfo])
    def fields() -> list[FieldInfo]:
        return [
            FieldInfo(name=spec.name, n=spec.n, modulus=hex(int(spec.modulus)))
            for spec in registry
        ]

    @app.get("/plan/{n}", response_model=PlanInfo)
    def plan_endpoint(n: int) -> PlanInfo:
        return PlanInfo(**asdict(plan(n)))

    @app.get("/reference", response_model=ReferenceResponse)
    def reference() -> ReferenceResponse:
        rows = [ReferenceRowInfo(**asdict(TABLE[n])) for n in sorted(TABLE)]
        return ReferenceResponse(rows=rows)

    @app.post("/synth", response_model=SynthResponse)
    def synth(req: SynthRequest) -> SynthResponse:
        spec = resolve(req.field, req.modulus)
        circuit = build(spec, req.variant)
        if req.uncompute:
            circuit = with_uncompute(circuit, spec)
        return SynthResponse(
            n=spec.n,
            field=spec.name,
            variant=req.variant,
            width=circuit.width,
            gate_count=len(circuit),
            result=circuit.meta["result"],
            blocks=block_counts(circuit),
            circuit_text=circuit_to_text(circuit),
        )

    @app.post("/analyze", response_model=AnalyzeResponse)
    def analyze_endpoint(req: AnalyzeRequest) -> AnalyzeResponse:
        if (req.circuit_text is None) == (req.field is None):
            raise ValueError("provide exactly one of circuit_text or field")
        if req.circuit_text is not None:
            circuit = parse_circuit(req.circuit_text)
        else:
            circuit = build(resolve(req.field, req.modulus),
                            req.variant or "waterfall")
        report = analyze(circuit, decompose=req.decompose)
        meta_n = circuit.meta.get("n")
        return AnalyzeResponse(
            width=report.width,
            counts=report.counts,
            cnot=report.cnot_count,
            toffoli=report.toffoli_count,
            t_count=report.t_count,
            depth=report.overall_depth,
            t_depth=report.t_depth,
            n=int(meta_n) if meta_n is not None else None,
            variant=circuit.meta.get("variant"),
        )

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest) -> VerifyResponse:
        spec = resolve(req.field, req.modulus)
        result = verify_variant(spec, req.variant, mode=req.mode,
                                samples=req.samples, seed=req.seed)
        return VerifyResponse(**result.as_dict())

    @app.post("/compare", response_model=CompareResponse)
    def compare(req: CompareRequest) -> CompareResponse:
        specs = [resolve(token, None) for token in req.fields]
        rows = compare_fields(specs, threads=req.threads)
        return CompareResponse(
            rows=[ComparisonRowInfo(**asdict(row)) for row in rows],
            csv=comparison_csv(rows),
            deltas_csv=deltas_csv(rows),
            table=comparison_table(rows),
        )

    return app


app = create_app()
