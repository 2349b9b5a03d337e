"""FastAPI service exposing the exact computation library.

Root systems and box spline tables are built once per algebra label and
cached for the lifetime of the process, so repeated queries against the same
algebra amortize the expensive table constructions. All handlers are plain
functions over the pydantic models; the CLI calls them in-process.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import deconv, multoracle, volumefn, weightmult
from ..boxspline import box_spline_density, lattice_table, r_polynomial
from ..core import fmt_frac, frac
from ..rootsys import RANK_CAPS, build
from ..verify import run_verify
from .schemas import (
    AlgebrasResponse,
    BoxsplineRequest,
    BoxsplineResponse,
    CheckResult,
    DeconvEntry,
    DeconvRequest,
    DeconvResponse,
    FloatResponse,
    KostkaRequest,
    LrRequest,
    MeasureModel,
    PartitionRequest,
    RPolyRequest,
    ValueResponse,
    VerifyRequest,
    VerifyResponse,
    VolumeRequest,
    VolumeResponse,
)


def _system(label: str):
    try:
        return build(label)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


def handle_lr(req: LrRequest) -> ValueResponse:
    rs = _system(req.algebra)
    return ValueResponse(value=multoracle.lr_coefficient(rs, req.lam, req.mu, req.nu))


def handle_kostka(req: KostkaRequest) -> ValueResponse:
    rs = _system(req.algebra)
    if req.method == "kostant":
        value = multoracle.weight_multiplicity(rs, req.lam, req.mu)
    elif req.method == "fourier":
        value = weightmult.kostka_from_i_fourier(rs, req.lam, req.mu)
    else:
        value = weightmult.kostka_fd_inversion(rs, req.lam, req.mu)
    return ValueResponse(value=value)


def handle_partition(req: PartitionRequest) -> ValueResponse:
    rs = _system(req.algebra)
    return ValueResponse(value=multoracle.kostant_partition(rs, req.point))


def handle_boxspline(req: BoxsplineRequest) -> BoxsplineResponse:
    rs = _system(req.algebra)
    out = BoxsplineResponse()
    if req.point is not None:
        out.density = fmt_frac(box_spline_density(rs, [frac(x) for x in req.point]))
    if req.rpoly is not None:
        out.rpoly = r_polynomial(rs, req.rpoly)
    if req.table:
        table = lattice_table(rs)
        out.table = MeasureModel(**table.lattice_values.to_json())
        out.r_coeffs = {",".join(map(str, k)): fmt_frac(v)
                        for k, v in sorted(table.r_coeffs.items())}
        out.kappa_set = [list(k) for k in table.K]
    return out


def handle_volume(req: VolumeRequest) -> VolumeResponse:
    rs = _system(req.algebra)
    ev = volumefn.VolumeEvaluator(rs, req.lam, req.mu)
    out = VolumeResponse()
    if req.gamma is not None:
        gamma_root = rs.root_of_wt([frac(x) for x in req.gamma])
        out.value = fmt_frac(ev.volume_j(gamma_root))
    if req.lattice:
        out.measure = MeasureModel(**ev.lattice_measure().to_json())
    return out


def handle_deconv(req: DeconvRequest) -> DeconvResponse:
    rs = _system(req.algebra)
    if req.method == "algo":
        table = deconv.multiplicities_from_j_algorithmic(rs, req.lam, req.mu)
        if req.nu is not None:
            return DeconvResponse(method="algo", nu=list(req.nu),
                                  C=table.get(tuple(req.nu), 0))
        entries = [DeconvEntry(nu=list(k), C=v) for k, v in sorted(table.items())]
        return DeconvResponse(method="algo", table=entries)
    if req.nu is None:
        raise HTTPException(status_code=422,
                            detail=f"method {req.method!r} needs an explicit nu")
    if req.method == "fourier":
        c = deconv.multiplicities_from_j_fourier(rs, req.lam, req.mu, req.nu)
    else:
        try:
            c = deconv.finite_difference_inversion(rs, req.lam, req.mu, req.nu)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
    return DeconvResponse(method=req.method, nu=list(req.nu), C=c)


def handle_rpoly(req: RPolyRequest) -> FloatResponse:
    rs = _system(req.algebra)
    return FloatResponse(value=r_polynomial(rs, req.point))


def handle_verify(req: VerifyRequest) -> VerifyResponse:
    rs = _system(req.algebra)
    try:
        checks = run_verify(rs, req.suite, threads=req.threads)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    results = [CheckResult(name=n, passed=ok, detail=str(d)) for n, ok, d in checks]
    return VerifyResponse(algebra=rs.type_label, suite=req.suite,
                          passed=all(c.passed for c in results), checks=results)


def create_app() -> FastAPI:
    app = FastAPI(
        title="boxlie",
        description="Exact tensor product multiplicities, box splines and "
                    "volume functions for classical Lie algebras",
        version="0.1.0",
    )

    @app.get("/algebras", response_model=AlgebrasResponse)
    def algebras():
        labels = [f"{fam}{r}" for fam, (lo, hi) in RANK_CAPS.items()
                  for r in range(lo, hi + 1)]
        return AlgebrasResponse(algebras=labels)

    kw = {"response_model_exclude_none": True}
    app.post("/lr", response_model=ValueResponse, **kw)(handle_lr)
    app.post("/kostka", response_model=ValueResponse, **kw)(handle_kostka)
    app.post("/partition", response_model=ValueResponse, **kw)(handle_partition)
    app.post("/boxspline", response_model=BoxsplineResponse, **kw)(handle_boxspline)
    app.post("/volume", response_model=VolumeResponse, **kw)(handle_volume)
    app.post("/deconv", response_model=DeconvResponse, **kw)(handle_deconv)
    app.post("/rpoly", response_model=FloatResponse, **kw)(handle_rpoly)
    app.post("/verify", response_model=VerifyResponse, **kw)(handle_verify)
    return app


app = create_app()
