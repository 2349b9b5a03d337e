"""Umbrella identity verification used by the CLI and the service: runs the
exact lattice identity suite of the box spline table plus sampled convolution
and deconvolution identities for one algebra."""

from __future__ import annotations

import random

from . import boxspline, deconv, multoracle, volumefn
from .rootsys import RootSystem

SUITES = ("boxspline", "jlr", "deconv", "all")


def _sample_triples(rs: RootSystem, count: int, seed: int, top: int = 3):
    rng = random.Random(seed)
    out = []
    guard = 0
    while len(out) < count and guard < 200 * count:
        guard += 1
        lam = tuple(rng.randint(0, top) for _ in range(rs.rank))
        mu = tuple(rng.randint(0, top) for _ in range(rs.rank))
        nu = tuple(rng.randint(0, top + 2) for _ in range(rs.rank))
        if multoracle.compatible(rs, lam, mu, nu):
            out.append((lam, mu, nu))
    return out


def run_verify(rs: RootSystem, suite: str = "all", threads: int = 1,
               seed: int = 2024) -> list[tuple[str, bool, str]]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    checks: list[tuple[str, bool, str]] = []

    if suite in ("boxspline", "all"):
        report = boxspline.verify_identities(rs, n_float_samples=40, seed=seed)
        checks.extend(report.checks)
        minval, _ = boxspline.scan_r_positivity(rs, grid_resolution=16,
                                                refine=False, threads=threads)
        if rs.family == "A":
            checks.append(("r_positive_on_grid", minval > 0, f"grid min {minval:.3g}"))
        else:
            checks.append(("r_grid_minimum", True, f"grid min {minval:.3g}"))

    if suite in ("jlr", "all"):
        ok = True
        detail = ""
        for lam, mu, nu in _sample_triples(rs, 4, seed):
            if not volumefn.jlr_verify(rs, lam, mu, nu):
                ok, detail = False, f"J-LR fails at {(lam, mu, nu)}"
                break
        checks.append(("jlr_relation", ok, detail))
        ok = True
        detail = ""
        for lam, mu, nu in _sample_triples(rs, 4, seed + 1):
            if not deconv.jlr_laplacian_verify(rs, lam, mu, nu):
                ok, detail = False, f"Laplacian form fails at {(lam, mu, nu)}"
                break
        checks.append(("jlr_laplacian", ok, detail))

    if suite in ("deconv", "all"):
        rng = random.Random(seed + 2)
        ok = True
        detail = ""
        for _ in range(2):
            lam = tuple(rng.randint(0, 2) for _ in range(rs.rank))
            mu = tuple(rng.randint(0, 2) for _ in range(rs.rank))
            got = deconv.multiplicities_from_j_algorithmic(rs, lam, mu)
            want = multoracle.lr_table(rs, lam, mu)
            if got != want:
                ok, detail = False, f"deconvolution mismatch at {(lam, mu)}"
                break
        checks.append(("algorithmic_deconvolution", ok, detail))
        if rs.rank <= 3:
            ok = True
            detail = ""
            for lam, mu, nu in _sample_triples(rs, 2, seed + 3, top=2):
                got = deconv.multiplicities_from_j_fourier(rs, lam, mu, nu)
                want = multoracle.lr_coefficient(rs, lam, mu, nu)
                if got != want:
                    ok, detail = False, f"Fourier mismatch at {(lam, mu, nu)}"
                    break
            checks.append(("fourier_inversion", ok, detail))

    return checks
