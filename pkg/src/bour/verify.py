"""Verification runs and the text report.

Each catalog surface is scanned by the oracle; the closed-form claims are
judged against the numbers it returns.  Two printed formulas that
contradict each other are settled here as well, by comparing both against
the oracle on the same grid.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import pi

import numpy as np

from . import catalog, diffgeo, maximal, timelike
from ._backend import NUMPY
from .weierstrass import b3_cartesian, bour_closed_form

DEFAULT_GRID = (64, 64)


def g9(x) -> str:
    """Nine significant digits, the CLI number format."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    return f"{x:.9g}" if x != 0 else "0"


def e2(x) -> str:
    x = float(x)
    return "nan" if math.isnan(x) else f"{x:.2e}"


@dataclass(frozen=True)
class SurfaceResult:
    label: str
    family: str
    m: str
    chart: str
    n_points: int
    n_ok: int
    n_excluded: int
    n_failed: int
    max_abs_H: float
    det_positive: int
    det_negative: int
    K_rel: float
    gauss_norm: float
    gauss_global: float
    gauss_region: float
    n_regions: int
    one_sign_per_region: bool
    min_neighbour_dot: float

    @property
    def expected_det_sign(self) -> int:
        return 1 if self.family == catalog.SPACELIKE else -1

    @property
    def det_ok(self) -> bool:
        wrong = self.det_negative if self.expected_det_sign > 0 else self.det_positive
        return self.n_ok > 0 and wrong == 0

    def passed(self, tol: float) -> bool:
        k_ok = math.isnan(self.K_rel) or self.K_rel <= 100 * tol
        return self.n_ok > 0 and self.max_abs_H < tol and self.det_ok and k_ok


def summarize(rep: diffgeo.ScanReport, family: str, m: str, chart: str) -> SurfaceResult:
    has_normal = rep.gauss_closed is not None
    signs = rep.region_signs() if has_normal else {}
    return SurfaceResult(
        label=rep.label,
        family=family,
        m=m,
        chart=chart,
        n_points=int(rep.ok.size),
        n_ok=rep.n_ok,
        n_excluded=int(rep.excluded.sum()),
        n_failed=int(rep.failed.sum()),
        max_abs_H=rep.max_abs_H,
        det_positive=rep.det_positive,
        det_negative=rep.det_negative,
        K_rel=rep.max_K_rel_residual,
        gauss_norm=rep.max_gauss_norm_residual,
        gauss_global=rep.max_gauss_residual() if has_normal else math.nan,
        gauss_region=rep.max_gauss_residual_by_region() if has_normal else math.nan,
        n_regions=len(np.unique(rep.region[rep.ok])),
        one_sign_per_region=all(len(v) == 1 for v in signs.values()),
        min_neighbour_dot=rep.min_neighbour_dot(),
    )


@dataclass(frozen=True)
class Job:
    """Picklable description of one scan (patches hold closures)."""

    label: str
    cartesian: bool = False
    conjugate: bool = False


def run_job(job: Job, grid=DEFAULT_GRID, cfg: diffgeo.OracleConfig = diffgeo.OracleConfig()) -> SurfaceResult:
    entry = catalog.lookup(job.label)
    if job.conjugate:
        p = catalog.conjugate_patch(entry, job.cartesian)
    else:
        p = catalog.patch(entry, job.cartesian)
    chart = "null" if (job.cartesian and entry.family == catalog.TIMELIKE) else entry.chart
    return summarize(diffgeo.scan(p, grid, cfg), entry.family, str(entry.m), chart)


def run_entry(entry, cartesian=False, grid=DEFAULT_GRID, cfg=diffgeo.OracleConfig()) -> SurfaceResult:
    """Like :func:`run_job` but for any entry, catalogued or not."""
    p = catalog.patch(entry, cartesian)
    chart = "null" if (cartesian and entry.family == catalog.TIMELIKE) else entry.chart
    return summarize(diffgeo.scan(p, grid, cfg), entry.family, str(entry.m), chart)


def thread_count() -> int:
    """Worker count from BOUR_THREADS (0 or unset = one per CPU)."""
    raw = os.environ.get("BOUR_THREADS", "0").strip() or "0"
    n = int(raw)
    if n < 0:
        raise ValueError("BOUR_THREADS must be >= 0")
    return n or (os.cpu_count() or 1)


def _run(args):
    job, grid, cfg = args
    return run_job(job, grid, cfg)


def run_jobs(jobs, grid=DEFAULT_GRID, cfg=diffgeo.OracleConfig(), workers: int = 1) -> list[SurfaceResult]:
    """Scan every job; results come back in job order whatever ``workers`` is."""
    args = [(j, grid, cfg) for j in jobs]
    if workers <= 1 or len(jobs) <= 1:
        return [_run(a) for a in args]
    with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
        return list(pool.map(_run, args))


# -- discrepancy adjudication ------------------------------------------------------------------


@dataclass
class Adjudication:
    title: str
    candidates: dict[str, float]  # formula -> max relative residual vs the oracle
    confirmed: str
    rejected: list[str]
    n_points: int
    details: list[str] = field(default_factory=list)

    @property
    def resolved(self) -> bool:
        return bool(self.confirmed)


def _rel(a, b):
    return float(np.max(np.abs(a - b) / np.abs(b)))


def _decide(title, candidates, n, tol, details=()):
    good = [k for k, v in candidates.items() if v <= tol]
    confirmed = good[0] if len(good) == 1 else ""
    rejected = [k for k in candidates if k not in good]
    return Adjudication(title, candidates, confirmed, rejected, n, list(details))


def adjudicate_cartesian_curvature(grid=(24, 24), cfg=diffgeo.OracleConfig(), tol=1e-6) -> Adjudication:
    """Spacelike value-3 surface in the chart u + iv: which quartic factor?"""
    rep = diffgeo.scan(catalog.patch(catalog.lookup("B_3(u,v)")), grid, cfg)
    u, v, K = rep.s[rep.ok], rep.t[rep.ok], rep.K[rep.ok]
    rho = u * u + v * v
    candidates = {
        "4 / (rho (1 - rho)^4)  [polar form, r^2 = rho]": _rel(4 / (rho * (1 - rho) ** 4), K),
        "4 / (rho (1 + rho)^4)  [printed Cartesian form]": _rel(maximal.b3_cartesian_curvature_printed(u, v), K),
    }
    return _decide("spacelike value-3 Cartesian curvature denominator", candidates, rep.n_ok, tol)


def adjudicate_timelike_sign(grid=(24, 24), cfg=diffgeo.OracleConfig(), tol=1e-6) -> Adjudication:
    """Timelike value-3 surface: sign of the polar curvature formula."""
    entry = catalog.lookup("tB_3")
    rep = diffgeo.scan(catalog.patch(entry), grid, cfg)
    r, t, K = rep.s[rep.ok], rep.t[rep.ok], rep.K[rep.ok]
    printed, _ = timelike.timelike_curvatures(3, r, t, printed=True)
    sc = np.sin(t) * np.cos(t)
    uv = r * r * sc
    cart = -1 / (uv * (1 + uv) ** 4)
    null = diffgeo.scan(catalog.patch(entry, cartesian=True), grid, cfg)
    uu, vv = null.s[null.ok], null.t[null.ok]
    w = uu * vv
    candidates = {
        "+1 / (r^2 sc (1 + r^2 sc)^4)  [printed polar form]": _rel(printed, K),
        "-1 / (uv (1 + uv)^4), uv = r^2 sc  [printed null-chart form]": _rel(cart, K),
    }
    details = [
        f"null-chart oracle vs -1/(uv(1+uv)^4): max rel residual {e2(_rel(-1 / (w * (1 + w) ** 4), null.K[null.ok]))}"
        f" over {null.n_ok} points",
        f"oracle K and the printed polar form have opposite signs at "
        f"{int(np.sum(np.sign(K) != np.sign(printed)))} of {K.size} points",
    ]
    m, rr, th = 3, 1.0, pi / 4
    L, M, N = timelike.timelike_second_form(m, rr, th)
    details.append(
        f"at r = 1, theta = pi/4: LN - M^2 = {g9(L * N - M * M)}, printed det II = "
        f"{g9(timelike.timelike_det_second(m, rr, th, printed=True))}"
    )
    return _decide("timelike value-3 polar curvature sign", candidates, rep.n_ok, tol, details)


def _scaled(a, b):
    return float(np.max(np.abs(a - b)) / np.max(np.abs(b)))


def consistency_checks() -> list[tuple[str, float, float]]:
    """(description, residual, tolerance) for identities between printed
    parametrizations and family formulas.  Residuals are max abs
    differences divided by the largest coordinate on the grid, so tiny
    surfaces are judged on the same footing as large ones."""
    rows = []
    r = np.linspace(-1, 1, 41)[:, None]
    th = np.linspace(0, 2 * pi, 73)[None, :]
    cart = b3_cartesian(r * np.cos(th), r * np.sin(th))
    rows.append(("B_3: Cartesian map at (r cos, r sin) vs polar family", _scaled(cart, bour_closed_form(3, r, th)), 1e-12))
    for e in catalog.entries():
        dom = catalog.sampling_domain(e)
        s = np.linspace(*dom.s_range, 41)
        s = (s[1:] if dom.open_left else s)[:, None]
        t = np.linspace(*dom.t_range, 73)[None, :]
        printed = np.stack(np.broadcast_arrays(*e.printed(s, t, NUMPY)), axis=-1)
        family = np.stack(np.broadcast_arrays(*catalog.evaluator(e)(s, t, NUMPY)), axis=-1)
        rows.append((f"{e.label}: printed map vs family formula", _scaled(printed, family), 1e-12))
    u = np.linspace(-1, 1, 41)[:, None]
    v = np.linspace(-1, 1, 41)[None, :]
    printed = np.stack(np.broadcast_arrays(*timelike.PRINTED_NULL_CHART(u, v, NUMPY)), axis=-1)
    family = timelike.magid_immersion(timelike.NullData.bour(3), u, v)
    rows.append(("tB_3: printed null-chart map vs Omega(u) + Psi(v)", _scaled(printed, family), 1e-12))
    return rows


# -- report -------------------------------------------------------------------------------------

HEADER = (
    f"{'surface':<20} {'family':<9} {'m':>4} {'chart':<9} {'ok':>5} {'excl':>5} {'fail':>4} "
    f"{'max|H|':>9} {'detI>0':>6} {'detI<0':>6} {'K rel':>9} {'|<e,e>|-1':>9} {'e resid':>9} "
    f"{'regions':>7}  result"
)


def table_row(res: SurfaceResult, tol: float) -> str:
    return (
        f"{res.label:<20} {res.family:<9} {res.m:>4} {res.chart:<9} {res.n_ok:>5} {res.n_excluded:>5} "
        f"{res.n_failed:>4} {e2(res.max_abs_H):>9} {res.det_positive:>6} {res.det_negative:>6} "
        f"{e2(res.K_rel):>9} {e2(res.gauss_norm):>9} {e2(res.gauss_region):>9} {res.n_regions:>7}  "
        f"{'PASS' if res.passed(tol) else 'FAIL'}"
    )


def render(results, tol, grid, cfg, conjugates=(), adjudications=(), checks=()) -> str:
    out = [
        "bour verification report",
        f"grid: {grid[0]}x{grid[1]} cell-centred, singular bands excluded",
        f"oracle: central differences, {cfg.precision}-bit arithmetic"
        + ("" if cfg.precision > diffgeo.FLOAT_BITS else f", step {g9(cfg.step)}"),
        f"tolerance: max|H| < {g9(tol)}; K rel < {g9(100 * tol)}",
        "K rel: closed-form vs oracle curvature; e resid: closed-form vs oracle normal, sign fixed once per regular region",
        "",
        HEADER,
    ]
    out += [table_row(r, tol) for r in results]
    passed = sum(r.passed(tol) for r in results)
    out.append(f"summary: {passed}/{len(results)} surfaces passed")
    for r in results:
        mark = "<" if r.max_abs_H < tol else ">="
        out.append(f"{r.label}: max|H| = {e2(r.max_abs_H)} {mark} {g9(tol)}")
    if conjugates:
        out += ["", "conjugate surfaces (Omega(u) - Psi(v))"]
        for c in conjugates:
            out.append(
                f"{c.label}: max|H| = {e2(c.max_abs_H)}, detI<0 at {c.det_negative}/{c.n_ok} points, "
                f"{'PASS' if c.passed(tol) else 'FAIL'}"
            )
    if results and any(not math.isnan(r.gauss_global) for r in results):
        out += ["", "Gauss map orientation (oracle normal = normalized x_s ^ x_t)"]
        for r in results:
            if math.isnan(r.gauss_global):
                continue
            single = r.gauss_global <= 1e-5
            out.append(
                f"{r.label}: one sign over the grid: {'yes' if single else 'no'} (resid {e2(r.gauss_global)}); "
                f"one sign per region: {'yes' if r.one_sign_per_region else 'no'} over {r.n_regions} region(s) "
                f"(resid {e2(r.gauss_region)})"
            )
    for adj in adjudications:
        out += ["", f"discrepancy: {adj.title}", f"oracle points: {adj.n_points}"]
        for name, val in adj.candidates.items():
            out.append(f"  {name}: max rel residual {e2(val)}")
        out += [f"  {d}" for d in adj.details]
        if adj.resolved:
            out.append(f"verdict: oracle confirms {adj.confirmed.split('  [')[0]}")
            for rej in adj.rejected:
                out.append(f"verdict: oracle rejects {rej.split('  [')[0]} ({rej.split('  [')[1].rstrip(']')})")
        else:
            out.append("verdict: unresolved")
    if checks:
        out += ["", "printed parametrizations vs family formulas (max residual / coordinate scale)"]
        for name, val, tol_c in checks:
            out.append(f"  {name}: {e2(val)} {'agree' if val <= tol_c else 'DIFFER'}")
    return "\n".join(out) + "\n"
