"""Finite-difference oracle for parametric surfaces in Minkowski space.

The oracle only sees a map ``(s, t) -> (x, y, z)``.  It recomputes the
first and second fundamental forms, the unit normal and both curvatures by
central differences, so it can check any closed-form claim independently.

Two arithmetic modes are available:

* extended precision (default): the patch is evaluated on gmpy2 ``mpfr``
  scalars at ``OracleConfig.precision`` bits with step ``2**(-precision/4)``,
  and every subsequent product is formed in that precision.  Needed for
  tiny or strongly curved patches where double-precision cancellation in
  ``EN - 2FM + GL`` would swamp a zero mean curvature.
* float64 (``precision=53`` or a patch that only accepts numpy): first
  derivatives use ``cfg.step``, second derivatives use ``sqrt(cfg.step)``
  with one Richardson extrapolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import gmpy2
import numpy as np

from ._backend import MPFR, NUMPY, working_precision
from .errors import DegenerateNormal, DomainEdge
from .lorentz import CausalCharacter, Signature, euclidean_norm2, inner, lorentz_cross

FLOAT_BITS = 53


@dataclass(frozen=True)
class SurfacePatch:
    """A parametric surface handed to the oracle.

    ``func(s, t, xp)`` returns the three coordinates using the arithmetic
    namespace ``xp`` (numpy or mpfr).  ``excluded(s, t)`` marks the bands
    around singular loci that verification grids skip; ``curvature`` and
    ``normal`` are optional closed forms the scan compares against.
    ``region(s, t)`` labels the connected pieces of the domain minus the
    singular loci with integers; neighbours in different pieces are never
    compared for orientation.
    """

    func: Callable
    domain: tuple[tuple[float, float], tuple[float, float]]
    sig: Signature
    singular_loci: tuple[str, ...] = ()
    excluded: Callable | None = None
    label: str = ""
    extended: bool = True
    curvature: Callable | None = field(default=None, compare=False)
    normal: Callable | None = field(default=None, compare=False)
    region: Callable | None = field(default=None, compare=False)

    def eval(self, s, t) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        t = np.asarray(t, dtype=float)
        return np.stack(np.broadcast_arrays(*self.func(s, t, NUMPY)), axis=-1)


@dataclass(frozen=True)
class OracleConfig:
    step: float = 1e-5
    degeneracy_tol: float = 1e-10
    precision: int = 256

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError("step must be positive")
        if not self.degeneracy_tol > 0:
            raise ValueError("degeneracy_tol must be positive")
        if self.precision < FLOAT_BITS:
            raise ValueError("precision below 53 bits is not supported")


@dataclass(frozen=True)
class FormSample:
    E: float
    F: float
    G: float
    L: float
    M: float
    N: float
    gauss: np.ndarray
    K: float
    H: float
    character: CausalCharacter

    @property
    def det_first(self) -> float:
        return self.E * self.G - self.F * self.F

    @property
    def det_second(self) -> float:
        return self.L * self.N - self.M * self.M


def _extended(patch: SurfacePatch, cfg: OracleConfig) -> bool:
    return patch.extended and cfg.precision > FLOAT_BITS


def _scale(s, t):
    return np.maximum(1.0, np.maximum(np.abs(s), np.abs(t)))


def _stencil_fits(patch, s, t, reach):
    (s0, s1), (t0, t1) = patch.domain
    s = np.asarray(s)
    t = np.asarray(t)
    # compare distances to the edges: s + reach can round back to s
    return (s - s0 >= reach) & (s1 - s >= reach) & (t - t0 >= reach) & (t1 - t >= reach)


def _np_reach(s, t, cfg):
    scale = _scale(s, t)
    return 2 * np.maximum(cfg.step, math.sqrt(cfg.step)) * scale


def _check_stencil(patch, s, t, reach):
    if not np.all(_stencil_fits(patch, s, t, reach)):
        raise DomainEdge(f"stencil of half-width {np.max(reach):.3g} leaves the patch domain")


def _vec(xyz):
    return np.array(list(xyz), dtype=object)


def _mp_derivatives(patch, s, t, cfg, second=True):
    """Central differences on mpfr scalars; returns object 3-vectors."""
    bits = cfg.precision
    h_float = math.ldexp(1.0, -(bits // 4)) * float(_scale(s, t))
    _check_stencil(patch, s, t, h_float)
    with working_precision(bits):
        S, T = gmpy2.mpfr(s), gmpy2.mpfr(t)
        h = gmpy2.mpfr(h_float)

        def f(a, b):
            return _vec(patch.func(a, b, MPFR))

        sp, sm = f(S + h, T), f(S - h, T)
        tp, tm = f(S, T + h), f(S, T - h)
        xs = (sp - sm) / (2 * h)
        xt = (tp - tm) / (2 * h)
        if not second:
            return xs, xt
        c = f(S, T)
        h2 = h * h
        xss = (sp - 2 * c + sm) / h2
        xtt = (tp - 2 * c + tm) / h2
        xst = (f(S + h, T + h) - f(S + h, T - h) - f(S - h, T + h) + f(S - h, T - h)) / (4 * h2)
        return xs, xt, xss, xst, xtt


def _np_first(patch, s, t, h):
    sp, sm = patch.eval(s + h, t), patch.eval(s - h, t)
    tp, tm = patch.eval(s, t + h), patch.eval(s, t - h)
    hh = (2 * h)[..., None]
    return (sp - sm) / hh, (tp - tm) / hh


def _np_second(patch, s, t, h):
    c = patch.eval(s, t)
    hh = (h * h)[..., None]
    xss = (patch.eval(s + h, t) - 2 * c + patch.eval(s - h, t)) / hh
    xtt = (patch.eval(s, t + h) - 2 * c + patch.eval(s, t - h)) / hh
    xst = (
        patch.eval(s + h, t + h) - patch.eval(s + h, t - h) - patch.eval(s - h, t + h) + patch.eval(s - h, t - h)
    ) / (4 * hh)
    return xss, xst, xtt


def _np_derivatives(patch, s, t, cfg):
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    scale = _scale(s, t)
    h1 = cfg.step * scale
    h2 = math.sqrt(cfg.step) * scale
    _check_stencil(patch, s, t, _np_reach(s, t, cfg))
    a1, b1 = _np_first(patch, s, t, h1)
    a2, b2 = _np_first(patch, s, t, 2 * h1)
    xs, xt = (4 * a1 - a2) / 3, (4 * b1 - b2) / 3
    fine = _np_second(patch, s, t, h2)
    coarse = _np_second(patch, s, t, 2 * h2)
    xss, xst, xtt = ((4 * a - b) / 3 for a, b in zip(fine, coarse))
    return xs, xt, xss, xst, xtt


def jacobian(patch: SurfacePatch, s: float, t: float, cfg: OracleConfig = OracleConfig()):
    """Central-difference tangent vectors ``(x_s, x_t)`` as float arrays."""
    if _extended(patch, cfg):
        xs, xt = _mp_derivatives(patch, float(s), float(t), cfg, second=False)
        return xs.astype(float), xt.astype(float)
    h = cfg.step * _scale(s, t)
    _check_stencil(patch, s, t, h)
    return _np_first(patch, np.asarray(float(s)), np.asarray(float(t)), np.asarray(h))


def curvatures_numeric(sample, sig: Signature | None = None):
    """(K, H) from the fundamental-form coefficients of ``sample``.

    Spacelike samples (det I > 0, timelike normal) use
    ``K = -det II / det I`` and ``H = -(EN - 2FM + GL) / (2 det I)``;
    timelike samples use the same expressions without the leading minus.
    ``sig`` is accepted for symmetry with the rest of the API; the sign of
    det I alone fixes the convention.  Works on float or mpfr fields.
    """
    E, F, G, L, M, N = sample.E, sample.F, sample.G, sample.L, sample.M, sample.N
    det1 = E * G - F * F
    if det1 == 0:
        raise DegenerateNormal("det I vanishes")
    det2 = L * N - M * M
    trace = E * N - 2 * F * M + G * L
    eps = -1 if det1 > 0 else 1
    return eps * det2 / det1, eps * trace / (2 * det1)


@dataclass
class _Raw:
    E: object
    F: object
    G: object
    L: object
    M: object
    N: object
    gauss: object
    det1: object


def _raw_forms(xs, xt, xss, xst, xtt, sig):
    E = inner(xs, xs, sig)
    F = inner(xs, xt, sig)
    G = inner(xt, xt, sig)
    n = lorentz_cross(xs, xt, sig)
    q = inner(n, n, sig)
    with np.errstate(divide="ignore", invalid="ignore"):  # degenerate points are rejected by the caller
        e = n / (np.abs(q) ** 0.5)[..., None] if isinstance(q, np.ndarray) else n / abs(q) ** 0.5
        return _Raw(E, F, G, inner(xss, e, sig), inner(xst, e, sig), inner(xtt, e, sig), e, E * G - F * F)


def _degenerate(xs, xt, det1, tol):
    # relative to the Euclidean area element, so tiny patches are not flagged
    return abs(det1) <= tol * euclidean_norm2(xs) * euclidean_norm2(xt)


def fundamental_forms(patch: SurfacePatch, s: float, t: float, cfg: OracleConfig = OracleConfig()) -> FormSample:
    """Numeric E, F, G, L, M, N, unit normal and curvatures at one point.

    The normal is ``normalize(lorentz_cross(x_s, x_t))``.  Raises
    DegenerateNormal when ``|det I|`` is below ``cfg.degeneracy_tol`` times
    the Euclidean area element squared, DomainEdge when the stencil leaves
    the domain.
    """
    s, t = float(s), float(t)
    if _extended(patch, cfg):
        with working_precision(cfg.precision):
            xs, xt, xss, xst, xtt = _mp_derivatives(patch, s, t, cfg)
            raw = _raw_forms(xs, xt, xss, xst, xtt, patch.sig)
            if _degenerate(xs, xt, raw.det1, cfg.degeneracy_tol):
                raise DegenerateNormal(f"degenerate first form at ({s}, {t})")
            K, H = curvatures_numeric(raw)
    else:
        xs, xt, xss, xst, xtt = _np_derivatives(patch, s, t, cfg)
        raw = _raw_forms(xs, xt, xss, xst, xtt, patch.sig)
        if _degenerate(xs, xt, raw.det1, cfg.degeneracy_tol):
            raise DegenerateNormal(f"degenerate first form at ({s}, {t})")
        K, H = curvatures_numeric(raw)
    character = CausalCharacter.SPACELIKE if raw.det1 > 0 else CausalCharacter.TIMELIKE
    return FormSample(
        float(raw.E), float(raw.F), float(raw.G),
        float(raw.L), float(raw.M), float(raw.N),
        np.asarray(raw.gauss).astype(float),
        float(K), float(H), character,
    )


# -- grid scans ------------------------------------------------------------------------


def interior_grid(domain, ns: int, nt: int):
    """Cell-centred parameter grid, ``(ns, nt)`` arrays of s and t."""
    if ns < 2 or nt < 2:
        raise ValueError("grid dimensions must be >= 2")
    (s0, s1), (t0, t1) = domain
    s = s0 + (np.arange(ns) + 0.5) * (s1 - s0) / ns
    t = t0 + (np.arange(nt) + 0.5) * (t1 - t0) / nt
    return np.meshgrid(s, t, indexing="ij")


@dataclass
class ScanReport:
    """Aggregated oracle results over one grid; per-point arrays are NaN
    on excluded or failed points."""

    label: str
    grid: tuple[int, int]
    precision: int
    s: np.ndarray
    t: np.ndarray
    ok: np.ndarray
    excluded: np.ndarray
    failed: np.ndarray
    E: np.ndarray
    F: np.ndarray
    G: np.ndarray
    L: np.ndarray
    M: np.ndarray
    N: np.ndarray
    K: np.ndarray
    H: np.ndarray
    gauss: np.ndarray
    gauss_norm: np.ndarray
    region: np.ndarray
    K_closed: np.ndarray | None = None
    gauss_closed: np.ndarray | None = None

    @property
    def n_ok(self) -> int:
        return int(self.ok.sum())

    @property
    def det_first(self) -> np.ndarray:
        return self.E * self.G - self.F * self.F

    @property
    def det_positive(self) -> int:
        return int((self.det_first[self.ok] > 0).sum())

    @property
    def det_negative(self) -> int:
        return int((self.det_first[self.ok] < 0).sum())

    @property
    def det_sign_uniform(self) -> bool:
        return self.n_ok > 0 and (self.det_positive == 0 or self.det_negative == 0)

    @property
    def max_abs_H(self) -> float:
        return float(np.max(np.abs(self.H[self.ok]))) if self.n_ok else math.nan

    @property
    def epsilon(self) -> int:
        """Expected <e, e>: -1 for spacelike patches, +1 for timelike."""
        return -1 if self.det_positive >= self.det_negative else 1

    @property
    def max_gauss_norm_residual(self) -> float:
        return float(np.max(np.abs(self.gauss_norm[self.ok] - self.epsilon))) if self.n_ok else math.nan

    @property
    def max_K_rel_residual(self) -> float:
        if self.K_closed is None or not self.n_ok:
            return math.nan
        k = self.K_closed[self.ok]
        return float(np.max(np.abs(self.K[self.ok] - k) / np.abs(k)))

    def gauss_signs(self) -> np.ndarray:
        """Per-point sign relating the oracle normal to the closed-form one."""
        if self.gauss_closed is None:
            raise ValueError("no closed-form Gauss map attached")
        dots = np.einsum("...i,...i->...", self.gauss, self.gauss_closed)
        return np.where(self.ok, np.sign(dots), 0)

    def max_gauss_residual(self, sign: float | None = None) -> float:
        """Componentwise max |e_oracle - sign * e_closed| with one sign for
        the whole grid; ``sign=None`` resolves it at the first valid point."""
        if self.gauss_closed is None or not self.n_ok:
            return math.nan
        if sign is None:
            sign = self.gauss_signs()[self.ok][0]
        diff = self.gauss[self.ok] - sign * self.gauss_closed[self.ok]
        return float(np.max(np.abs(diff)))

    def region_signs(self) -> dict[int, tuple[int, ...]]:
        """Region label -> distinct signs relating oracle and closed normals."""
        signs = self.gauss_signs()
        return {
            int(k): tuple(int(v) for v in np.unique(signs[self.ok & (self.region == k)]))
            for k in np.unique(self.region[self.ok])
        }

    def max_gauss_residual_by_region(self) -> float:
        """As :meth:`max_gauss_residual`, resolving the sign once per region."""
        if self.gauss_closed is None or not self.n_ok:
            return math.nan
        signs = self.gauss_signs()
        worst = 0.0
        for k in np.unique(self.region[self.ok]):
            sel = self.ok & (self.region == k)
            sign = signs[sel][0]
            worst = max(worst, float(np.max(np.abs(self.gauss[sel] - sign * self.gauss_closed[sel]))))
        return worst

    def _neighbour_pairs(self, axis):
        n = self.ok.shape[axis]
        lo, hi = range(n - 1), range(1, n)
        both = np.take(self.ok, lo, axis=axis) & np.take(self.ok, hi, axis=axis)
        same = np.take(self.region, lo, axis=axis) == np.take(self.region, hi, axis=axis)
        return np.take(self.gauss, lo, axis=axis), np.take(self.gauss, hi, axis=axis), both & same

    def min_neighbour_dot(self) -> float:
        """Smallest Euclidean dot between normals of adjacent valid points
        in the same region (inf when there are no such pairs)."""
        best = math.inf
        for axis in (0, 1):
            a, b, sel = self._neighbour_pairs(axis)
            if sel.any():
                best = min(best, float(np.einsum("...i,...i->...", a, b)[sel].min()))
        return best


def scan(patch: SurfacePatch, grid: tuple[int, int] = (64, 64), cfg: OracleConfig = OracleConfig()) -> ScanReport:
    """Run the oracle over a cell-centred grid of the patch domain.

    Points inside the patch's excluded bands are skipped; points where the
    oracle fails (degenerate normal, stencil off the domain) are recorded
    as failed.  The result depends only on (patch, grid, cfg).
    """
    ns, nt = grid
    S, T = interior_grid(patch.domain, ns, nt)
    excluded = np.zeros(S.shape, dtype=bool) if patch.excluded is None else np.asarray(patch.excluded(S, T), dtype=bool)
    fields = {k: np.full(S.shape, np.nan) for k in "EFGLMNKH"}
    gauss = np.full(S.shape + (3,), np.nan)
    failed = np.zeros(S.shape, dtype=bool)

    if _extended(patch, cfg):
        for idx in zip(*np.nonzero(~excluded)):
            try:
                fs = fundamental_forms(patch, S[idx], T[idx], cfg)
            except (DegenerateNormal, DomainEdge):
                failed[idx] = True
                continue
            for k in "EFGLMNKH":
                fields[k][idx] = getattr(fs, k)
            gauss[idx] = fs.gauss
    else:
        # stencils that leave the domain fail point by point, not the batch
        failed = ~excluded & ~_stencil_fits(patch, S, T, _np_reach(S, T, cfg))
        sel = ~excluded & ~failed
        if sel.any():
            xs, xt, xss, xst, xtt = _np_derivatives(patch, S[sel], T[sel], cfg)
            with np.errstate(divide="ignore", invalid="ignore"):
                raw = _raw_forms(xs, xt, xss, xst, xtt, patch.sig)
                bad = _degenerate(xs, xt, raw.det1, cfg.degeneracy_tol) | ~np.isfinite(raw.det1)
                K, H = _array_curvatures(raw)
            vals = dict(E=raw.E, F=raw.F, G=raw.G, L=raw.L, M=raw.M, N=raw.N, K=K, H=H)
            for k, v in vals.items():
                fields[k][sel] = np.where(bad, np.nan, v)
            gauss[sel] = np.where(bad[:, None], np.nan, raw.gauss)
            failed[sel] = bad

    ok = ~excluded & ~failed
    region = np.zeros(S.shape, dtype=int) if patch.region is None else np.asarray(patch.region(S, T), dtype=int)
    region = np.where(ok, region, -1)
    gauss_norm = np.where(ok, inner(np.nan_to_num(gauss), np.nan_to_num(gauss), patch.sig), np.nan)
    report = ScanReport(
        label=patch.label,
        grid=(ns, nt),
        precision=cfg.precision if _extended(patch, cfg) else FLOAT_BITS,
        s=S,
        t=T,
        ok=ok,
        excluded=excluded,
        failed=failed,
        gauss=gauss,
        gauss_norm=gauss_norm,
        region=region,
        **fields,
    )
    with np.errstate(divide="ignore", invalid="ignore"):
        if patch.curvature is not None:
            report.K_closed = np.where(ok, patch.curvature(S, T), np.nan)
        if patch.normal is not None:
            report.gauss_closed = np.where(ok[..., None], patch.normal(S, T), np.nan)
    return report


def _array_curvatures(raw):
    det1 = raw.det1
    det2 = raw.L * raw.N - raw.M * raw.M
    trace = raw.E * raw.N - 2 * raw.F * raw.M + raw.G * raw.L
    eps = np.where(det1 > 0, -1.0, 1.0)
    return eps * det2 / det1, eps * trace / (2 * det1)
