"""The full surface catalog and its bridges to the oracle and the sampler.

Seventeen entries: eleven spacelike (``maximal.catalog``) and six timelike
(``timelike.timelike_catalog``).  Each entry yields

* a realizable sampling domain (fractional values are clipped to r > 0),
* a :class:`~bour.diffgeo.SurfacePatch` for verification, carrying the
  singular bands to skip and the closed-form K and Gauss map to compare.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import pi

import numpy as np

from . import maximal, timelike
from ._backend import exponent, is_integral
from .diffgeo import SurfacePatch
from .errors import EmptyRealizableDomain
from .lorentz import Signature
from .maximal import BourParams
from .weierstrass import b3_cartesian, b3_cartesian_xyz, bour_closed_form, bour_xyz, check_exponent

SPACELIKE = "spacelike"
TIMELIKE = "timelike"
FAMILIES = (SPACELIKE, TIMELIKE)

# radius of the verification bands around r in {0, +-1} (spacelike)
SPACELIKE_BAND = 0.05
# the null-chart rendering of the value-3 timelike surface
NULL_CHART_FIGURE = 15
NULL_CHART_DOMAIN = ((-1.0, 1.0), (-1.0, 1.0))


def entries() -> list[BourParams]:
    return maximal.catalog() + timelike.timelike_catalog()


def lookup(label: str) -> BourParams:
    for e in entries():
        if e.label == label:
            return e
    raise KeyError(f"no catalog entry labelled {label!r}")


def find(family: str, m, cartesian: bool = False) -> BourParams:
    """Catalog entry for (family, m); values outside the catalog get an
    ad hoc entry on r in [-1, 1], theta in [0, 2 pi]."""
    if family not in FAMILIES:
        raise ValueError(f"family must be one of {FAMILIES}, got {family!r}")
    m = Fraction(check_exponent(m))
    for e in entries():
        if e.family != family or e.m != m:
            continue
        if cartesian and family == SPACELIKE and e.chart != "cartesian":
            continue
        if not cartesian and e.chart == "cartesian":
            continue
        return e
    if cartesian:
        raise ValueError("the Cartesian chart exists only for m = 3")
    return BourParams(f"{'B' if family == SPACELIKE else 'tB'}_{m}", family, m, (-1, 1), (0, 2 * pi),
                      _data_text(family, m), title="uncatalogued value")


def _power_text(var, p):
    if p == 0:
        return "1"
    if p == 1:
        return var
    text = f"{var}^{p}" if is_integral(p) and p > 0 else f"{var}^{{{p}}}"
    return text.replace("-", "−")  # typographic minus, as in the catalog data


def _data_text(family, m):
    p = m - 2
    if family == SPACELIKE:
        return f"({_power_text('ζ', p)}, ζ)"
    return f"({_power_text('u', p)}, u), ({_power_text('v', p)}, v)"


def figures() -> dict[int, tuple[BourParams, bool]]:
    """Figure number -> (entry, null/Cartesian chart flag)."""
    out = {}
    for e in entries():
        for n in e.figures:
            out[n] = (e, e.chart == "cartesian" or n == NULL_CHART_FIGURE)
    return dict(sorted(out.items()))


def figure(n: int) -> tuple[BourParams, bool]:
    table = figures()
    if n not in table:
        raise KeyError(f"no figure {n}; known figures are 1-{max(table)}")
    return table[n]


# -- realizable domains --------------------------------------------------------------------


@dataclass(frozen=True)
class SamplingDomain:
    s_range: tuple[float, float]
    t_range: tuple[float, float]
    clipped: bool
    note: str = ""
    open_left: bool = False  # s_range[0] itself is not realizable


def sampling_domain(entry: BourParams, cartesian: bool = False) -> SamplingDomain:
    """Parameter box actually sampled for ``entry``.

    Integral values use the printed box verbatim.  Fractional values need
    real powers: spacelike radii are clipped to (0, r_max], timelike
    parameters to the open positive quadrant of the null coordinates.
    """
    if entry.chart == "cartesian":
        return SamplingDomain(entry.r_range, entry.theta_range, False)
    if cartesian:
        return SamplingDomain(*NULL_CHART_DOMAIN, False)
    if is_integral(entry.m):
        return SamplingDomain(entry.r_range, entry.theta_range, False)
    r0, r1 = entry.r_range
    if r1 <= 0:
        raise EmptyRealizableDomain(f"{entry.label}: no r > 0 in [{r0}, {r1}] for fractional m = {entry.m}")
    s_range = (max(r0, 0.0), r1)
    t_range = entry.theta_range
    note = f"r clipped to ({s_range[0]:g}, {r1:g}] for fractional m"
    if entry.family == TIMELIKE:
        t0, t1 = max(t_range[0], 0.0), min(t_range[1], pi / 2)
        if t0 >= t1:
            raise EmptyRealizableDomain(f"{entry.label}: theta range misses (0, pi/2)")
        t_range = (t0, t1)
        note += ", theta clipped to the first quadrant"
    return SamplingDomain(s_range, t_range, True, note, open_left=s_range[0] == 0)


# -- surface evaluators --------------------------------------------------------------------


def evaluator(entry: BourParams, cartesian: bool = False):
    """``f(s, t, xp) -> (x, y, z)`` for the entry's chart."""
    m = exponent(entry.m)
    if entry.family == SPACELIKE:
        if entry.chart == "cartesian":
            return lambda s, t, xp: b3_cartesian_xyz(s, t, xp)
        return lambda s, t, xp: bour_xyz(m, s, t, xp)
    if cartesian:
        return lambda s, t, xp: timelike.magid_xyz(m, m, s, t, xp)
    return lambda s, t, xp: timelike.polar_xyz(m, s, t, xp)


def singular_mask(entry: BourParams, s, t, cartesian: bool = False, verification: bool = False):
    """Cells to flag.  ``verification=True`` widens to the scan bands."""
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    if entry.family == SPACELIKE:
        r = np.hypot(s, t) if entry.chart == "cartesian" else s
        if verification:
            return (np.abs(r) < SPACELIKE_BAND) | (np.abs(np.abs(r) - 1) < SPACELIKE_BAND)
        return maximal.singular_mask(r)
    if cartesian:
        band = timelike.SC_BAND if verification else timelike.SINGULAR_TOL
        return timelike.null_singular_mask(s, t, band)
    if verification:
        return timelike.timelike_singular_mask(s, t, timelike.SC_BAND, timelike.CONFORMAL_BAND)
    return timelike.timelike_singular_mask(s, t)


def closed_curvature(entry: BourParams, cartesian: bool = False):
    """``K(s, t)`` in closed form (the convention-consistent value)."""
    m = exponent(entry.m)
    if entry.family == SPACELIKE:
        if entry.chart == "cartesian":
            return lambda s, t: maximal.b3_cartesian_forms(s, t)["K"]
        return lambda s, t: np.broadcast_arrays(maximal._curvature_unchecked(m, s)[0], t)[0]
    if cartesian:
        return lambda s, t: timelike.null_forms(m, s, t)["K"]

    def k(s, t):
        _, r, c, sn = timelike._polar(m, s, t)
        sc = sn * c
        return -timelike._pw(sc, 2 - m) * timelike._pw(r, 4 - 2 * m) / (1 + r * r * sc) ** 4

    return k


def closed_normal(entry: BourParams, cartesian: bool = False):
    if entry.family == SPACELIKE:
        if entry.chart == "cartesian":
            return lambda s, t: maximal.b3_cartesian_forms(s, t)["gauss"]
        return maximal.gauss_map
    if cartesian:
        return lambda s, t: timelike.null_forms(exponent(entry.m), s, t)["gauss"]
    return timelike.timelike_gauss_map


def singular_loci(entry: BourParams, cartesian: bool = False) -> tuple[str, ...]:
    if entry.family == SPACELIKE:
        if entry.chart == "cartesian":
            return ("u^2 + v^2 = 0", "u^2 + v^2 = 1")
        return ("r = 0", "r = ±1")
    if cartesian:
        return ("u v = 0", "1 + u v = 0")
    return ("r = 0", "θ ∈ πℤ/2", "1 + r^2 sinθ cosθ = 0")


def _code(*flags):
    out = 0
    for f in flags:
        out = 2 * out + np.asarray(f, dtype=int)
    return out


def region_labels(entry: BourParams, s, t, cartesian: bool = False):
    """Integer label of the regular piece containing each (s, t).

    Pieces are cut by the singular loci, so two grid neighbours with the
    same label are joined by a segment on which the surface is immersed.
    """
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    if entry.family == SPACELIKE:
        if entry.chart == "cartesian":
            return _code(np.hypot(s, t) > 1)
        return _code(s > 0, np.abs(s) > 1)
    if cartesian:
        return _code(s > 0, t > 0, 1 + s * t > 0)
    quadrant = np.floor(t / (pi / 2)).astype(int)
    return 8 * quadrant + _code(s > 0, 1 + s * s * np.sin(t) * np.cos(t) > 0)


def patch(entry: BourParams, cartesian: bool = False) -> SurfacePatch:
    """Verification patch over the entry's realizable domain."""
    dom = sampling_domain(entry, cartesian)
    cart = cartesian and entry.family == TIMELIKE

    def excluded(s, t):
        return singular_mask(entry, s, t, cart, verification=True)

    return SurfacePatch(
        func=evaluator(entry, cart),
        domain=(dom.s_range, dom.t_range),
        sig=Signature.PPM if entry.family == SPACELIKE else Signature.MPP,
        singular_loci=singular_loci(entry, cart),
        excluded=excluded,
        label=entry.label + (" (null chart)" if cart else ""),
        curvature=closed_curvature(entry, cart),
        normal=closed_normal(entry, cart),
        region=lambda s, t: region_labels(entry, s, t, cart),
    )


def conjugate_patch(entry: BourParams | None = None, cartesian: bool = False) -> SurfacePatch:
    """The conjugate ``Omega(u) - Psi(v)`` of a timelike entry (default: value 3)."""
    entry = entry or lookup("tB_3")
    if entry.family != TIMELIKE:
        raise ValueError("conjugate surfaces exist only for the timelike family")
    m = exponent(entry.m)
    dom = sampling_domain(entry, cartesian)
    if cartesian:
        func = lambda s, t, xp: timelike.magid_xyz(m, m, s, t, xp, sign=-1)  # noqa: E731
    else:
        func = lambda s, t, xp: timelike.polar_xyz(m, s, t, xp, sign=-1)  # noqa: E731

    def excluded(s, t):
        return singular_mask(entry, s, t, cartesian, verification=True)

    return SurfacePatch(
        func=func,
        domain=(dom.s_range, dom.t_range),
        sig=Signature.MPP,
        singular_loci=singular_loci(entry, cartesian),
        excluded=excluded,
        label=entry.label + " conjugate",
        region=lambda s, t: region_labels(entry, s, t, cartesian),
    )


def closed_forms(entry: BourParams, s: float, t: float, cartesian: bool = False) -> dict:
    """Position, E, F, G, L, M, N, Gauss map, K and H in closed form.

    Undefined quantities at singular points come back as NaN and the
    ``singular`` key is set; domain violations raise (BranchDomain).
    """
    m = exponent(entry.m)
    cart = cartesian and entry.family == TIMELIKE
    s, t = float(s), float(t)
    out = {"singular": bool(singular_mask(entry, s, t, cart))}
    with np.errstate(divide="ignore", invalid="ignore"):
        if entry.family == SPACELIKE and entry.chart == "cartesian":
            out["position"] = b3_cartesian(s, t)
            f = maximal.b3_cartesian_forms(s, t)
            out.update({k: float(f[k]) for k in "EFGLMN"})
            out["gauss"], out["K"] = f["gauss"], float(f["K"])
        elif entry.family == SPACELIKE:
            out["position"] = bour_closed_form(m, s, t)
            E, F, G = maximal.first_form(m, s)
            L, M, N = maximal.second_form(m, s, t)
            out.update(E=float(E), F=float(F), G=float(G), L=float(L), M=float(M), N=float(N))
            out["gauss"] = np.full(3, np.nan) if out["singular"] else maximal.gauss_map(s, t)
            out["K"] = float(maximal._curvature_unchecked(m, s)[0])
        elif cart:
            nd = timelike.NullData.bour(m)
            out["position"] = timelike.magid_immersion(nd, s, t)
            f = timelike.null_forms(m, s, t)
            out.update({k: float(f[k]) for k in "EFGLMN"})
            out["gauss"], out["K"] = f["gauss"], float(f["K"])
        else:
            nd = timelike.NullData.bour(m)
            out["position"] = timelike.magid_immersion(nd, s * np.cos(t), s * np.sin(t))
            E, F, G = timelike.timelike_first_form(m, s, t)
            L, M, N = timelike.timelike_second_form(m, s, t)
            out.update(E=float(E), F=float(F), G=float(G), L=float(L), M=float(M), N=float(N))
            out["gauss"] = np.full(3, np.nan) if out["singular"] else timelike.timelike_gauss_map(s, t)
            out["K"] = float(closed_curvature(entry)(s, t))
            sc = np.sin(t) * np.cos(t)
            out["K_printed"] = float(timelike._pw(sc, 2 - m) * (timelike._pw(s, 2 - m) / (1 + s * s * sc) ** 2) ** 2)
    out["H"] = 0.0
    if out["singular"]:
        for key in ("K", "H", "K_printed"):
            if key in out:
                out[key] = np.nan
    out["gauss"] = np.asarray(out["gauss"], dtype=float)
    out["position"] = np.asarray(out["position"], dtype=float)
    return out
