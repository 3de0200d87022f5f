"""Closed-form geometry of the spacelike Bour family in (+,+,-) space.

All functions broadcast over numpy arrays of parameters.  The polar chart
``zeta = r exp(i theta)`` is used throughout; the Cartesian chart
``zeta = u + iv`` exists only for the value ``m = 3``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import pi
from typing import Callable

import numpy as np

from ._backend import NUMPY, exponent
from .errors import SingularPoint
from .weierstrass import b3_cartesian_xyz, check_exponent

SINGULAR_TOL = 1e-12


@dataclass(frozen=True)
class BourParams:
    """One catalogued surface: family value, catalogued domain and provenance.

    ``printed`` is the coordinate map exactly as typeset for the example,
    kept separately from the general family formula so the two can be
    compared.
    """

    label: str
    family: str  # "spacelike" or "timelike"
    m: Fraction
    r_range: tuple[float, float]
    theta_range: tuple[float, float]
    data: str
    figures: tuple[int, ...] = ()
    chart: str = "polar"
    title: str = ""
    printed: Callable | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        check_exponent(self.m)
        for lo, hi in (self.r_range, self.theta_range):
            if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
                raise ValueError(f"bad parameter range ({lo}, {hi}) for {self.label}")

    @property
    def m_text(self) -> str:
        return str(self.m)


def _r(r):
    return np.asarray(r, dtype=float)


def _pw(r, k):
    return NUMPY.pow(r, exponent(k))


def singular_mask(r, tol: float = SINGULAR_TOL):
    """True where the polar chart fails to immerse: r = 0 or |r| = 1."""
    r = _r(r)
    return (np.abs(r) <= tol) | (np.abs(np.abs(r) - 1) <= tol)


def first_form(m, r):
    """(E, F, G) in the polar chart.  Values on r in {0, +-1} are returned
    as computed (zero where finite); callers use :func:`singular_mask`."""
    m = check_exponent(m)
    r = _r(r)
    w = (1 - r * r) ** 2
    E = _pw(r, 2 * m - 4) * w
    G = _pw(r, 2 * m - 2) * w
    return E, np.zeros_like(E), G


def det_first(m, r):
    m = check_exponent(m)
    r = _r(r)
    return (_pw(r, 2 * m - 3) * (1 - r * r) ** 2) ** 2


def gauss_map(r, theta):
    """Unit timelike normal ``(2r cos, 2r sin, r^2 + 1) / (r^2 - 1)``."""
    r = _r(r)
    theta = np.asarray(theta, dtype=float)
    if np.any(np.abs(np.abs(r) - 1) <= SINGULAR_TOL):
        raise SingularPoint("Gauss map undefined on |r| = 1")
    r, theta = np.broadcast_arrays(r, theta)
    e = np.stack([2 * r * np.cos(theta), 2 * r * np.sin(theta), r * r + 1], axis=-1)
    return e / (r * r - 1)[..., None]


def second_form(m, r, theta):
    m = check_exponent(m)
    r = _r(r)
    theta = np.asarray(theta, dtype=float)
    mf = float(m)
    L = 2 * _pw(r, m - 2) * np.cos(mf * theta)
    M = -2 * _pw(r, m - 1) * np.sin(mf * theta)
    N = -2 * _pw(r, m) * np.cos(mf * theta)
    return L, M, N


def det_second(m, r):
    m = check_exponent(m)
    return -4 * _pw(_r(r), 2 * m - 2)


def _curvature_unchecked(m, r):
    r = _r(r)
    K = (2 * _pw(r, 2 - m) / (1 - r * r) ** 2) ** 2
    return K, np.zeros_like(K)


def curvatures(m, r):
    """(K, H) with ``K = (2 r^(2-m) / (1 - r^2)^2)^2`` and ``H = 0``."""
    m = check_exponent(m)
    if np.any(singular_mask(r)):
        raise SingularPoint("curvature undefined at r in {0, +-1}")
    return _curvature_unchecked(m, r)


# -- Cartesian chart of the value-3 surface ---------------------------------


def b3_cartesian_forms(u, v):
    """Closed forms in the chart ``zeta = u + iv`` (value 3).

    Returns a dict with E, F, G, L, M, N, gauss and K, where K is the
    intrinsic value ``4 / (rho (1 - rho)^4)`` with ``rho = u^2 + v^2``.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    rho = u * u + v * v
    E = rho * (rho - 1) ** 2
    e = np.stack([2 * u, 2 * v, rho + 1], axis=-1) / (rho - 1)[..., None]
    return {
        "E": E,
        "F": np.zeros_like(E),
        "G": E,
        "L": 2 * u,
        "M": -2 * v,
        "N": -2 * u,
        "gauss": e,
        "K": 4 / (rho * (1 - rho) ** 4),
    }


def b3_cartesian_curvature_printed(u, v):
    """The Cartesian curvature as typeset, ``4 / (rho (1 + rho)^4)``."""
    rho = np.asarray(u, dtype=float) ** 2 + np.asarray(v, dtype=float) ** 2
    return 4 / (rho * (1 + rho) ** 4)


# -- printed example maps -------------------------------------------------------


def _printed_b3(r, t, xp=NUMPY):
    h, q = xp.num(Fraction(1, 2)), xp.num(Fraction(1, 4))
    r2 = r * r
    return (
        h * r2 * xp.cos(2 * t) + q * r2 * r2 * xp.cos(4 * t),
        -h * r2 * xp.sin(2 * t) + q * r2 * r2 * xp.sin(4 * t),
        xp.num(Fraction(2, 3)) * r2 * r * xp.cos(3 * t),
    )


def _printed_b2(r, t, xp=NUMPY):
    third = xp.num(Fraction(1, 3))
    r3 = r * r * r
    return (
        r * xp.cos(t) + third * r3 * xp.cos(3 * t),
        -r * xp.sin(t) + third * r3 * xp.sin(3 * t),
        r * r * xp.cos(2 * t),
    )


def _printed_fractional(c_lo, p_lo, c_hi, p_hi, c_z, p_z, sign_lo_y):
    """Build a printed map of the shape shared by the fractional examples:

    x = c_lo r^p_lo cos(p_lo t) + c_hi r^p_hi cos(p_hi t)
    y = sign_lo_y c_lo r^p_lo sin(p_lo t) + c_hi r^p_hi sin(p_hi t)
    z = c_z r^p_z cos(p_z t)

    Angles carry |exponent| as typeset.
    """

    def f(r, t, xp=NUMPY):
        lo = xp.num(c_lo) * xp.pow(r, p_lo)
        hi = xp.num(c_hi) * xp.pow(r, p_hi)
        a_lo, a_hi, a_z = (xp.num(abs(k)) * t for k in (p_lo, p_hi, p_z))
        return (
            lo * xp.cos(a_lo) + hi * xp.cos(a_hi),
            sign_lo_y * lo * xp.sin(a_lo) + hi * xp.sin(a_hi),
            xp.num(c_z) * xp.pow(r, p_z) * xp.cos(a_z),
        )

    return f


Q = Fraction
# B_1/2:  -2 r^-1/2 cos(t/2) + 2/3 r^3/2 cos(3t/2) ; -2 r^-1/2 sin(t/2) + ... ; 4 r^1/2 cos(t/2)
_printed_b_half = _printed_fractional(Q(-2), Q(-1, 2), Q(2, 3), Q(3, 2), Q(4), Q(1, 2), +1)
# B_3/2 as typeset: 2 r^-1/2 cos(t/2) + 2/5 r^5/2 cos(5t/2) ; -2 r^-1/2 sin(t/2) + ... ; 4/3 r^3/2 cos(3t/2)
_printed_b_three_halves = _printed_fractional(Q(2), Q(-1, 2), Q(2, 5), Q(5, 2), Q(4, 3), Q(3, 2), -1)
# B_2/3: -3 r^-1/3 cos(t/3) + 3/5 r^5/3 cos(5t/3) ; -3 r^-1/3 sin(t/3) + ... ; 3 r^2/3 cos(2t/3)
_printed_b_two_thirds = _printed_fractional(Q(-3), Q(-1, 3), Q(3, 5), Q(5, 3), Q(3), Q(2, 3), +1)
# B_4/3: 3 r^1/3 cos(t/3) + 3/7 r^7/3 cos(7t/3) ; -3 r^1/3 sin(t/3) + ... ; 3/2 r^4/3 cos(4t/3)
_printed_b_four_thirds = _printed_fractional(Q(3), Q(1, 3), Q(3, 7), Q(7, 3), Q(3, 2), Q(4, 3), -1)
# B_5/2: 2/3 r^3/2 cos(3t/2) + 2/7 r^7/2 cos(7t/2) ; -2/3 ... ; 4/5 r^5/2 cos(5t/2)
_printed_b_five_halves = _printed_fractional(Q(2, 3), Q(3, 2), Q(2, 7), Q(7, 2), Q(4, 5), Q(5, 2), -1)
# B_4: 1/3 r^3 cos 3t + 1/5 r^5 cos 5t ; -1/3 ... ; 1/2 r^4 cos 4t
_printed_b4 = _printed_fractional(Q(1, 3), 3, Q(1, 5), 5, Q(1, 2), 4, -1)


def _printed_b3_uv(u, v, xp=NUMPY):
    return b3_cartesian_xyz(u, v, xp)


def catalog() -> list[BourParams]:
    """The eleven spacelike surfaces with their plotted domains."""
    S = "spacelike"
    return [
        BourParams("B_3", S, Q(3), (-1, 1), (0, pi), "(ζ, ζ)", (1, 2),
                   title="Bour's maximal surface", printed=_printed_b3),
        BourParams("B_3(u,v)", S, Q(3), (-1, 1), (-1, 1), "(ζ, ζ)", (3, 4), chart="cartesian",
                   title="Bour's maximal surface, chart ζ = u + iv", printed=_printed_b3_uv),
        BourParams("Enneper", S, Q(2), (-1, 1), (0, pi), "(1, ζ)", (5,),
                   title="Enneper's maximal surface without self-intersections", printed=_printed_b2),
        BourParams("Enneper-wide", S, Q(2), (-3, 3), (0, pi), "(1, ζ)", (6,),
                   title="Enneper's maximal surface with self-intersections", printed=_printed_b2),
        BourParams("B_1/2", S, Q(1, 2), (-1, 1), (-2 * pi, 2 * pi), "(ζ^{−3/2}, ζ)", (7,),
                   title="maximal surface B_1/2", printed=_printed_b_half),
        BourParams("B_3/2-wide", S, Q(3, 2), (-3, 3), (-2 * pi, 2 * pi), "(ζ^{−1/2}, ζ)", (8,),
                   title="maximal surface B_3/2 with self-intersections",
                   printed=_printed_b_three_halves),
        BourParams("B_3/2", S, Q(3, 2), (-1, 1), (-2 * pi, 2 * pi), "(ζ^{−1/2}, ζ)", (9,),
                   title="maximal surface B_3/2 without self-intersections",
                   printed=_printed_b_three_halves),
        BourParams("B_2/3", S, Q(2, 3), (-1, 1), (-3 * pi, 3 * pi), "(ζ^{−4/3}, ζ)", (10,),
                   title="maximal surface B_2/3", printed=_printed_b_two_thirds),
        BourParams("B_4/3", S, Q(4, 3), (-2, 2), (-3 * pi, 3 * pi), "(ζ^{−2/3}, ζ)", (11,),
                   title="maximal surface B_4/3", printed=_printed_b_four_thirds),
        BourParams("B_5/2", S, Q(5, 2), (-1, 1), (-2 * pi, 2 * pi), "(ζ^{1/2}, ζ)", (12,),
                   title="maximal surface B_5/2", printed=_printed_b_five_halves),
        BourParams("B_4", S, Q(4), (-1, 1), (0, 2 * pi), "(ζ^2, ζ)", (13,),
                   title="maximal surface B_4", printed=_printed_b4),
    ]
