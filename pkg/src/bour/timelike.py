"""Timelike minimal Bour surfaces in (-,+,+) space.

The surface is the sum of two null curves, ``x(u, v) = Omega(u) + Psi(v)``,
obtained by integrating the monomial data ``f(u) = u**(m-2), g(u) = u`` and
``frak_f(v) = v**(m-2), frak_g(v) = v``.  The polar chart substitutes
``u = r cos(theta)``, ``v = r sin(theta)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import pi

import numpy as np

from ._backend import NUMPY, exponent, is_integral
from .errors import BranchDomain, SingularPoint
from .lorentz import Signature, inner
from .maximal import BourParams
from .weierstrass import bour_coefficients, check_exponent

SIG = Signature.MPP
SINGULAR_TOL = 1e-12
# bands excluded from verification grids
SC_BAND = 1e-3
CONFORMAL_BAND = 1e-3


@dataclass(frozen=True)
class NullData:
    """Exponents of ``f(u) = u**f_exp`` and ``frak_f(v) = v**frak_f_exp``;
    both ``g`` and ``frak_g`` are the identity."""

    f_exp: Fraction
    frak_f_exp: Fraction

    def __post_init__(self):
        object.__setattr__(self, "f_exp", Fraction(exponent(self.f_exp)))
        object.__setattr__(self, "frak_f_exp", Fraction(exponent(self.frak_f_exp)))
        check_exponent(self.f_exp + 2)
        check_exponent(self.frak_f_exp + 2)

    @classmethod
    def bour(cls, m) -> "NullData":
        p = Fraction(exponent(m)) - 2
        return cls(p, p)

    @property
    def is_bour(self) -> bool:
        return self.f_exp == self.frak_f_exp

    @property
    def m(self) -> Fraction:
        if not self.is_bour:
            raise ValueError("asymmetric null data has no single family value")
        return self.f_exp + 2


def _check_real(m, *values):
    if is_integral(m):
        return
    for w in values:
        if np.any(np.asarray(w) < 0):
            raise BranchDomain(f"fractional m = {m} needs non-negative null coordinates")


def omega_xyz(m, u, xp=NUMPY):
    """The null curve integrating ``(-f(1+g^2), f(1-g^2), 2fg)`` in ``u``."""
    a, c, d, e = bour_coefficients(m)
    lo = xp.pow(u, a)
    mid = lo * u
    hi = mid * u
    c, d, e = xp.num(c), xp.num(d), xp.num(e)
    return (-c * lo - d * hi, c * lo - d * hi, e * mid)


def psi_xyz(m, v, xp=NUMPY):
    """The null curve integrating ``(f(1+g^2), f(1-g^2), 2fg)`` in ``v``."""
    a, c, d, e = bour_coefficients(m)
    lo = xp.pow(v, a)
    mid = lo * v
    hi = mid * v
    c, d, e = xp.num(c), xp.num(d), xp.num(e)
    return (c * lo + d * hi, c * lo - d * hi, e * mid)


def magid_xyz(m_u, m_v, u, v, xp=NUMPY, sign=1):
    o = omega_xyz(m_u, u, xp)
    p = psi_xyz(m_v, v, xp)
    if sign > 0:
        return tuple(a + b for a, b in zip(o, p))
    return tuple(a - b for a, b in zip(o, p))


def polar_xyz(m, r, theta, xp=NUMPY, sign=1):
    return magid_xyz(m, m, r * xp.cos(theta), r * xp.sin(theta), xp, sign)


def _legs(data: NullData, u, v):
    m_u, m_v = data.f_exp + 2, data.frak_f_exp + 2
    _check_real(m_u, u)
    _check_real(m_v, v)
    return m_u, m_v, np.asarray(u, dtype=float), np.asarray(v, dtype=float)


def omega(data: NullData, u) -> np.ndarray:
    m_u = data.f_exp + 2
    _check_real(m_u, u)
    return np.stack(omega_xyz(m_u, np.asarray(u, dtype=float)), axis=-1)


def psi(data: NullData, v) -> np.ndarray:
    m_v = data.frak_f_exp + 2
    _check_real(m_v, v)
    return np.stack(psi_xyz(m_v, np.asarray(v, dtype=float)), axis=-1)


def magid_immersion(data: NullData, u, v) -> np.ndarray:
    """``Omega(u) + Psi(v)``, the timelike minimal surface."""
    m_u, m_v, u, v = _legs(data, u, v)
    return np.stack(magid_xyz(m_u, m_v, u, v), axis=-1)


def conjugate_immersion(data: NullData, u, v) -> np.ndarray:
    """``Omega(u) - Psi(v)``."""
    m_u, m_v, u, v = _legs(data, u, v)
    return np.stack(magid_xyz(m_u, m_v, u, v, sign=-1), axis=-1)


def phi(data: NullData, u) -> np.ndarray:
    """Velocity of the u-leg, ``(-f(1+g^2), f(1-g^2), 2fg)``."""
    _check_real(data.f_exp + 2, u)
    u = np.asarray(u, dtype=float)
    f = NUMPY.pow(u, exponent(data.f_exp))
    return np.stack([-f * (1 + u * u), f * (1 - u * u), 2 * f * u], axis=-1)


def mu(data: NullData, v) -> np.ndarray:
    """Velocity of the v-leg, ``(f(1+g^2), f(1-g^2), 2fg)``."""
    _check_real(data.frak_f_exp + 2, v)
    v = np.asarray(v, dtype=float)
    f = NUMPY.pow(v, exponent(data.frak_f_exp))
    return np.stack([f * (1 + v * v), f * (1 - v * v), 2 * f * v], axis=-1)


def null_residual(data: NullData, u):
    """<phi(u), phi(u)> under (-,+,+); identically zero."""
    return inner(phi(data, u), phi(data, u), SIG)


def null_residual_v(data: NullData, v):
    return inner(mu(data, v), mu(data, v), SIG)


# -- closed-form geometry in the polar chart --------------------------------------


def _polar(m, r, theta):
    m = check_exponent(m)
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    c, s = np.cos(theta), np.sin(theta)
    if not is_integral(m) and (np.any(r * c < 0) or np.any(r * s < 0)):
        raise BranchDomain(f"fractional m = {m} needs r cos(theta) >= 0 and r sin(theta) >= 0")
    return m, r, c, s


def _pw(x, k):
    return NUMPY.pow(x, exponent(k))


def timelike_singular_mask(r, theta, band_sc=SINGULAR_TOL, band_conf=SINGULAR_TOL):
    """True on the axes, at the origin and where ``1 + r^2 sin cos = 0``.

    With the default tolerances this is the exact singular set; verification
    grids pass the wider ``SC_BAND`` / ``CONFORMAL_BAND``.
    """
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    sc = np.sin(theta) * np.cos(theta)
    return (np.abs(r) <= SINGULAR_TOL) | (np.abs(sc) < band_sc) | (np.abs(1 + r * r * sc) < band_conf)


def timelike_first_form(m, r, theta):
    m, r, c, s = _polar(m, r, theta)
    sc = s * c
    w = (1 + r * r * sc) ** 2
    E = 4 * _pw(r, 2 * m - 4) * _pw(sc, m - 1) * w
    F = 2 * _pw(r, 2 * m - 3) * _pw(sc, m - 2) * w * np.cos(2 * np.asarray(theta, dtype=float))
    G = -4 * _pw(r, 2 * m - 2) * _pw(sc, m - 1) * w
    return E, F, G


def timelike_det_first(m, r, theta):
    m, r, c, s = _polar(m, r, theta)
    sc = s * c
    return -((2 * _pw(r, 2 * m - 3) * _pw(sc, m - 2) * (1 + r * r * sc) ** 2) ** 2)


def timelike_gauss_map(r, theta):
    """Unit spacelike normal ``(r(c - s), r(c + s), r^2 sc - 1) / (1 + r^2 sc)``."""
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    c, s = np.cos(theta), np.sin(theta)
    den = 1 + r * r * s * c
    if np.any(np.abs(den) <= SINGULAR_TOL):
        raise SingularPoint("Gauss map undefined where 1 + r^2 sin cos = 0")
    r, c, s, den = np.broadcast_arrays(r, c, s, den)
    e = np.stack([r * (c - s), r * (c + s), r * r * s * c - 1], axis=-1)
    return e / den[..., None]


def timelike_second_form(m, r, theta):
    m, r, c, s = _polar(m, r, theta)
    L = -2 * _pw(r, m - 2) * (_pw(s, m) + _pw(c, m))
    M = 2 * _pw(r, m - 1) * (s * _pw(c, m - 1) - c * _pw(s, m - 1))
    N = -2 * _pw(r, m) * (s * s * _pw(c, m - 2) + c * c * _pw(s, m - 2))
    return L, M, N


def timelike_det_second(m, r, theta, printed: bool = False):
    """``LN - M^2`` of the second form above, ``+4 r^(2m-2) (sc)^(m-2)``.

    ``printed=True`` returns the typeset value, which carries the opposite
    sign and does not equal ``LN - M^2``.
    """
    m, r, c, s = _polar(m, r, theta)
    val = 4 * _pw(r, 2 * m - 2) * _pw(s * c, m - 2)
    return -val if printed else val


def timelike_curvatures(m, r, theta, printed: bool = False):
    """(K, H) with ``K = det II / det I`` and ``H = 0``.

    ``K = -(sc)^(2-m) r^(4-2m) / (1 + r^2 sc)^4``.  With ``printed=True`` the
    typeset polar value ``(sc)^(2-m) (r^(2-m) / (1 + r^2 sc)^2)^2`` is
    returned instead; the two differ by sign.
    """
    m, r, c, s = _polar(m, r, theta)
    if np.any(timelike_singular_mask(r, theta)):
        raise SingularPoint("curvature undefined on the singular set")
    sc = s * c
    K = _pw(sc, 2 - m) * (_pw(r, 2 - m) / (1 + r * r * sc) ** 2) ** 2
    if not printed:
        K = -K
    return K, np.zeros_like(K)


# -- null (Cartesian) chart ----------------------------------------------------------


def null_forms(m, u, v):
    """Closed forms in the null chart: E = G = 0, F = 2(uv)^(m-2)(1+uv)^2."""
    m = check_exponent(m)
    _check_real(m, u, v)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    uv = u * v
    F = 2 * _pw(uv, m - 2) * (1 + uv) ** 2
    e = np.stack([u - v, u + v, uv - 1], axis=-1) / (1 + uv)[..., None]
    L = -2 * _pw(u, m - 2)
    N = -2 * _pw(v, m - 2)
    return {
        "E": np.zeros_like(F),
        "F": F,
        "G": np.zeros_like(F),
        "L": L,
        "M": np.zeros_like(F),
        "N": N,
        "gauss": e,
        "K": -_pw(uv, 2 - m) / (1 + uv) ** 4,
    }


def null_singular_mask(u, v, band=SINGULAR_TOL):
    uv = np.asarray(u, dtype=float) * np.asarray(v, dtype=float)
    return (np.abs(uv) < band) | (np.abs(1 + uv) < band)


# -- printed example maps -------------------------------------------------------------


def _printed_t3(r, t, xp=NUMPY):
    c, s = xp.cos(t), xp.sin(t)
    r2 = r * r
    h, q = xp.num(Fraction(1, 2)), xp.num(Fraction(1, 4))
    return (
        (-h * r2 - q * r2 * r2) * xp.cos(2 * t),
        h * r2 - q * r2 * r2 * (c**4 + s**4),
        xp.num(Fraction(2, 3)) * r2 * r * (c**3 + s**3),
    )


def _printed_power_pair(k_lo, k_hi, z_coeff, k_z):
    """Printed maps of the form used by the integral-m examples:

    x = -r^a/a (c^a - s^a) - r^b/b (c^b - s^b)
    y =  r^a/a (c^a + s^a) - r^b/b (c^b + s^b)
    z = z_coeff r^k_z (c^k_z + s^k_z)   (or z_coeff r^k_z when k_z == 0)
    """

    def f(r, t, xp=NUMPY):
        c, s = xp.cos(t), xp.sin(t)
        ia, ib = xp.num(Fraction(1, k_lo)), xp.num(Fraction(1, k_hi))
        ra, rb = r**k_lo, r**k_hi
        x = -ia * ra * (c**k_lo - s**k_lo) - ib * rb * (c**k_hi - s**k_hi)
        y = ia * ra * (c**k_lo + s**k_lo) - ib * rb * (c**k_hi + s**k_hi)
        z = xp.num(z_coeff) * r**k_z * (c**k_z + s**k_z) if k_z else xp.num(z_coeff) * r * r
        return x, y, z

    return f


_printed_t2 = _printed_power_pair(1, 3, 1, 0)  # z = r^2
_printed_t4 = _printed_power_pair(3, 5, Fraction(1, 4), 4)
_printed_t5 = _printed_power_pair(4, 6, Fraction(1, 5), 5)


def _printed_t3_null(u, v, xp=NUMPY):
    h, q = xp.num(Fraction(1, 2)), xp.num(Fraction(1, 4))
    u2, v2 = u * u, v * v
    return (
        -h * (u2 - v2) - q * (u2 * u2 - v2 * v2),
        h * (u2 + v2) - q * (u2 * u2 + v2 * v2),
        xp.num(Fraction(2, 3)) * (u2 * u + v2 * v),
    )


PRINTED_NULL_CHART = _printed_t3_null


def timelike_catalog() -> list[BourParams]:
    """The six timelike surfaces with their plotted domains.

    The value-3 entry also carries figure 15, its null-chart rendering on
    ``u, v in [-1, 1]``.
    """
    T = "timelike"
    Q = Fraction
    return [
        BourParams("tB_3", T, Q(3), (-1, 1), (0, pi), "(u, u), (v, v)", (14, 15),
                   title="Bour's timelike minimal surface", printed=_printed_t3),
        BourParams("tB_2", T, Q(2), (-2, 2), (-pi / 2, pi / 2), "(1, u), (1, v)", (16,),
                   title="timelike minimal surface B_2", printed=_printed_t2),
        BourParams("tB_2-wide", T, Q(2), (-3, 3), (-pi / 2, pi / 2), "(1, u), (1, v)", (17,),
                   title="timelike minimal surface B_2", printed=_printed_t2),
        BourParams("tB_4", T, Q(4), (-1, 1), (0, pi), "(u^2, u), (v^2, v)", (18,),
                   title="timelike minimal surface B_4", printed=_printed_t4),
        BourParams("tB_4-quadrant", T, Q(4), (-2, 2), (0, pi / 2), "(u^2, u), (v^2, v)", (19,),
                   title="timelike minimal surface B_4", printed=_printed_t4),
        BourParams("tB_5", T, Q(5), (-0.003, 0.003), (0, pi), "(u^3, u), (v^3, v)", (20,),
                   title="timelike minimal surface B_5", printed=_printed_t5),
    ]
