"""Spacelike maximal surfaces from holomorphic Weierstrass data.

The monomial data ``F(zeta) = C * zeta**p``, ``G(zeta) = zeta`` generate the
Bour family of value ``m = p + 2``.  Complex powers are always taken in polar
form, ``r**p * exp(i p theta)``, with ``theta`` a winding parameter, so
fractional exponents follow the angle continuously instead of jumping at a
branch cut.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._backend import NUMPY, exponent, is_integral
from .errors import BranchDomain, ExcludedExponent, PathThroughSingularity

EXCLUDED_M = (-1, 0, 1)
GL_NODES = 8
ORIGIN_TOL = 1e-12


@dataclass(frozen=True)
class WeierstrassData:
    """``F(zeta) = coeff * zeta**exponent`` paired with ``G(zeta) = zeta``."""

    exponent: Fraction
    coeff: complex = 1.0

    def __post_init__(self):
        if self.coeff == 0:
            raise ValueError("F must not vanish identically (coeff == 0)")
        object.__setattr__(self, "exponent", Fraction(exponent(self.exponent)))

    @classmethod
    def bour(cls, m) -> "WeierstrassData":
        return cls(Fraction(exponent(m)) - 2)

    @property
    def m(self) -> Fraction:
        return self.exponent + 2


@dataclass(frozen=True)
class ComplexParam:
    """Polar point ``zeta = r * exp(i theta)`` with ``r >= 0``."""

    r: float
    theta: float

    def __post_init__(self):
        if not self.r >= 0:
            raise ValueError(f"polar radius must be >= 0, got {self.r}")

    @property
    def zeta(self) -> complex:
        return self.r * np.exp(1j * self.theta)


def check_exponent(m):
    """Reject the excluded family values and return ``m`` normalized."""
    q = exponent(m)
    if q in EXCLUDED_M:
        raise ExcludedExponent(f"m = {q} is excluded (logarithmic antiderivative)")
    return q


def _polar_power(r, theta, p):
    return np.power(r, float(p)) * np.exp(1j * float(p) * theta)


def _weierstrass_vector(data: WeierstrassData, r, theta):
    """The integrand at polar points; arrays broadcast."""
    f = data.coeff * _polar_power(r, theta, data.exponent)
    g = r * np.exp(1j * theta)
    return np.stack([f * (1 + g * g), 1j * f * (1 - g * g), 2 * f * g], axis=-1)


def integrand(data: WeierstrassData, zeta: ComplexParam) -> np.ndarray:
    """Complex 3-vector ``(F(1+G^2), iF(1-G^2), 2FG)`` at ``zeta``."""
    if zeta.r == 0 and data.exponent < 0:
        raise BranchDomain(f"zeta**{data.exponent} is undefined at zeta = 0")
    return _weierstrass_vector(data, zeta.r, zeta.theta)


def _check_radius(m, r):
    if is_integral(m):
        if m < 1 and np.any(np.asarray(r) == 0):
            raise BranchDomain(f"r = 0 is a pole for m = {m}")
        return
    if np.any(np.asarray(r) <= 0):
        raise BranchDomain(f"fractional m = {m} needs r > 0")


@functools.lru_cache(maxsize=256)
def bour_coefficients(m):
    """``(a, 1/a, 1/(a+2), 2/(a+1))`` with ``a = m - 1``, as exact numbers."""
    a = exponent(m) - 1
    return a, 1 / Fraction(a), 1 / Fraction(a + 2), 2 / Fraction(a + 1)


def bour_xyz(m, r, theta, xp=NUMPY):
    """Unchecked Bour-surface coordinates; ``xp`` selects the arithmetic."""
    a, c, d, e = bour_coefficients(m)
    c, d, e, ma = xp.num(c), xp.num(d), xp.num(e), xp.num(a)
    r_lo = xp.pow(r, a)
    r_mid = r_lo * r
    r_hi = r_mid * r
    t1 = ma * theta
    t2 = t1 + theta
    t3 = t2 + theta
    x = c * r_lo * xp.cos(t1) + d * r_hi * xp.cos(t3)
    y = -c * r_lo * xp.sin(t1) + d * r_hi * xp.sin(t3)
    z = e * r_mid * xp.cos(t2)
    return x, y, z


def bour_closed_form(m, r, theta) -> np.ndarray:
    """Bour surface of value ``m`` at polar parameters.

    Real part of the termwise antiderivative of the integrand for data
    ``(zeta**(m-2), zeta)``.  Negative ``r`` is accepted for integral ``m``
    only, where it coincides with ``(|r|, theta + pi)``.
    """
    m = check_exponent(m)
    _check_radius(m, r)
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    return np.stack(bour_xyz(m, r, theta), axis=-1)


def b3_cartesian_xyz(u, v, xp=NUMPY):
    u2 = u * u
    v2 = v * v
    half = xp.num(Fraction(1, 2))
    quarter = xp.num(Fraction(1, 4))
    x = quarter * (u2 * u2 + v2 * v2) - 6 * quarter * u2 * v2 + half * (u2 - v2)
    y = u2 * u * v - u * v2 * v - u * v
    z = xp.num(Fraction(2, 3)) * u2 * u - 2 * u * v2
    return x, y, z


def b3_cartesian(u, v) -> np.ndarray:
    """Bour's maximal surface of value 3 in the chart ``zeta = u + iv``."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return np.stack(b3_cartesian_xyz(u, v), axis=-1)


def _panel_edges(a, b, n, graded):
    if graded and a > 0 and b / a > 10:
        return np.geomspace(a, b, n + 1)
    if graded and b > 0 and a / b > 10:
        return np.geomspace(a, b, n + 1)
    return np.linspace(a, b, n + 1)


def _gauss_legendre(edges):
    nodes, weights = np.polynomial.legendre.leggauss(GL_NODES)
    lo = edges[:-1, None]
    hi = edges[1:, None]
    half = 0.5 * (hi - lo)
    points = (lo + hi) * 0.5 + half * nodes
    return points.ravel(), (half * weights).ravel()


def integrate_numeric(
    data: WeierstrassData,
    zeta: ComplexParam,
    base: ComplexParam | None = None,
    steps: int = 512,
) -> np.ndarray:
    """Re of the integral of the integrand from ``base`` to ``zeta``.

    The path runs radially from ``base`` to radius ``zeta.r`` and then along
    the circle to angle ``zeta.theta``.  Each leg is split into ``steps``
    panels carrying 8-point Gauss-Legendre rules (radial panels are graded
    geometrically when the leg approaches the origin and ``F`` has a pole).
    """
    if steps < 8:
        raise ValueError("steps must be >= 8")
    if base is None:
        base = default_base(data)
    p = data.exponent
    if p < 0 and min(base.r, zeta.r) <= ORIGIN_TOL:
        raise PathThroughSingularity("quadrature path touches zeta = 0 where F has a pole")
    if base.r == 0 and not is_integral(p):
        raise BranchDomain("fractional power at the origin")

    total = np.zeros(3, dtype=complex)
    if zeta.r != base.r:
        edges = _panel_edges(base.r, zeta.r, steps, graded=p < 0)
        rho, w = _gauss_legendre(edges)
        direction = np.exp(1j * base.theta)
        vals = _weierstrass_vector(data, rho, np.full_like(rho, base.theta))
        total += (w[:, None] * vals).sum(axis=0) * direction
    if zeta.theta != base.theta and zeta.r > 0:
        edges = np.linspace(base.theta, zeta.theta, steps + 1)
        phi, w = _gauss_legendre(edges)
        vals = _weierstrass_vector(data, np.full_like(phi, zeta.r), phi)
        dzeta = 1j * zeta.r * np.exp(1j * phi)
        total += (w[:, None] * vals * dzeta[:, None]).sum(axis=0)
    return total.real


def default_base(data: WeierstrassData) -> ComplexParam:
    """Near-origin anchor when the integral converges there, else r = 1."""
    if data.exponent > -1:
        return ComplexParam(1e-6, 0.0)
    return ComplexParam(1.0, 0.0)


__all__ = [
    "ComplexParam",
    "WeierstrassData",
    "b3_cartesian",
    "bour_closed_form",
    "check_exponent",
    "default_base",
    "integrand",
    "integrate_numeric",
]
