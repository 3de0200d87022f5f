"""Vector algebra in Minkowski 3-space.

Vectors are numpy arrays whose last axis has length 3, so every function
broadcasts over stacks of vectors.  Object arrays holding gmpy2 ``mpfr``
scalars are accepted as well; only ``+``, ``-``, ``*``, ``/`` and ``abs``
are applied to the components.
"""

from __future__ import annotations

import enum

import numpy as np

from .errors import DegenerateNormal

LIGHTLIKE_TOL = 1e-12


class Signature(enum.Enum):
    """Diagonal metric signature of the ambient space."""

    PPM = (1.0, 1.0, -1.0)  # dx^2 + dy^2 - dz^2
    MPP = (-1.0, 1.0, 1.0)  # -dx^2 + dy^2 + dz^2

    @property
    def diag(self) -> np.ndarray:
        return np.array(self.value)


class CausalCharacter(enum.Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"


def vec3(x, y, z) -> np.ndarray:
    """Build a finite float vector; raises ValueError on NaN or Inf."""
    v = np.array([x, y, z], dtype=float)
    if not np.all(np.isfinite(v)):
        raise ValueError(f"non-finite vector component in {v!r}")
    return v


def _scalar(a):
    return a[()] if isinstance(a, np.ndarray) and a.ndim == 0 else a


def inner(a, b, sig: Signature):
    """Lorentzian inner product <a, b> under ``sig``."""
    d0, d1, d2 = sig.value
    if getattr(a, "ndim", 0) == 1 and getattr(b, "ndim", 0) == 1:
        # single vectors: index directly (much cheaper on object arrays)
        return d0 * a[0] * b[0] + d1 * a[1] * b[1] + d2 * a[2] * b[2]
    a = np.asarray(a)
    b = np.asarray(b)
    out = d0 * a[..., 0] * b[..., 0] + d1 * a[..., 1] * b[..., 1] + d2 * a[..., 2] * b[..., 2]
    return _scalar(out)


def euclidean_norm2(a):
    a = np.asarray(a)
    return _scalar(a[..., 0] * a[..., 0] + a[..., 1] * a[..., 1] + a[..., 2] * a[..., 2])


def is_zero(v) -> bool:
    return bool(np.all(np.asarray(v) == 0))


def causal_character(v, sig: Signature, tol: float = LIGHTLIKE_TOL) -> CausalCharacter:
    """Classify a single vector.

    The zero vector counts as spacelike.  ``tol`` is relative to the
    squared Euclidean length, which makes the classification invariant
    under positive rescaling of ``v``.
    """
    if tol < 0:
        raise ValueError("tol must be non-negative")
    if is_zero(v):
        return CausalCharacter.SPACELIKE
    q = inner(v, v, sig)
    scale = tol * euclidean_norm2(v)
    if q > scale:
        return CausalCharacter.SPACELIKE
    if q < -scale:
        return CausalCharacter.TIMELIKE
    return CausalCharacter.LIGHTLIKE


def lorentz_cross(a, b, sig: Signature) -> np.ndarray:
    """Cross product Lorentz-orthogonal to both factors.

    It is the Euclidean cross product with the component along the
    negative-signature axis flipped.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    d0, d1, d2 = sig.value
    c0 = a[..., 1] * b[..., 2] - a[..., 2] * b[..., 1]
    c1 = a[..., 2] * b[..., 0] - a[..., 0] * b[..., 2]
    c2 = a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]
    return np.stack([d0 * c0, d1 * c1, d2 * c2], axis=-1)


def normalize(v, sig: Signature, tol: float = LIGHTLIKE_TOL) -> np.ndarray:
    """Scale ``v`` to Lorentzian length +-1.

    Raises DegenerateNormal when ``v`` is zero or lightlike, with the same
    scale-free tolerance as :func:`causal_character`.
    """
    v = np.asarray(v)
    if v.dtype != object:
        # rescale first so tiny or huge vectors do not under/overflow in q
        big = np.max(np.abs(v), axis=-1, keepdims=True)
        if np.any(big == 0):
            raise DegenerateNormal("cannot normalize a zero vector")
        v = v / big
    q = inner(v, v, sig)
    n2 = euclidean_norm2(v)
    if np.any(n2 == 0) or np.any(abs(q) <= tol * n2):
        raise DegenerateNormal("cannot normalize a lightlike or zero vector")
    length = abs(q) ** 0.5
    return v / np.asarray(length)[..., None]
