"""Bour surfaces in Minkowski 3-space with a finite-difference oracle."""

__version__ = "0.1.0"
