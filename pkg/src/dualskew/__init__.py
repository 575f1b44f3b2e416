"""Exact skew-growth polynomials of dual Artin monoids of finite Coxeter type."""
from __future__ import annotations

from .skewgrowth import CoxeterType, skew_growth

__version__ = "0.1.0"

__all__ = ["CoxeterType", "skew_growth", "__version__"]
