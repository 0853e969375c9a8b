"""Validated-numerics engine certifying the convexity of the extreme Whitham wave."""

from .rigor import RS, RigorousScalar, get_precision, set_precision

__all__ = ["RS", "RigorousScalar", "get_precision", "set_precision"]

__version__ = "0.1.0"
