"""Exact construction of compact rank-two Lie algebras and geodesic-orbit
classification of their catalogued homogeneous spaces."""

__version__ = "0.1.0"

from .field import (
    RADICANDS,
    Scalar,
    parse_scalar,
    scalar,
    scalar_approx,
    scalar_arith,
    scalar_sign,
)

__all__ = [
    "RADICANDS",
    "Scalar",
    "parse_scalar",
    "scalar",
    "scalar_approx",
    "scalar_arith",
    "scalar_sign",
    "__version__",
]
