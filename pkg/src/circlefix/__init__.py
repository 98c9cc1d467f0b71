"""Exact checks and exhaustive searches for fixed point data of circle actions."""

__version__ = "0.1.0"

from .fpdata import (  # noqa: E402
    FixedPoint,
    FixedPointData,
    Multigraph,
    TriplePattern,
    build_multigraph,
    cp2_family,
    data_from_pattern,
    hp2_family,
    hp2_from_projective,
    pattern_from_data,
    sphere_rotation,
    validate,
)
from .constraints import Certificate, dim12_chain, signature_exact_3pt, signature_series  # noqa: E402
from .search import classify_dim4, classify_dim8, enumerate_patterns, refute_dim12  # noqa: E402

__all__ = [
    "Certificate",
    "FixedPoint",
    "FixedPointData",
    "Multigraph",
    "TriplePattern",
    "build_multigraph",
    "classify_dim4",
    "classify_dim8",
    "cp2_family",
    "data_from_pattern",
    "dim12_chain",
    "enumerate_patterns",
    "hp2_family",
    "hp2_from_projective",
    "pattern_from_data",
    "refute_dim12",
    "signature_exact_3pt",
    "signature_series",
    "sphere_rotation",
    "validate",
]
