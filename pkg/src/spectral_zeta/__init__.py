"""Spectral zeta functions and determinants of the Laplacian on spheres and projective spaces."""

from .datatypes import EvalResult, Pole, Term, TermParams, ZetaDecomposition
from .errors import (
    DivergentExpansion,
    DivergentRegion,
    DomainError,
    NonConstantRemainder,
    PoleError,
    SpectralZetaError,
    ToleranceNotMet,
)
from .manifolds import (
    ComplexProjective,
    ManifoldSpec,
    RealProjective,
    Sphere,
    decompose,
    determinant,
    log_determinant,
    parse_manifold,
    poles,
    series_oracle,
    zeta,
    zeta_at_neg_int,
    zeta_at_zero,
    zeta_prime_at_zero,
)

__version__ = "0.1.0"

__all__ = [
    "ComplexProjective",
    "DivergentExpansion",
    "DivergentRegion",
    "DomainError",
    "EvalResult",
    "ManifoldSpec",
    "NonConstantRemainder",
    "Pole",
    "PoleError",
    "RealProjective",
    "SpectralZetaError",
    "Sphere",
    "Term",
    "TermParams",
    "ToleranceNotMet",
    "ZetaDecomposition",
    "decompose",
    "determinant",
    "log_determinant",
    "parse_manifold",
    "poles",
    "series_oracle",
    "zeta",
    "zeta_at_neg_int",
    "zeta_at_zero",
    "zeta_prime_at_zero",
]
