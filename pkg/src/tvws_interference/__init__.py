"""Aggregate interference in finite-area cognitive radio networks.

Poisson fields of Rayleigh-faded secondary transmitters on a disk, with an
optional protection zone carved out around a primary receiver, produce a
one-sided stable interference law ``exp(-K s**eta)``. The package computes
``K`` from geometry, evaluates the law in closed form or by Laplace
inversion, checks it against Monte Carlo, and studies an eigenvalue-ratio
detector under that interference.
"""

from .analytic import (
    FadingSpec,
    InterferenceModel,
    StableLaw,
    cdf,
    compute_k,
    k_by_quadrature,
    normalization,
    pdf,
    truncated_mean,
    uncertainty,
)
from .errors import (
    ConfigError,
    DomainError,
    GeometryError,
    InterferenceError,
    NonConvergenceError,
    PointMassError,
)
from .geometry import RegionSpec, lune, truncation_radius

__version__ = "0.1.0"

__all__ = [
    "FadingSpec",
    "InterferenceModel",
    "StableLaw",
    "RegionSpec",
    "cdf",
    "compute_k",
    "k_by_quadrature",
    "lune",
    "normalization",
    "pdf",
    "truncated_mean",
    "truncation_radius",
    "uncertainty",
    "ConfigError",
    "DomainError",
    "GeometryError",
    "InterferenceError",
    "NonConvergenceError",
    "PointMassError",
]
