"""Localisation of Fourier and filtered partial sums on spheres.

Exact and asymptotic evaluation of Jacobi Dirichlet kernels and filtered
kernels, local convolutions outside spherical caps, and degree sweeps that
measure how those local convolutions decay.
"""

from .special import JacobiParams, SphereDim
from .filters import Filter, hermite_filter
from .kernels import KernelSpec, SbpCoefficients
from .localisation import ONE, ZonalFunction, local_convolution

__version__ = "0.1.0"

__all__ = [
    "Filter", "JacobiParams", "KernelSpec", "ONE", "SbpCoefficients",
    "SphereDim", "ZonalFunction", "hermite_filter", "local_convolution",
]
