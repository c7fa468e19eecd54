"""Dirichlet and filtered reproducing kernels on the interval and the sphere.

Kernels are evaluated as functions of ``t = cos(theta)``.  The direct sums
are reference implementations (extended precision, compensated).  Fast
evaluation goes through the closed form for the Dirichlet kernel and the
summation-by-parts form for filtered kernels, whose terms cancel far less.
"""

from dataclasses import dataclass
from math import lgamma

import numpy as np

from .filters import Filter, filter_eval
from .special import (JacobiParams, SphereDim, area_ratio, as_dim, jacobi_eval,
                      jacobi_iter, kernel_coeff, log_gamma_ratio)


class _Compensated:
    """Elementwise compensated accumulator (Knuth two-sum)."""

    def __init__(self, shape, dtype=float):
        self.s = np.zeros(shape, dtype=dtype)
        self.c = np.zeros(shape, dtype=dtype)

    def add(self, x):
        t = self.s + x
        z = t - self.s
        self.c += (self.s - (t - z)) + (x - z)
        self.s = t

    @property
    def value(self):
        return self.s + self.c


def _out(v):
    return v if np.ndim(v) else float(v)


def _weighted_sum(p, weights, t, dtype=float):
    t = np.asarray(t, dtype=float)
    acc = _Compensated(t.shape, dtype)
    for w, P in zip(weights, jacobi_iter(p, len(weights) - 1, t, dtype)):
        if w != 0:
            acc.add(w * P)
    return _out(acc.value.astype(float))


_XP = np.longdouble


def _coeffs_xp(p, n):
    # P_ell(1)/h_ell for ell < n by a product recurrence in extended precision
    a, b = _XP(p.alpha), _XP(p.beta)
    r = a + b
    ratio = np.empty(n, dtype=_XP)
    ratio[0] = _XP(kernel_coeff(p, 0))
    if n > 1:
        ratio[1] = (r + 3) / (b + 1)
    ell = np.arange(2, n, dtype=_XP)
    ratio[2:] = (2 * ell + r + 1) / (2 * ell + r - 1) * (ell + r) / (ell + b)
    return np.cumprod(ratio)


def _filter_xp(f, x):
    c = np.array([int(q) for q in f.coeffs], dtype=_XP)
    mid = np.polynomial.polynomial.polyval(np.clip(x, 1, 2) - 1, c)
    return np.where(x <= 1, _XP(f.plateau), np.where(x >= 2, _XP(0), mid))


def dirichlet_direct(p, L, t):
    """Reproducing kernel of degree ``L`` at ``(1, t)`` by direct summation.

    This is the reference form: the recurrence and the compensated sum run
    in extended precision.
    """
    if L < 0:
        raise ValueError("L must be non-negative")
    return _weighted_sum(p, _coeffs_xp(p, L + 1), t, _XP)


def dirichlet_closed(p, L, t, dtype=_XP):
    """Same kernel via the single polynomial ``P_L^{(alpha+1, beta)}``.

    The recurrence runs in ``dtype``; extended precision (the default) keeps
    the relative error small next to zeros of the kernel, while
    ``dtype=float`` is the faster choice inside quadrature.
    """
    if L < 0:
        raise ValueError("L must be non-negative")
    a, b, r = p.alpha, p.beta, p.r
    lc = log_gamma_ratio(r + 2.0, b + 1.0, float(L)) - lgamma(a + 1.0) - (r + 1.0) * np.log(2.0)
    return _out(np.exp(lc) * jacobi_eval(p.shifted(1.0, 0.0), L, t, dtype))


def sphere_dirichlet(d, L, t, dtype=_XP):
    """Fourier partial-sum kernel on S^d as a function of ``t``."""
    d = as_dim(d)
    return _out(area_ratio(d) * dirichlet_closed(d.jacobi, L, t, dtype))


def filtered_direct(p, f, L, t):
    """Filtered kernel ``sum_ell g(ell/L) P_ell(1) P_ell(t) / h_ell``.

    Reference form, summed in extended precision like :func:`dirichlet_direct`.
    """
    if L < 1:
        raise ValueError("L must be positive")
    ell = np.arange(2 * L, dtype=_XP)
    return _weighted_sum(p, _filter_xp(f, ell / L) * _coeffs_xp(p, 2 * L), t, _XP)


def sphere_filtered(d, f, L, t, dtype=_XP):
    """Filtered kernel on S^d, evaluated through the summation-by-parts form."""
    d = as_dim(d)
    return _out(area_ratio(d) * filtered_sbp(d.jacobi, f, L, f.kappa + 3, t, dtype))


@dataclass(frozen=True)
class SbpCoefficients:
    """Coefficients ``A_k(L, ell)``; ``values[i]`` belongs to ``ell = start + i``."""

    k: int
    L: int
    start: int
    values: np.ndarray

    @property
    def window(self):
        return self.start, self.start + len(self.values) - 1

    def __call__(self, ell):
        i = ell - self.start
        return float(self.values[i]) if 0 <= i < len(self.values) else 0.0


def _sbp_xp(p, f, L, k):
    if L < 1:
        raise ValueError("L must be positive")
    if k < 1 or k > f.kappa + 3:
        raise ValueError(f"order k={k} outside 1..{f.kappa + 3}")
    lo = max(0, L - k + 1)
    hi = 2 * L - 1
    ell = np.arange(lo, hi + k + 1, dtype=_XP)
    g = _filter_xp(f, ell / L)
    A = g[:-1] - g[1:]
    r = _XP(p.r)
    for j in range(2, k + 1):
        B = A / (2 * ell[:len(A)] + r + j)
        A = B[:-1] - B[1:]
    return lo, A[:hi - lo + 1]


def sbp_coefficients(p, f, L, k):
    """Summation-by-parts coefficients of order ``k``.

    ``A_1(ell) = g(ell/L) - g((ell+1)/L)`` and each further order divides by
    ``2 ell + alpha + beta + k`` and takes a forward difference.  Only the
    window ``[L-k+1, 2L-1]`` (clipped at 0) can be non-zero.  The ladder is
    run in extended precision since each order loses about ``log10(L)``
    digits to cancellation.
    """
    lo, A = _sbp_xp(p, f, L, k)
    return SbpCoefficients(k, L, lo, A.astype(float))


def filtered_sbp(p, f, L, k, t, dtype=_XP):
    """Filtered kernel via ``sum_ell A_k(ell) G_ell P_ell^{(alpha+k, beta)}(t)``.

    ``G_ell = Gamma(ell + alpha + beta + k + 1) / Gamma(ell + beta + 1)``.
    Agrees with :func:`filtered_direct` for every admissible ``k``.  The
    weights are always formed in extended precision; ``dtype`` sets the
    precision of the final sum.
    """
    lo, A = _sbp_xp(p, f, L, k)
    hi = lo + len(A) - 1
    a, b, r = p.alpha, p.beta, p.r
    # G_lo in log space (finite for large L), then a product recurrence
    g0 = log_gamma_ratio(r + k + 1.0, b + 1.0, float(lo)) - lgamma(a + 1.0) - (r + 1.0) * np.log(2.0)
    e = np.arange(lo + 1, hi + 1, dtype=_XP)
    step = np.empty(len(A), dtype=_XP)
    step[0] = np.exp(_XP(g0))
    step[1:] = (e + _XP(r) + k) / (e + _XP(b))
    w = np.zeros(hi + 1, dtype=dtype)
    w[lo:] = (A * np.cumprod(step)).astype(dtype)
    return _weighted_sum(p.shifted(float(k), 0.0), w, t, dtype)


@dataclass(frozen=True)
class KernelSpec:
    """A kernel choice: parameters, degree, and optional filter.

    ``params`` is either a :class:`JacobiParams` (interval kernel) or a
    :class:`SphereDim` (zonal kernel on the sphere, including the area
    factor).  ``filter=None`` means the Fourier (Dirichlet) kernel.
    """

    params: object
    L: int
    filter: Filter = None

    def __post_init__(self):
        if not isinstance(self.params, (JacobiParams, SphereDim)):
            raise TypeError("params must be JacobiParams or SphereDim")
        if self.L < (1 if self.filter is not None else 0):
            raise ValueError("degree too small")

    @classmethod
    def sphere(cls, d, L, filter=None):
        return cls(as_dim(d), int(L), filter)

    @property
    def kind(self):
        return "fourier" if self.filter is None else "filtered"

    @property
    def degree(self):
        return self.L if self.filter is None else 2 * self.L - 1

    def __call__(self, t):
        # double precision: this is the path used under quadrature
        if isinstance(self.params, SphereDim):
            if self.filter is None:
                return sphere_dirichlet(self.params, self.L, t, float)
            return sphere_filtered(self.params, self.filter, self.L, t, float)
        if self.filter is None:
            return dirichlet_closed(self.params, self.L, t, float)
        return filtered_sbp(self.params, self.filter, self.L, self.filter.kappa + 3, t, float)
