"""Local convolutions with zonal kernels outside a spherical cap.

For a zonal test function ``f(y) = F(y . p)`` and a point ``x`` at angle
``psi`` from the pole ``p``, the convolution over the sphere minus the cap
of radius ``delta`` around ``x`` reduces to a one-dimensional integral of
the kernel against the translation ``T_theta(f; x)``.
"""

from dataclasses import dataclass
from math import pi

import numpy as np

from .kernels import KernelSpec
from .quadrature import (QuadratureError, QuadratureRule, gauss_nodes,
                         integrate_checked, round_nodes)
from .special import SphereDim, area_ratio, as_dim

__all__ = [
    "ONE", "CapConfig", "QuadratureError", "QuadratureRule", "ZonalFunction",
    "circle_local_convolution", "default_nodes", "gauss_nodes",
    "local_convolution", "sup_norm_over_colatitude", "translate_zonal",
]

PHI_NODES = 128


@dataclass(frozen=True)
class ZonalFunction:
    """Zonal function given by its profile ``F`` on [-1, 1].

    ``profile`` must accept numpy arrays.  ``constant`` marks ``F`` as a
    known constant, which lets integrals skip the translation step.
    """

    profile: object
    constant: float = None

    @classmethod
    def const(cls, c=1.0):
        c = float(c)
        return cls(lambda t: np.full(np.shape(t), c), c)

    def __call__(self, t):
        return self.profile(t)


ONE = ZonalFunction.const(1.0)


@dataclass(frozen=True)
class CapConfig:
    delta: float
    d: SphereDim

    def __post_init__(self):
        object.__setattr__(self, "d", as_dim(self.d))
        if not 0.0 < self.delta < pi:
            raise ValueError("cap radius must lie in (0, pi)")

    def require_lower_bound_range(self):
        if not self.delta < pi / 2:
            raise ValueError("lower-bound experiments need delta < pi/2")
        return self


def translate_zonal(d, F, theta, psi, m=PHI_NODES):
    """Translation ``T_theta(f; x)`` of a zonal ``f`` at colatitude ``psi``.

    Average of ``F`` over the circle of points at angle ``theta`` from ``x``.
    Vectorised over ``theta``; the inner integral uses ``m`` Gauss nodes and
    is checked against ``2m``.
    """
    d = as_dim(d).d
    if d < 2:
        raise ValueError("translation needs d >= 2")
    theta = np.asarray(theta, dtype=float)
    if np.any(theta < 0) or np.any(theta > pi) or not 0 <= psi <= pi:
        raise ValueError("angles must lie in [0, pi]")
    if F.constant is not None:
        return np.full(theta.shape, F.constant) if theta.ndim else F.constant
    cp, sp = np.cos(psi), np.sin(psi)
    ct, st = np.cos(theta)[..., None], np.sin(theta)[..., None]
    # |S^{d-2}| / |S^{d-1}| normalises the weight (sin phi)^{d-2} on [0, pi]
    c = 1.0 / area_ratio(d - 1)
    est = []
    for k in (m, 2 * m):
        rule = gauss_nodes(k, 0.0, pi)
        arg = np.clip(cp * ct + sp * st * np.cos(rule.nodes), -1.0, 1.0)
        w = rule.weights * np.sin(rule.nodes) ** (d - 2)
        est.append(c * (F(arg) @ w))
    if not np.allclose(est[0], est[1], rtol=1e-9, atol=1e-12 * np.max(np.abs(est[1]), initial=1.0)):
        raise QuadratureError("translation integral did not converge")
    out = est[1]
    return out if out.ndim else float(out)


def default_nodes(kernel):
    return round_nodes(max(256, 2 * kernel.degree + 64))


def local_convolution(d, kernel, F=ONE, delta=pi / 3, psi=0.0, n=None):
    """Convolution of ``F`` with ``kernel`` over the sphere minus a cap.

    ``delta = 0`` is allowed and gives the ordinary convolution.  For even
    ``d`` with a centred evaluation the integrand is a polynomial in
    ``t = cos(theta)`` and is integrated on ``[-1, cos(delta)]``; otherwise
    the integral is taken in ``theta`` on ``[delta, pi]``, where it is
    smooth (odd ``d`` carries a square root in ``t``).
    """
    d = as_dim(d)
    if not isinstance(kernel, KernelSpec) or kernel.params != d:
        raise ValueError("kernel must be a sphere kernel of matching dimension")
    if not 0.0 <= delta < pi:
        raise ValueError("delta must lie in [0, pi)")
    if not 0.0 <= psi <= pi:
        raise ValueError("psi must lie in [0, pi]")
    n = n or default_nodes(kernel)
    scale = 1.0 / area_ratio(d)
    dd = d.d
    centred = F.constant is not None or psi == 0.0

    if centred and dd % 2 == 0:
        def fn(t):
            val = kernel(t) * (1.0 - t * t) ** ((dd - 2) // 2)
            return val * (F.constant if F.constant is not None else F(t))
        return scale * integrate_checked(fn, -1.0, np.cos(delta), n)

    def fn(th):
        t = np.cos(th)
        tr = F.constant if F.constant is not None else (
            F(t) if psi == 0.0 else translate_zonal(d, F, th, psi))
        return kernel(t) * tr * np.sin(th) ** (dd - 1)
    return scale * integrate_checked(fn, delta, pi, n)


def circle_local_convolution(L, delta, f_profile=None, n=None):
    """Circle analogue: ``(1/2pi)`` times the integral of ``D_L(phi) f(-phi)`` over ``|phi| >= delta``.

    ``D_L(phi) = sin((L + 1/2) phi) / sin(phi / 2)``; evaluated at 0, so
    ``f(0 - phi)`` pairs with the even kernel as ``f(phi) + f(-phi)``.
    """
    if L < 0:
        raise ValueError("L must be non-negative")
    if not 0.0 <= delta < pi:
        raise ValueError("delta must lie in [0, pi)")
    n = n or round_nodes(max(256, 2 * L + 64))

    def fn(phi):
        ker = np.sin((L + 0.5) * phi) / np.sin(phi / 2.0)
        if f_profile is None:
            return 2.0 * ker
        return ker * (f_profile(phi) + f_profile(-phi))
    return integrate_checked(fn, delta, pi, n) / (2.0 * pi)


def sup_norm_over_colatitude(d, kernel, F=ONE, delta=pi / 3, grid_n=33):
    """Largest ``|local_convolution|`` over ``psi`` on a uniform grid in [0, pi]."""
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    if F.constant is not None:
        return abs(local_convolution(d, kernel, F, delta, 0.0))
    return max(abs(local_convolution(d, kernel, F, delta, psi))
               for psi in np.linspace(0.0, pi, grid_n))
