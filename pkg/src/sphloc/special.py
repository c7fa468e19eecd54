"""Gamma ratios, Jacobi polynomials and sphere constants."""

from dataclasses import dataclass
from math import comb, lgamma, pi

import numpy as np
from scipy.special import gammaln

_MINUS_ONE_GUARD = 1e-6
_STIRLING_CUT = 16.0

# B_{2k} / (2k (2k - 1)), k = 1..8
_STIRLING = np.array([
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
])


@dataclass(frozen=True)
class JacobiParams:
    """Jacobi weight exponents ``(alpha, beta)``, both strictly above -1."""

    alpha: float
    beta: float

    def __post_init__(self):
        for name in ("alpha", "beta"):
            v = float(getattr(self, name))
            if not np.isfinite(v) or v <= -1.0 + _MINUS_ONE_GUARD:
                raise ValueError(f"{name}={v} must exceed -1")
            object.__setattr__(self, name, v)

    @property
    def r(self):
        return self.alpha + self.beta

    def ell_tilde(self, ell):
        return ell + (self.r + 1.0) / 2.0

    def L_tilde(self, L):
        return L + (self.r + 2.0) / 2.0

    def shifted(self, da=0.0, db=0.0):
        return JacobiParams(self.alpha + da, self.beta + db)


@dataclass(frozen=True)
class SphereDim:
    """Dimension ``d`` of the sphere S^d embedded in R^{d+1}."""

    d: int

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 1:
            raise ValueError(f"d={self.d} must be a positive integer")
        object.__setattr__(self, "d", int(self.d))

    @property
    def jacobi(self):
        if self.d < 2:
            raise ValueError("Jacobi parameters need d >= 2")
        a = (self.d - 2) / 2.0
        return JacobiParams(a, a)


def as_dim(d):
    return d if isinstance(d, SphereDim) else SphereDim(d)


def _stirling_tail(z):
    # sum of the asymptotic series of log Gamma(z) beyond the leading terms
    w = 1.0 / (z * z)
    acc = np.zeros_like(z)
    for c in _STIRLING[::-1]:
        acc = acc * w + c
    return acc / z


def log_gamma_ratio(a, b, x):
    """``log Gamma(x + a) - log Gamma(x + b)``, vectorised over ``x``.

    Large arguments use a Stirling difference written so that the leading
    logarithms cancel analytically, which keeps full relative accuracy of
    the ratio for ``x`` up to about 1e8.
    """
    x = np.asarray(x, dtype=float)
    za = x + a
    zb = x + b
    if np.any(za <= 0) or np.any(zb <= 0):
        raise ValueError("gamma argument must be positive")
    za, zb = np.broadcast_arrays(za, zb)
    out = np.empty(za.shape)
    small = np.minimum(za, zb) < _STIRLING_CUT
    if np.any(small):
        out[small] = gammaln(za[small]) - gammaln(zb[small])
    big = ~small
    if np.any(big):
        p, q = za[big], zb[big]
        h = a - b
        out[big] = (h * np.log(q) + (p - 0.5) * np.log1p(h / q) - h
                    + _stirling_tail(p) - _stirling_tail(q))
    return out if out.ndim else float(out)


def gamma_ratio(a, b, L):
    """``Gamma(L + a) / Gamma(L + b)`` computed in log space."""
    return np.exp(log_gamma_ratio(a, b, L))


def jacobi_iter(p, L, t, dtype=float):
    """Yield ``P_0(t), ..., P_L(t)`` for the parameters ``p``.

    Uses the forward three-term recurrence, which is stable on [-1, 1].
    ``dtype=np.longdouble`` runs the recurrence in extended precision.
    """
    t = np.asarray(t, dtype=dtype)
    if np.any(np.abs(t) > 1.0 + 1e-12):
        raise ValueError("t must lie in [-1, 1]")
    a, b = dtype(p.alpha), dtype(p.beta)
    r = a + b
    one = dtype(1)
    prev = np.ones_like(t)
    yield prev
    if L < 1:
        return
    cur = (a + one) + (r + 2 * one) * (t - one) / 2
    yield cur
    # recurrence coefficients for all degrees at once
    n = np.arange(2, L + 1, dtype=dtype)
    s = 2 * n + r
    c0 = 2 * n * (n + r) * (s - 2)
    c1 = (s - 1) * s * (s - 2) / c0
    c2 = (s - 1) * (a * a - b * b) / c0
    c3 = 2 * (n + a - 1) * (n + b - 1) * s / c0
    for i in range(L - 1):
        prev, cur = cur, (c1[i] * t + c2[i]) * cur - c3[i] * prev
        yield cur


def jacobi_all(p, L, t):
    """Array of shape ``(L + 1,) + t.shape`` holding ``P_0..P_L``."""
    return np.array(list(jacobi_iter(p, L, t)))


def jacobi_eval(p, ell, t, dtype=float):
    """Jacobi polynomial of degree ``ell`` at ``t`` (scalar or array).

    The result is always double; ``dtype`` only sets the working precision.
    """
    if ell < 0 or int(ell) != ell:
        raise ValueError("degree must be a non-negative integer")
    val = None
    for val in jacobi_iter(p, int(ell), t, dtype):
        pass
    val = np.asarray(val, dtype=float)
    return val if val.ndim else float(val)


def jacobi_at_one(p, ell):
    """``P_ell(1) = Gamma(ell + alpha + 1) / (Gamma(ell + 1) Gamma(alpha + 1))``."""
    return np.exp(log_gamma_ratio(p.alpha + 1.0, 1.0, ell) - lgamma(p.alpha + 1.0))


def norm_const(p, ell):
    """Squared L2 norm of ``P_ell`` against ``(1-t)^alpha (1+t)^beta``."""
    a, b, r = p.alpha, p.beta, p.r
    ell = np.asarray(ell, dtype=float)
    h0 = np.exp((r + 1.0) * np.log(2.0) + lgamma(a + 1.0) + lgamma(b + 1.0)
                - lgamma(r + 2.0))
    e = np.maximum(ell, 1.0)
    lg = log_gamma_ratio(a + 1.0, 1.0, e) + log_gamma_ratio(b + 1.0, r + 1.0, e)
    h = 2.0 ** (r + 1.0) / (2.0 * e + r + 1.0) * np.exp(lg)
    out = np.where(ell == 0, h0, h)
    return out if out.ndim else float(out)


def kernel_coeff(p, ell):
    """``P_ell(1) / h_ell``, the weight of degree ``ell`` in the reproducing kernel."""
    a, b, r = p.alpha, p.beta, p.r
    ell = np.asarray(ell, dtype=float)
    c0 = np.exp(lgamma(r + 2.0) - lgamma(a + 1.0) - lgamma(b + 1.0)) / 2.0 ** (r + 1.0)
    e = np.maximum(ell, 1.0)
    c = ((2.0 * e + r + 1.0) / 2.0 ** (r + 1.0)
         * np.exp(log_gamma_ratio(r + 1.0, b + 1.0, e) - lgamma(a + 1.0)))
    out = np.where(ell == 0, c0, c)
    return out if out.ndim else float(out)


def dim_harmonic(d, ell):
    """Dimension of the degree-``ell`` spherical harmonics on S^d (exact integer)."""
    d = as_dim(d).d
    if ell < 0:
        raise ValueError("degree must be non-negative")
    if ell == 0:
        return 1
    return comb(ell + d - 1, d - 1) + comb(ell + d - 2, d - 1)


def sphere_area(d):
    """Surface area of S^d, ``2 pi^{(d+1)/2} / Gamma((d+1)/2)``."""
    d = d.d if isinstance(d, SphereDim) else int(d)
    if d < 0:
        raise ValueError("d must be non-negative")
    return 2.0 * np.exp((d + 1) / 2.0 * np.log(pi) - lgamma((d + 1) / 2.0))


def area_ratio(d):
    """``|S^d| / |S^{d-1}|``."""
    d = as_dim(d).d
    return np.sqrt(pi) * np.exp(lgamma(d / 2.0) - lgamma((d + 1) / 2.0))
