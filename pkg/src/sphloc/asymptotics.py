"""Large-degree asymptotic formulas for Jacobi polynomials and kernels.

Every formula returns an :class:`ExpansionResult` carrying the value, the
amplitude envelope that remainders are measured against, the exponent of
``L`` expected for the envelope-relative error, and the theta window in
which the formula is claimed.
"""

from dataclasses import dataclass
from math import comb, factorial, floor, gamma, pi, sqrt

import numpy as np

from .kernels import dirichlet_closed
from .special import JacobiParams

C_WIN = 10.0
EPS_DEFAULT = 0.1


class ValidityError(ValueError):
    """Angle outside the window where the expansion holds."""


class HypothesisError(ValueError):
    """Parameters violate the assumptions of the expansion."""


@dataclass(frozen=True)
class ExpansionResult:
    value: object
    envelope: object
    predicted_error_order: float
    valid_theta_range: tuple


@dataclass(frozen=True)
class LambdaTable:
    """Integer tables ``lam[nu]`` (0 <= nu < s) and ``lam_bar[nu]`` (0 <= nu <= s)."""

    kappa: int
    s: int
    lam: tuple
    lam_bar: tuple


def _check_window(theta, lo, hi):
    th = np.asarray(theta, dtype=float)
    if lo > hi or np.any(th < lo) or np.any(th > hi):
        raise ValidityError(f"theta outside [{lo:.6g}, {hi:.6g}]")
    return th


def _require_half(p):
    if not (p.alpha > -0.5 and p.beta > -0.5):
        raise HypothesisError("expansion needs alpha, beta > -1/2")


def envelope_m(p, theta):
    """``pi^{-1/2} sin(theta/2)^{-alpha-1/2} cos(theta/2)^{-beta-1/2}``."""
    th = np.asarray(theta, dtype=float)
    if np.any(th <= 0) or np.any(th >= pi):
        raise ValueError("theta must lie strictly inside (0, pi)")
    out = (np.sin(th / 2) ** (-p.alpha - 0.5) * np.cos(th / 2) ** (-p.beta - 0.5)) / sqrt(pi)
    return out if out.ndim else float(out)


def phase_omega(alpha, z):
    return z - alpha * pi / 2 - pi / 4


def f2_coefficient(p, theta):
    """Second-order correction profile ``(b^2-a^2)/4 tan(theta/2) - (4a^2-1)/8 cot(theta)``."""
    th = np.asarray(theta, dtype=float)
    a, b = p.alpha, p.beta
    out = (b * b - a * a) / 4 * np.tan(th / 2) - (4 * a * a - 1) / 8 * np.cos(th) / np.sin(th)
    return out if out.ndim else float(out)


def u_hat(alpha):
    return -2.0 + (alpha + 0.5 - floor(alpha + 0.5))


def nu_hat(alpha):
    return alpha + 2.5 if alpha < 0.5 else alpha + 0.5


def jacobi_one_term(p, ell, theta, c=C_WIN):
    """Leading-order oscillatory form of ``P_ell(cos theta)``."""
    lo, hi = c / ell, pi - c / ell
    th = _check_window(theta, lo, hi)
    et = p.ell_tilde(ell)
    env = et ** -0.5 * envelope_m(p, th)
    return ExpansionResult(env * np.cos(phase_omega(p.alpha, et * th)), env, -1.0, (lo, hi))


def jacobi_two_term(p, ell, theta, eps=EPS_DEFAULT, c=C_WIN):
    """Leading term plus the ``1/ell`` correction."""
    _require_half(p)
    if not p.alpha - p.beta > -4:
        raise HypothesisError("two-term form needs alpha - beta > -4")
    lo, hi = c / ell, pi - eps
    th = _check_window(theta, lo, hi)
    et = p.ell_tilde(ell)
    env = et ** -0.5 * envelope_m(p, th)
    z = et * th
    f1 = (f2_coefficient(p, th) * np.cos(phase_omega(p.alpha + 1, z))
          - p.alpha * p.beta / 2 * np.cos(phase_omega(p.alpha, z)))
    val = env * (np.cos(phase_omega(p.alpha, z)) + f1 / et)
    return ExpansionResult(val, env, max(u_hat(p.alpha), -2.0), (lo, hi))


def _dirichlet_scale(p, L):
    return p.L_tilde(L) ** (p.alpha + 0.5) / (2.0 ** (p.r + 1) * gamma(p.alpha + 1))


def _branch_for(theta, branch):
    if branch is None:
        return "i" if np.all(np.asarray(theta) <= pi / 2) else "ii"
    if branch not in ("i", "ii"):
        raise ValueError("branch must be 'i' or 'ii'")
    return branch


def dirichlet_one_term(p, L, theta, branch=None, c=C_WIN):
    """Leading oscillatory form of the Dirichlet kernel ``v_L(1, cos theta)``.

    Branch ``"i"`` expands around theta = 0 and is the default for
    ``theta <= pi/2``; branch ``"ii"`` uses the reflected angle.  Either may
    be forced on the whole interior window for consistency checks.
    """
    _require_half(p)
    br = _branch_for(theta, branch)
    if branch is None:
        lo, hi = (c / L, pi / 2) if br == "i" else (pi / 2, pi - c / L)
    else:
        lo, hi = c / L, pi - c / L
    th = _check_window(theta, lo, hi)
    if br == "ii" and branch is None and np.any(th == pi / 2):
        raise ValidityError("branch ii excludes theta = pi/2")
    s = _dirichlet_scale(p, L)
    Lt = p.L_tilde(L)
    if br == "i":
        env = s * envelope_m(p.shifted(1.0, 0.0), th)
        val = env * np.cos(phase_omega(p.alpha + 1, Lt * th))
    else:
        tp = pi - th
        q = JacobiParams(p.beta, p.alpha + 1)
        env = s * envelope_m(q, tp)
        val = (-1) ** L * env * np.cos(phase_omega(p.beta, Lt * tp))
    return ExpansionResult(val, env, -1.0, (lo, hi))


def dirichlet_two_term(p, L, theta, branch=None, eps=EPS_DEFAULT, c=C_WIN):
    """Dirichlet kernel with the ``1/L`` correction on either branch."""
    _require_half(p)
    br = _branch_for(theta, branch)
    a, b = p.alpha, p.beta
    s = _dirichlet_scale(p, L)
    Lt = p.L_tilde(L)
    if br == "i":
        if not a - b > -5:
            raise HypothesisError("branch i needs alpha - beta > -5")
        lo, hi = c / L, pi - eps
        th = _check_window(theta, lo, hi)
        q = p.shifted(1.0, 0.0)
        env = s * envelope_m(q, th)
        z = Lt * th
        val = env * (np.cos(phase_omega(a + 1, z))
                     + f2_coefficient(q, th) * np.cos(phase_omega(a + 2, z)) / Lt)
        order = max(u_hat(a + 1), -2.0)
    else:
        if not b - a > -3:
            raise HypothesisError("branch ii needs beta - alpha > -3")
        lo, hi = eps, pi - c / L
        th = _check_window(theta, lo, hi)
        tp = pi - th
        q = JacobiParams(b, a + 1)
        env = s * envelope_m(q, tp)
        z = Lt * tp
        val = (-1) ** L * env * (np.cos(phase_omega(b, z))
                                 + f2_coefficient(q, tp) * np.cos(phase_omega(b + 1, z)) / Lt)
        order = max(u_hat(b), -2.0)
    return ExpansionResult(val, env, order, (lo, hi))


def lambda_tables(kappa, s):
    """Exact integer tables used by the filtered-kernel expansion."""
    if s < 1 or kappa < 0:
        raise ValueError("need s >= 1 and kappa >= 0")
    e = kappa + 1
    lam = tuple(sum(comb(s, j) * (-1) ** j * (j - nu) ** e for j in range(nu + 1, s + 1))
                for nu in range(s))
    lam_bar = tuple(sum(comb(s, j) * (-1) ** j * (j - nu - 1) ** e for j in range(nu + 1))
                    for nu in range(s + 1))
    return LambdaTable(kappa, s, lam, lam_bar)


def filtered_coefficients(p, f, theta):
    """Trigonometric amplitudes ``(g1, g2, g3, g4)`` of the filtered expansion."""
    k = f.kappa
    tab = lambda_tables(k, k + 3)
    th = np.asarray(theta, dtype=float)
    i = np.arange(k + 3).reshape((-1,) + (1,) * th.ndim)
    lam = np.array(tab.lam[:k + 3], dtype=float).reshape(i.shape)
    lbar = np.array(tab.lam_bar[:k + 3], dtype=float).reshape(i.shape)
    c, s = np.cos(i * th), np.sin(i * th)
    w = 2.0 ** (p.alpha + 0.5) * f.d2
    return (f.d1 * (lam * c).sum(0), f.d1 * (lam * s).sum(0),
            w * (lbar * c).sum(0), w * (lbar * s).sum(0))


def filtered_prefactor(p, kappa, L, theta):
    """``L^{-(kappa-alpha+1/2)} C(theta) / (2^{kappa+2} (kappa+1)!)``.

    ``C(theta)`` is the half-angle amplitude of order ``kappa + 3``.
    """
    a, b = p.alpha, p.beta
    k = kappa + 3
    th = np.asarray(theta, dtype=float)
    c1 = (np.sin(th / 2) ** (-a - k - 0.5) * np.cos(th / 2) ** (-b - 0.5)
          / (2.0 ** (p.r + 1) * sqrt(pi) * gamma(a + 1)))
    return float(L) ** (-(kappa - a + 0.5)) * c1 / (2.0 ** (kappa + 2) * factorial(kappa + 1))


def filtered_kernel_asymp(p, f, L, theta, c=C_WIN):
    """Leading behaviour of the filtered kernel away from both endpoints.

    Two oscillations: one at frequency ~L from the start of the filter
    transition and one at ~2L from its end, with amplitudes set by the
    one-sided derivatives ``d1``, ``d2`` of the filter.
    """
    lo, hi = c / L, pi - c / L
    th = _check_window(theta, lo, hi)
    k = f.kappa
    env = filtered_prefactor(p, k, L, th)
    g1, g2, g3, g4 = filtered_coefficients(p, f, th)
    xi = (p.alpha + k + 3) * pi / 2 + pi / 4
    phi = (p.L_tilde(L) + (k + 2) / 2) * th - xi
    phib = (p.L_tilde(2 * L) - 1 + (k + 2) / 2) * th - xi
    val = env * (g1 * np.cos(phi) + g2 * np.sin(phi) + g3 * np.cos(phib) + g4 * np.sin(phib))
    return ExpansionResult(val, env, -1.0, (lo, hi))


def endpoint_bounds(p, L, theta, c=C_WIN):
    """Exact kernel value in the endpoint zones ``[0, c/L]`` and ``[pi - c/L, pi]``.

    Near 0 the kernel grows like ``L^{2 alpha + 2}``, near pi like
    ``L^{alpha + beta + 1}``.
    """
    th = np.asarray(theta, dtype=float)
    w = c / L
    if np.any((th < 0) | (th > pi) | ((th > w) & (th < pi - w))):
        raise ValidityError("theta must lie in an endpoint zone")
    return dirichlet_closed(p, L, np.cos(th))


def endpoint_growth_exponent(p, near):
    """Growth exponent in ``L`` of the kernel at theta = 0 or pi."""
    return 2 * p.alpha + 2 if near == 0 else p.r + 1


__all__ = [
    "C_WIN", "ExpansionResult", "HypothesisError", "LambdaTable", "ValidityError",
    "dirichlet_one_term", "dirichlet_two_term", "endpoint_bounds",
    "endpoint_growth_exponent", "envelope_m", "f2_coefficient",
    "filtered_coefficients", "filtered_kernel_asymp", "filtered_prefactor",
    "jacobi_one_term", "jacobi_two_term", "lambda_tables", "nu_hat",
    "phase_omega", "u_hat",
]
