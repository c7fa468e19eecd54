"""Smooth cut-off filters built from Hermite transition polynomials."""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import numpy as np


def _poly_derivative(coeffs, order=1):
    c = list(coeffs)
    for _ in range(order):
        c = [i * c[i] for i in range(1, len(c))] or [Fraction(0)]
    return c


def _poly_value(coeffs, u):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * u + c
    return acc


@dataclass(frozen=True)
class Filter:
    """Filter equal to 1 on [0, 1], 0 on [2, inf), polynomial in between.

    ``coeffs`` are exact power-basis coefficients of the transition piece in
    the variable ``u = t - 1``.  ``d1`` and ``d2`` are the one-sided
    derivatives of order ``kappa + 1`` at t = 1 and t = 2.
    """

    kappa: int
    coeffs: tuple
    d1: float
    d2: float
    plateau: float = 1.0

    def __call__(self, t):
        return filter_eval(self, t)

    def derivative(self, t, order):
        """Derivative of the transition piece, zero off [1, 2]."""
        t = np.asarray(t, dtype=float)
        c = [float(x) for x in _poly_derivative(self.coeffs, order)]
        u = t - 1.0
        inside = (t > 1.0) & (t < 2.0)
        out = np.where(inside, np.polynomial.polynomial.polyval(u, c), 0.0)
        return out if out.ndim else float(out)


def hermite_filter(kappa):
    """Filter whose transition is the degree ``2 kappa + 1`` Hermite interpolant.

    The piece matches value 1 and ``kappa`` zero derivatives at t = 1 and
    value 0 and ``kappa`` zero derivatives at t = 2, so the filter is
    ``C^kappa`` on [0, inf).
    """
    if int(kappa) != kappa or kappa < 0:
        raise ValueError("kappa must be a non-negative integer")
    kappa = int(kappa)
    # smoothstep u^{k+1} sum_j C(k+j, j) C(2k+1, k-j) (-u)^j
    s = [Fraction(0)] * (2 * kappa + 2)
    for j in range(kappa + 1):
        s[kappa + 1 + j] = Fraction((-1) ** j * comb(kappa + j, j) * comb(2 * kappa + 1, kappa - j))
    coeffs = [-c for c in s]
    coeffs[0] += 1
    d = _poly_derivative(coeffs, kappa + 1)
    d1 = _poly_value(d, Fraction(0))
    d2 = _poly_value(d, Fraction(1))
    return Filter(kappa, tuple(coeffs), float(d1), float(d2))


def filter_eval(f, t):
    """Evaluate the filter at ``t >= 0``; vectorised."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("filter argument must be non-negative")
    c = [float(x) for x in f.coeffs]
    mid = np.polynomial.polynomial.polyval(np.clip(t, 1.0, 2.0) - 1.0, c)
    out = np.where(t <= 1.0, f.plateau, np.where(t >= 2.0, 0.0, mid))
    return out if out.ndim else float(out)


def forward_diff(f, L, s, ell):
    """``s``-th forward difference ``sum_j C(s, j) (-1)^j g((ell + j) / L)``."""
    if L < 1 or s < 0:
        raise ValueError("need L >= 1 and s >= 0")
    ell = np.asarray(ell, dtype=float)
    out = np.zeros(ell.shape)
    for j in range(s + 1):
        out += (-1) ** j * comb(s, j) * filter_eval(f, (ell + j) / L)
    return out if out.ndim else float(out)


def edge_constant(kappa):
    """``kappa! / B(kappa + 1, kappa + 1)``, the magnitude of ``d1`` and ``d2``."""
    return factorial(2 * kappa + 1) // factorial(kappa)
