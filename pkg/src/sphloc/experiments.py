"""Degree sweeps, log-log slope fits and CSV output."""

import csv
from dataclasses import dataclass, field
from math import ceil, floor, pi, sin, sqrt

import numpy as np

from . import asymptotics as asy
from .filters import hermite_filter
from .kernels import KernelSpec, dirichlet_closed, filtered_sbp
from .localisation import ONE, circle_local_convolution, local_convolution
from .special import JacobiParams, as_dim

XI_DEFAULT = pi / 8
DELTA_UPPER = pi / 3
DELTA_LOWER = pi / 4


def geometric_sweep(L_min=64, L_max=2048, ratio=sqrt(2)):
    """Integers ``round(L_min * ratio^k)`` up to ``L_max``."""
    if L_min < 1 or L_max < L_min:
        raise ValueError("need 1 <= L_min <= L_max")
    out = []
    k = 0
    while True:
        L = int(round(L_min * ratio ** k))
        if L > L_max:
            break
        if not out or L != out[-1]:
            out.append(L)
        k += 1
    return out


def fmt_float(v):
    return format(float(v), ".17g")


def write_csv(dest, header, rows):
    """Write rows with floats at 17 significant digits (exact round trip).

    ``dest`` is a path or an open text stream.
    """
    def fmt(v):
        return str(int(v)) if isinstance(v, (int, np.integer)) else fmt_float(v)

    def emit(fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])

    if hasattr(dest, "write"):
        emit(dest)
    else:
        with open(dest, "w", newline="") as fh:
            emit(fh)


@dataclass(frozen=True)
class DecayFit:
    slope: float
    intercept: float
    r2: float
    points: list = field(default_factory=list)


def decay_fit(points):
    """Least-squares slope of ``log|value|`` against ``log L``."""
    pts = [(float(L), abs(float(v))) for L, v in points if v != 0 and L > 0]
    if len(pts) < 5:
        raise ValueError(f"need at least 5 non-zero points, got {len(pts)}")
    x = np.log([p[0] for p in pts])
    y = np.log([p[1] for p in pts])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss = np.sum((y - y.mean()) ** 2)
    r2 = 1.0 - np.sum(resid ** 2) / ss if ss > 0 else 1.0
    return DecayFit(float(slope), float(intercept), float(r2), [(int(L), v) for L, v in pts])


@dataclass(frozen=True)
class Subsequence:
    """Degrees whose boundary phase stays at least ``xi`` away from a zero.

    ``periods[k]`` lists the selected degrees inside one period of the
    phase, in increasing order.
    """

    xi: float
    levels: tuple
    periods: tuple


def boundary_phase(d, delta, L):
    return (L + d / 2.0) * delta - (d + 1) * pi / 4


def select_subsequence(d, delta, xi=XI_DEFAULT, L_max=2048, L_min=1):
    d = as_dim(d).d
    if not 0 < delta < pi / 2:
        raise ValueError("subsequence selection needs 0 < delta < pi/2")
    if not 0 < xi < pi / 4:
        raise ValueError("xi must lie in (0, pi/4)")
    groups = {}
    s = sin(xi)
    for L in range(L_min, L_max + 1):
        ph = boundary_phase(d, delta, L)
        if abs(sin(ph)) > s:
            groups.setdefault(floor(ph / pi), []).append(L)
    if not groups:
        raise ValueError("no degree passes the phase test; raise L_max")
    periods = tuple(tuple(groups[k]) for k in sorted(groups))
    levels = tuple(L for g in periods for L in g)
    return Subsequence(xi, levels, periods)


def _window(delta):
    return max(1, ceil(2 * pi / delta))


def _windowed(values_at, sweep, width):
    pts, rows = [], []
    for L0 in sweep:
        best = None
        for L in range(L0, L0 + width):
            v = values_at(L)
            rows.append((L, v))
            if best is None or abs(v) > abs(best[1]):
                best = (L, v)
        pts.append(best)
    return pts, rows


def run_fourier_decay(d, delta=DELTA_LOWER, L_range=(64, 2048), use_subsequence=True,
                      xi=XI_DEFAULT, out=None):
    """Fit the decay (or growth) rate of the Fourier local convolution of 1.

    With ``use_subsequence`` each sweep point is replaced by the largest
    value over the next period of selected degrees, so the fit follows the
    envelope instead of the zero crossings.
    """
    d = as_dim(d)
    sweep = geometric_sweep(*L_range)

    def value(L):
        return local_convolution(d, KernelSpec.sphere(d, L), ONE, delta)

    if use_subsequence:
        sub = select_subsequence(d, delta, xi, L_max=2 * sweep[-1] + 64, L_min=sweep[0])
        pts, rows = [], []
        for L0 in sweep:
            group = next(g for g in sub.periods if g[0] >= L0)
            vals = [(L, value(L)) for L in group]
            rows.extend(vals)
            pts.append(max(vals, key=lambda p: abs(p[1])))
    else:
        pts = rows = [(L, value(L)) for L in sweep]
    if out:
        write_csv(out, ["L", "value"], rows)
    return decay_fit(pts)


def run_filtered_decay(d, delta=DELTA_UPPER, kappa=1, L_range=(64, 2048), window=None, out=None):
    """Fit the decay rate of the filtered local convolution of 1.

    Each sweep point takes the largest value over ``window`` consecutive
    degrees (default: one slow oscillation period, ``ceil(2 pi / delta)``).
    """
    d = as_dim(d)
    g = hermite_filter(kappa)

    def value(L):
        return local_convolution(d, KernelSpec.sphere(d, L, g), ONE, delta)

    pts, rows = _windowed(value, geometric_sweep(*L_range), window or _window(delta))
    if out:
        write_csv(out, ["L", "value"], rows)
    return decay_fit(pts)


def run_circle_decay(delta=DELTA_UPPER, L_range=(64, 2048), window=None, out=None):
    """Fit the decay rate of the circle local convolution of 1."""
    pts, rows = _windowed(lambda L: circle_local_convolution(L, delta),
                          geometric_sweep(*L_range), window or _window(delta))
    if out:
        write_csv(out, ["L", "value"], rows)
    return decay_fit(pts)


def fourier_filtered_ratio(d, delta, L, kappa=1):
    """``|filtered| / |Fourier|`` local convolution of 1 at one degree."""
    v = local_convolution(d, KernelSpec.sphere(d, L), ONE, delta)
    w = local_convolution(d, KernelSpec.sphere(d, L, hermite_filter(kappa)), ONE, delta)
    return abs(w) / abs(v)


LEMMAS = ("2.3", "2.4", "2.7")


def asymp_error_rows(lemma, p, theta, Ls, kappa=1):
    """Rows ``(L, exact, formula, abs_err, rel_env_err)`` for one expansion."""
    if lemma not in LEMMAS:
        raise ValueError(f"lemma must be one of {LEMMAS}")
    t = np.cos(theta)
    f = hermite_filter(kappa)
    rows = []
    for L in Ls:
        if lemma == "2.3":
            r = asy.dirichlet_one_term(p, L, theta)
            exact = dirichlet_closed(p, L, t)
        elif lemma == "2.4":
            r = asy.dirichlet_two_term(p, L, theta)
            exact = dirichlet_closed(p, L, t)
        else:
            r = asy.filtered_kernel_asymp(p, f, L, theta)
            exact = filtered_sbp(p, f, L, kappa + 3, t)
        err = abs(exact - float(r.value))
        rows.append((L, exact, float(r.value), err, err / float(r.envelope)))
    return rows


def doubling_bases(L_range=(64, 2048)):
    """Sweep degrees whose double still lies in the range."""
    return [L for L in geometric_sweep(*L_range) if 2 * L <= L_range[1]]


def doubling_ratios(errors, bases):
    """``e(2L) / e(L)`` for each base degree ``L``; ``errors`` maps degree to error."""
    return [errors[2 * L] / errors[L] for L in bases]


def order_sweep(lemma, p, theta, L_range=(64, 2048), kappa=1):
    """Envelope-relative errors on the sweep and on all doubled degrees."""
    sweep = geometric_sweep(*L_range)
    Ls = sorted(set(sweep) | {2 * L for L in doubling_bases(L_range)})
    return {row[0]: row[4] for row in asymp_error_rows(lemma, p, theta, Ls, kappa)}


def endpoint_slope(alpha, L_range=(64, 2048)):
    """Slope of ``log v_L(1, 1)`` against ``log L`` for ``alpha = beta``."""
    p = JacobiParams(alpha, alpha)
    return decay_fit([(L, dirichlet_closed(p, L, 1.0)) for L in geometric_sweep(*L_range)])
