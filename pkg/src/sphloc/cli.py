"""Command-line entry point: ``sphloc <subcommand> [options]``."""

import argparse
import sys
from math import pi

import numpy as np

from . import experiments as ex
from .filters import hermite_filter
from .kernels import KernelSpec
from .localisation import ONE, local_convolution
from .special import JacobiParams, SphereDim


def _common(p, d_default=3, delta_default=None):
    p.add_argument("--d", type=int, default=d_default, help="sphere dimension")
    if delta_default is not None:
        p.add_argument("--delta", type=float, default=delta_default, help="cap radius (radians)")
    p.add_argument("--out", default=None, help="CSV output path (default: stdout)")
    p.add_argument("--seed", type=int, default=None,
                   help="seed for randomised runs (all commands here are deterministic)")


def _sweep_args(p):
    p.add_argument("--L-min", type=int, default=64)
    p.add_argument("--L-max", type=int, default=2048)


def _kernel_choice(p):
    p.add_argument("--kind", choices=("fourier", "filtered"), default="fourier")
    p.add_argument("--filter-kappa", type=int, default=1)


def _params(args):
    if args.alpha is not None or args.beta is not None:
        if args.alpha is None or args.beta is None:
            raise SystemExit("--alpha and --beta must be given together")
        return JacobiParams(args.alpha, args.beta)
    return SphereDim(args.d)


def _jacobi(args):
    p = _params(args)
    return p.jacobi if isinstance(p, SphereDim) else p


def _dest(args):
    return args.out or sys.stdout


def cmd_kernel(args):
    params = _params(args)
    g = hermite_filter(args.filter_kappa) if args.kind == "filtered" else None
    k = KernelSpec(params, args.L, g)
    theta = np.linspace(0.0, pi, args.theta_grid)
    vals = k(np.cos(theta))
    ex.write_csv(_dest(args), ["theta", "value"], zip(theta, vals))


def cmd_localconv(args):
    g = hermite_filter(args.filter_kappa) if args.kind == "filtered" else None

    def value(L):
        return local_convolution(args.d, KernelSpec.sphere(args.d, L, g), ONE, args.delta, args.psi)

    if args.sweep:
        lo, hi = (int(x) for x in args.sweep.split(":"))
        ex.write_csv(_dest(args), ["L", "value"], [(L, value(L)) for L in range(lo, hi + 1)])
    else:
        print(ex.fmt_float(value(args.L)))


def cmd_asymp_error(args):
    p = _jacobi(args)
    Ls = ex.geometric_sweep(args.L_min, args.L_max)
    rows = ex.asymp_error_rows(args.lemma, p, args.theta, Ls, args.filter_kappa)
    ex.write_csv(_dest(args), ["L", "exact", "formula", "abs_err", "rel_env_err"], rows)


def _report(fit):
    print(f"slope={ex.fmt_float(fit.slope)} intercept={ex.fmt_float(fit.intercept)} "
          f"r2={ex.fmt_float(fit.r2)} points={len(fit.points)}", file=sys.stderr)


def cmd_decay_fourier(args):
    _report(ex.run_fourier_decay(args.d, args.delta, (args.L_min, args.L_max),
                                 not args.all_degrees, args.xi, _dest(args)))


def cmd_decay_filtered(args):
    _report(ex.run_filtered_decay(args.d, args.delta, args.filter_kappa,
                                  (args.L_min, args.L_max), args.window, _dest(args)))


def cmd_decay_circle(args):
    _report(ex.run_circle_decay(args.delta, (args.L_min, args.L_max), args.window, _dest(args)))


def build_parser():
    ap = argparse.ArgumentParser(prog="sphloc", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernel", help="tabulate a kernel on a theta grid")
    _common(p)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--L", type=int, required=True)
    _kernel_choice(p)
    p.add_argument("--theta-grid", type=int, default=257)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("localconv", help="local convolution of the constant 1")
    _common(p, delta_default=ex.DELTA_UPPER)
    p.add_argument("--L", type=int, default=64)
    _kernel_choice(p)
    p.add_argument("--psi", type=float, default=0.0)
    p.add_argument("--sweep", default=None, metavar="L0:L1")
    p.set_defaults(func=cmd_localconv)

    p = sub.add_parser("asymp-error", help="exact kernel against an asymptotic formula")
    _common(p, d_default=2)
    p.add_argument("--lemma", choices=ex.LEMMAS, required=True,
                   help="2.3 one-term Dirichlet, 2.4 two-term Dirichlet, 2.7 filtered")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--theta", type=float, default=1.0)
    p.add_argument("--filter-kappa", type=int, default=1)
    _sweep_args(p)
    p.set_defaults(func=cmd_asymp_error)

    p = sub.add_parser("decay-fourier", help="slope of the Fourier local convolution")
    _common(p, delta_default=ex.DELTA_LOWER)
    _sweep_args(p)
    p.add_argument("--xi", type=float, default=ex.XI_DEFAULT)
    p.add_argument("--all-degrees", action="store_true",
                   help="fit raw sweep values instead of per-period maxima on the subsequence")
    p.set_defaults(func=cmd_decay_fourier)

    p = sub.add_parser("decay-filtered", help="slope of the filtered local convolution")
    _common(p, delta_default=ex.DELTA_UPPER)
    _sweep_args(p)
    p.add_argument("--filter-kappa", type=int, default=1)
    p.add_argument("--window", type=int, default=None)
    p.set_defaults(func=cmd_decay_filtered)

    p = sub.add_parser("decay-circle", help="slope of the circle local convolution")
    _common(p, delta_default=ex.DELTA_UPPER)
    _sweep_args(p)
    p.add_argument("--window", type=int, default=None)
    p.set_defaults(func=cmd_decay_circle)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.seed is not None:
        np.random.seed(args.seed)
    try:
        args.func(args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
