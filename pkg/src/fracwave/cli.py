"""Command line interface.

    fracwave experiment --id 1 --alpha 0.2,0.4,0.8 --out tables --format csv
    fracwave solve --alpha 0.4 --m 6 --n 8 --u0 x^-0.49 --f zero --dump u.bin
    fracwave validate --suite psi
    fracwave weights --alpha 0.5 --count 16

Exit codes: 0 success, 1 usage error, 2 validation failure.
"""

from __future__ import annotations

import argparse
import os
import re
import sys

import numpy as np

from .dg_solver import ForcingSpec, SolverConfig, run
from .experiments import default_specs, run_experiment
from .fem1d import PowerSingular, SpaceGrid1D, discrete_eigenpairs
from .timegrid import TimeGrid
from .validate import SUITES, validate_lemmas
from .weights import conv_weights

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(1)


class _UsageError(ValueError):
    pass


def _parse_spatial(text: str, grid: SpaceGrid1D):
    """'zero' | 'x^P' (power data) | 'mode:N' (discrete eigenvector)."""
    if text == "zero":
        return None
    m = re.fullmatch(r"x\^(-?\d+(?:\.\d+)?)", text)
    if m:
        return PowerSingular(float(m.group(1)))
    m = re.fullmatch(r"mode:(\d+)", text)
    if m:
        n = int(m.group(1))
        if not 1 <= n <= grid.N:
            raise _UsageError(f"mode index must lie in 1..{grid.N}")
        _, vecs = discrete_eigenpairs(grid)
        return vecs[:, n - 1]
    raise _UsageError(f"cannot parse spatial data {text!r} (use zero, x^P or mode:N)")


def _parse_forcing(text: str, grid: SpaceGrid1D) -> ForcingSpec:
    """'zero' | SPATIAL (constant in time) | 'SPATIAL*t^Q' (separable)."""
    if text == "zero":
        return ForcingSpec.zero()
    if "*t^" in text:
        xs, qs = text.split("*t^", 1)
        X = _parse_spatial(xs, grid)
        if X is None:
            return ForcingSpec.zero()
        return ForcingSpec.separable(X, float(qs))
    X = _parse_spatial(text, grid)
    return ForcingSpec.zero() if X is None else ForcingSpec.constant(X)


def _cmd_experiment(args) -> int:
    alphas = tuple(float(a) for a in args.alpha.split(","))
    time_spec, space_spec = default_specs(args.id, paper_scale=args.paper_scale, alphas=alphas)
    if args.m:
        mlist = tuple(int(v) for v in args.m.split(","))
        space_spec = type(space_spec)(space_spec.exp_id, alphas, "space", mlist, space_spec.n_list, space_spec.ref_m, space_spec.ref_n, space_spec.norm)
    if args.n:
        nlist = tuple(int(v) for v in args.n.split(","))
        time_spec = type(time_spec)(time_spec.exp_id, alphas, "time", time_spec.m_list, nlist, time_spec.ref_m, time_spec.ref_n, time_spec.norm)
    os.makedirs(args.out, exist_ok=True)
    ok = True
    for spec in (time_spec, space_spec):
        rep = run_experiment(spec, paper_scale=args.paper_scale)
        ok = ok and rep.stability_ok
        ext = "csv" if args.format == "csv" else "md"
        path = os.path.join(args.out, f"exp{spec.exp_id}_{spec.vary}.{ext}")
        with open(path, "w") as fh:
            fh.write(rep.to_csv() if args.format == "csv" else rep.to_markdown())
        print(f"wrote {path}")
        for alpha in alphas:
            orders = ", ".join(f"{o:.2f}" for o in rep.orders_for(alpha))
            print(f"  alpha={alpha:g} ({spec.vary}): orders {orders}")
    if not ok:
        print("stability bound violated", file=sys.stderr)
        return 2
    return 0


def _cmd_solve(args) -> int:
    sgrid = SpaceGrid1D(2**args.m)
    tgrid = TimeGrid(1.0, 2**args.n)
    u0 = _parse_spatial(args.u0, sgrid)
    f = _parse_forcing(args.f, sgrid)
    config = SolverConfig(history_mode=args.history)
    traj = run(u0, f, sgrid, tgrid, args.alpha, config)
    print(f"solved: alpha={args.alpha:g} h=2^-{args.m} tau=2^-{args.n}; max_t |U|_L2 = {traj.max_l2():.6e}")
    if args.dump:
        from .trajio import write_trajectory

        write_trajectory(args.dump, traj)
        print(f"wrote {args.dump}")
    return 0


def _cmd_validate(args) -> int:
    res = validate_lemmas(args.suite)
    for line in res.lines:
        print(line)
    print(f"suite {args.suite}: {'ok' if res.ok else 'FAILED'}")
    return 0 if res.ok else 2


def _cmd_weights(args) -> int:
    cw = conv_weights(args.alpha, max(args.count, 2))
    print("j,b_j,w_j")
    for j in range(args.count + 1):
        w = "" if (j == 0 or j >= len(cw.w)) else f"{cw.w[j]:.16e}"
        print(f"{j},{cw.b[j]:.16e},{w}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fracwave", description="DG time stepping for the fractional diffusion-wave equation")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("experiment", help="run a convergence experiment and write its tables")
    e.add_argument("--id", type=int, required=True, choices=(1, 2, 3, 4))
    e.add_argument("--alpha", default="0.2,0.4,0.8", help="comma-separated fractional orders")
    e.add_argument("--paper-scale", action="store_true", help="acknowledge the m=11,n=16 reference cost")
    e.add_argument("--m", default=None, help="comma-separated spatial levels for the space study")
    e.add_argument("--n", default=None, help="comma-separated temporal levels for the time study")
    e.add_argument("--out", required=True, help="output directory for the tables")
    e.add_argument("--format", default="csv", choices=("csv", "md"))
    e.set_defaults(fn=_cmd_experiment)

    s = sub.add_parser("solve", help="one solver run")
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--m", type=int, required=True, help="h = 2^-m")
    s.add_argument("--n", type=int, required=True, help="tau = 2^-n")
    s.add_argument("--u0", default="zero", help="zero | x^P | mode:N")
    s.add_argument("--f", default="zero", help="zero | x^P | x^P*t^Q | mode:N[*t^Q]")
    s.add_argument("--history", default="fft", choices=("naive", "fft"))
    s.add_argument("--dump", default=None, help="write the trajectory to this file")
    s.set_defaults(fn=_cmd_solve)

    v = sub.add_parser("validate", help="run a validation suite")
    v.add_argument("--suite", required=True, choices=SUITES)
    v.set_defaults(fn=_cmd_validate)

    w = sub.add_parser("weights", help="print the convolution weights")
    w.add_argument("--alpha", type=float, required=True)
    w.add_argument("--count", type=int, required=True)
    w.set_defaults(fn=_cmd_weights)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.fn(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return code


if __name__ == "__main__":
    sys.exit(main())
