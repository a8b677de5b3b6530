"""Command-line front end.

Subcommands: ``run`` (one experiment), ``sweep-cycles`` / ``sweep-absorption``
/ ``grid`` (CSV parameter sweeps), ``oracle`` (Monte Carlo cross-check), and
``verify`` (the named invariant suite).  Output goes to stdout or, with
``--out``, to a file; all output is deterministic byte for byte for identical
flags and seed.  Exit codes: 0 success, 1 verification/concordance failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import verify as verify_mod
from .evolution import CycleConfig, ParticleModel, evolve
from .oracle import TrajectoryConfig, compare, estimate
from .sweep import (
    format_real,
    run_single,
    sweep_absorption,
    sweep_cycles,
    sweep_grid,
    to_csv,
)

__all__ = ["main"]

_Z_LIMIT = 4.0


def _absorption_arg(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"absorption must be in [0, 1], got {text}")
    return v


def _theta_arg(text: str):
    if text == "auto":
        return None
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"theta must be 'auto' or radians, got {text!r}"
        ) from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError("theta must be finite")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return v


def _steps_arg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 2:
        raise argparse.ArgumentTypeError(f"must be >= 2, got {text}")
    return v


def _seed_arg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be in [0, 2^64)")
    return v


def _add_common(p: argparse.ArgumentParser, *, absorption: bool = True) -> None:
    p.add_argument(
        "--model",
        choices=[m.value for m in ParticleModel],
        default=ParticleModel.COHERENT.value,
        help="particle model in the interrogated arm (default: coherent)",
    )
    if absorption:
        p.add_argument(
            "--absorption",
            type=_absorption_arg,
            default=1.0,
            metavar="A",
            help="per-cycle absorption probability in [0, 1] (default: 1.0)",
        )
    p.add_argument(
        "--theta",
        type=_theta_arg,
        default=None,
        metavar="RAD",
        help="per-cycle rotation: 'auto' (pi/2N, the default) or radians",
    )
    p.add_argument(
        "--out",
        default=None,
        metavar="PATH",
        help="write output to PATH instead of stdout",
    )


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        # newline='' keeps the LF line terminators exactly as written
        with open(out, "w", newline="") as f:
            f.write(text)


def _cmd_run(args) -> int:
    record = run_single(
        CycleConfig(model=args.model, a=args.absorption, n=args.cycles, theta=args.theta)
    )
    _emit(to_csv([record]), args.out)
    return 0


def _cmd_sweep_cycles(args) -> int:
    records = sweep_cycles(args.absorption, args.cycles, args.model, theta=args.theta)
    _emit(to_csv(records), args.out)
    return 0


def _cmd_sweep_absorption(args) -> int:
    records = sweep_absorption(args.cycles, args.steps, args.model, theta=args.theta)
    _emit(to_csv(records), args.out)
    return 0


def _cmd_grid(args) -> int:
    records = sweep_grid(args.cycles, args.steps, args.model, theta=args.theta)
    _emit(to_csv(records), args.out)
    return 0


def _cmd_oracle(args) -> int:
    cfg = CycleConfig(model=args.model, a=args.absorption, n=args.cycles, theta=args.theta)
    exact, _ = evolve(cfg)
    est = estimate(TrajectoryConfig(cycle=cfg, trajectories=args.trajectories, seed=args.seed))
    z = compare(est, exact)
    lines = ["outcome,count,p_hat,p_exact,stderr,z"]
    for i, name in enumerate(("h", "v", "b")):
        lines.append(
            ",".join(
                (
                    name,
                    str(est.counts[i]),
                    format_real(est.p_hat[i]),
                    format_real(exact[i]),
                    format_real(est.stderr[i]),
                    format_real(float(z[i])),
                )
            )
        )
    max_z = float(max(abs(float(v)) for v in z))
    verdict = "PASS" if max_z <= _Z_LIMIT else "FAIL"
    lines.append(f"{verdict} max |z| = {format_real(max_z)} (tol {format_real(_Z_LIMIT)})")
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if max_z <= _Z_LIMIT else 1


def _cmd_verify(args) -> int:
    results = verify_mod.run_checks()
    _emit(verify_mod.render_report(results), args.out)
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ifmsim",
        description=(
            "Simulate interaction-free interrogation of a partially absorbing "
            "particle in an iterated polarization interferometer."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="evaluate one configuration, emit one CSV row")
    _add_common(p)
    p.add_argument("--cycles", type=_positive_int, required=True, metavar="N",
                   help="number of interrogation cycles")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("sweep-cycles", help="sweep N = 1..max at fixed absorption")
    _add_common(p)
    p.add_argument("--cycles", type=_positive_int, default=250, metavar="N",
                   help="maximum cycle count (default: 250)")
    p.set_defaults(func=_cmd_sweep_cycles)

    p = sub.add_parser("sweep-absorption", help="sweep absorption 0..1 at fixed N")
    _add_common(p, absorption=False)
    p.add_argument("--cycles", type=_positive_int, default=10, metavar="N",
                   help="cycle count (default: 10; 50 and 250 are the other standard regimes)")
    p.add_argument("--steps", type=_steps_arg, default=101, metavar="K",
                   help="number of absorption grid points including both endpoints (default: 101)")
    p.set_defaults(func=_cmd_sweep_absorption)

    p = sub.add_parser("grid", help="full absorption x cycles grid for heatmaps")
    _add_common(p, absorption=False)
    p.add_argument("--cycles", type=_positive_int, default=250, metavar="N",
                   help="maximum cycle count (default: 250)")
    p.add_argument("--steps", type=_steps_arg, default=21, metavar="K",
                   help="number of absorption grid points (default: 21)")
    p.set_defaults(func=_cmd_grid)

    p = sub.add_parser("oracle", help="Monte Carlo cross-check of one configuration")
    _add_common(p)
    p.add_argument("--cycles", type=_positive_int, required=True, metavar="N",
                   help="number of interrogation cycles")
    p.add_argument("--trajectories", type=_positive_int, default=100000, metavar="M",
                   help="number of Monte Carlo trajectories (default: 100000)")
    p.add_argument("--seed", type=_seed_arg, default=0, metavar="S",
                   help="RNG seed; identical seeds reproduce output byte for byte (default: 0)")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("verify", help="run the named invariant suite")
    p.add_argument("--out", default=None, metavar="PATH",
                   help="write the report to PATH instead of stdout")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)
