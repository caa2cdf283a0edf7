"""Command-line front end: one subcommand per scenario.

Subcommands
-----------
decay-ensemble    N atoms in cells with click detectors; blackening curve
                  and survivor excited population over time.
conditional-state Analytic no-emission conditioning of one atom (no
                  sampling): excited probability and ground fidelity.
ev                Two-splitter interferometer with optional blocker:
                  exact outcome probabilities, optionally sampled shots.
master-check      Trajectory average vs the master-equation oracle;
                  exits 3 when the deviation exceeds the tolerance.

Every run is deterministic under a fixed --seed, independent of thread
count (cap threads with the NULLSHADOW_THREADS environment variable).
Exit codes: 0 success, 1 I/O failure, 2 usage/configuration error,
3 oracle tolerance exceeded.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Sequence

import numpy as np

from . import __version__
from .core import GROUND, AtomParams, ConfigurationError, QubitState, density_from_state, fidelity, normalize
from .dynamics import conditional_excited_prob
from .ensemble import EnsembleConfig, run_ensemble, run_trajectories, survivor_state, trajectory_state_series
from .interferometer import EVConfig, detection_probs
from .master import MasterRunConfig, average_trajectories, integrate_master, max_elementwise_deviation
from .output import OutputRecord, write_record
from .streams import uniforms_at


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nullshadow",
        description="Quantum-trajectory simulator: decaying two-level atoms, "
        "null-measurement conditioning, and a blocker interferometer.",
        epilog="exit codes: 0 success, 1 I/O failure, 2 usage/configuration error, "
        "3 oracle tolerance exceeded (master-check)",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "decay-ensemble",
        help="simulate N atoms in detector cells and tabulate the blackening curve",
        epilog="output columns: t, blackened_count, blackened_fraction, "
        "survivor_excited_prob",
    )
    p.add_argument("--n-atoms", type=int, required=True, help="number of atoms / cells")
    _add_state_flags(p)
    _add_atom_flags(p)
    p.add_argument("--horizon", type=float, required=True, help="simulated time span")
    p.add_argument("--grid", type=int, default=51, help="number of grid times incl. 0 and horizon")
    p.add_argument("--seed", type=int, default=0, help="base seed for per-atom substreams")
    p.add_argument(
        "--premeasure",
        action="store_true",
        help="projectively collapse every atom to ground/excited at t=0 first",
    )
    _add_output_flags(p)
    p.set_defaults(func=cmd_decay_ensemble)

    p = sub.add_parser(
        "conditional-state",
        help="analytic survivor state under no-emission conditioning (no sampling)",
        epilog="output columns: t, excited_prob, fidelity_with_ground",
    )
    p.add_argument("--p-excited", type=float, required=True, help="initial excited probability")
    p.add_argument("--gamma", type=float, default=1.0, help="spontaneous decay rate")
    p.add_argument("--horizon", type=float, required=True, help="last tabulated time")
    p.add_argument("--grid", type=int, default=51, help="number of grid times incl. 0 and horizon")
    _add_output_flags(p)
    p.set_defaults(func=cmd_conditional_state)

    p = sub.add_parser(
        "ev",
        help="two-splitter interferometer with optional blocker",
        epilog="output columns: outcome, probability (plus count, frequency when "
        "--shots > 0); outcome order is D1, D2, Absorbed",
    )
    p.add_argument("--blocker", choices=["none", "a", "b"], default="none", help="blocked arm")
    p.add_argument("--t1", type=float, default=0.5, help="power transmissivity of splitter 1")
    p.add_argument("--t2", type=float, default=0.5, help="power transmissivity of splitter 2")
    p.add_argument("--phase-a", type=float, default=0.0, help="arm A propagation phase (rad)")
    p.add_argument("--phase-b", type=float, default=0.0, help="arm B propagation phase (rad)")
    p.add_argument("--shots", type=int, default=0, help="sampled photons (0 = exact only)")
    p.add_argument("--seed", type=int, default=0, help="base seed for shot substreams")
    _add_output_flags(p)
    p.set_defaults(func=cmd_ev)

    p = sub.add_parser(
        "master-check",
        help="compare the trajectory average against the master-equation oracle",
        epilog="output columns: t, rho00_master, rho11_master, re_rho01_master, "
        "im_rho01_master, rho00_traj, rho11_traj, re_rho01_traj, im_rho01_traj, "
        "rho11_analytic; exits 3 when max_deviation exceeds --tol",
    )
    p.add_argument("--p-excited", type=float, required=True, help="initial excited probability")
    _add_atom_flags(p)
    p.add_argument("--n-traj", type=int, required=True, help="number of trajectories")
    p.add_argument("--horizon", type=float, required=True, help="comparison time span")
    p.add_argument("--dt", type=float, default=0.002, help="master integration step")
    p.add_argument("--grid", type=int, default=50, help="approximate number of comparison times")
    p.add_argument("--seed", type=int, default=0, help="base seed for trajectory substreams")
    p.add_argument(
        "--tol",
        type=float,
        default=None,
        help="max allowed elementwise deviation (default 5/sqrt(n-traj))",
    )
    _add_output_flags(p)
    p.set_defaults(func=cmd_master_check)

    return parser


def _add_state_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p-excited", type=float, default=None, help="initial excited probability")
    p.add_argument("--a0-re", type=float, default=None, help="Re of the ground amplitude")
    p.add_argument("--a0-im", type=float, default=None, help="Im of the ground amplitude")
    p.add_argument("--a1-re", type=float, default=None, help="Re of the excited amplitude")
    p.add_argument("--a1-im", type=float, default=None, help="Im of the excited amplitude")


def _add_atom_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--gamma", type=float, default=1.0, help="spontaneous decay rate")
    p.add_argument("--e0", type=float, default=0.0, help="ground level energy")
    p.add_argument("--e1", type=float, default=1.0, help="excited level energy")


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--format", choices=["csv", "json"], default="json", help="output format")


def _initial_state(args: argparse.Namespace) -> QubitState:
    amp_flags = [args.a0_re, args.a0_im, args.a1_re, args.a1_im]
    if args.p_excited is not None:
        if any(v is not None for v in amp_flags):
            raise ConfigurationError("give either --p-excited or amplitude flags, not both")
        return QubitState.from_excited_probability(args.p_excited)
    if all(v is None for v in amp_flags):
        raise ConfigurationError("an initial state is required: --p-excited or amplitude flags")
    a0 = complex(args.a0_re or 0.0, args.a0_im or 0.0)
    a1 = complex(args.a1_re or 0.0, args.a1_im or 0.0)
    return normalize(QubitState(a0, a1))


def cmd_decay_ensemble(args: argparse.Namespace) -> int:
    initial = _initial_state(args)
    params = AtomParams(e0=args.e0, e1=args.e1, gamma=args.gamma)
    cfg = EnsembleConfig(
        n_atoms=args.n_atoms,
        initial=initial,
        params=params,
        horizon=args.horizon,
        grid_points=args.grid,
        base_seed=args.seed,
        premeasure=args.premeasure,
    )
    stats = run_ensemble(cfg)
    rows = [
        [
            float(t),
            int(c),
            int(c) / cfg.n_atoms,
            float(stats.survivor_excited_prob[k]),
        ]
        for k, (t, c) in enumerate(zip(stats.grid, stats.blackened_count))
    ]
    record = OutputRecord(
        scenario="decay-ensemble",
        seed=args.seed,
        config={
            "n_atoms": cfg.n_atoms,
            "a0": [initial.a0.real, initial.a0.imag],
            "a1": [initial.a1.real, initial.a1.imag],
            "p_excited": initial.excited_population,
            "gamma": args.gamma,
            "e0": args.e0,
            "e1": args.e1,
            "horizon": args.horizon,
            "grid": args.grid,
            "premeasure": args.premeasure,
        },
        summary={
            "fraction_blackened_final": stats.fraction_blackened_final,
            "blackened_final": int(stats.blackened_count[-1]),
        },
        columns=["t", "blackened_count", "blackened_fraction", "survivor_excited_prob"],
        rows=rows,
    )
    write_record(record, args.out, args.format)
    return 0


def cmd_conditional_state(args: argparse.Namespace) -> int:
    initial = QubitState.from_excited_probability(args.p_excited)
    params = AtomParams(e0=0.0, e1=1.0, gamma=args.gamma)
    if args.horizon <= 0.0:
        raise ConfigurationError(f"horizon must be positive, got {args.horizon}")
    if args.grid < 2:
        raise ConfigurationError(f"grid must be >= 2, got {args.grid}")
    grid = np.linspace(0.0, args.horizon, args.grid)
    rows = []
    for t in grid:
        state = survivor_state(float(t), initial, params)
        rows.append(
            [
                float(t),
                conditional_excited_prob(args.p_excited, args.gamma, float(t)),
                fidelity(GROUND, state),
            ]
        )
    record = OutputRecord(
        scenario="conditional-state",
        seed=None,
        config={
            "p_excited": args.p_excited,
            "gamma": args.gamma,
            "horizon": args.horizon,
            "grid": args.grid,
        },
        summary={
            "final_excited_prob": rows[-1][1],
            "final_fidelity_with_ground": rows[-1][2],
        },
        columns=["t", "excited_prob", "fidelity_with_ground"],
        rows=rows,
    )
    write_record(record, args.out, args.format)
    return 0


def cmd_ev(args: argparse.Namespace) -> int:
    cfg = EVConfig(
        splitter1_transmissivity=args.t1,
        splitter2_transmissivity=args.t2,
        phase_a=args.phase_a,
        phase_b=args.phase_b,
        blocker=None if args.blocker == "none" else args.blocker,
    )
    probs = detection_probs(cfg)
    if args.shots < 0:
        raise ConfigurationError(f"shots must be nonnegative, got {args.shots}")
    summary = {
        "p_d1": probs.p_d1,
        "p_d2": probs.p_d2,
        "p_absorbed": probs.p_absorbed,
        "shots": args.shots,
    }
    if args.shots > 0:
        # Same thresholds and category order as sample_photon, vectorized.
        u = uniforms_at(args.seed, np.arange(args.shots), 0)
        n_d1 = int(np.count_nonzero(u < probs.p_d1))
        n_d2 = int(np.count_nonzero(u < probs.p_d1 + probs.p_d2)) - n_d1
        counts = [n_d1, n_d2, args.shots - n_d1 - n_d2]
        summary["counts"] = {"D1": counts[0], "D2": counts[1], "Absorbed": counts[2]}
        columns = ["outcome", "probability", "count", "frequency"]
        rows = [
            [tag, p, c, c / args.shots]
            for tag, p, c in zip(("D1", "D2", "Absorbed"), probs, counts)
        ]
    else:
        columns = ["outcome", "probability"]
        rows = [[tag, p] for tag, p in zip(("D1", "D2", "Absorbed"), probs)]
    record = OutputRecord(
        scenario="ev",
        seed=args.seed,
        config={
            "blocker": args.blocker,
            "t1": args.t1,
            "t2": args.t2,
            "phase_a": args.phase_a,
            "phase_b": args.phase_b,
            "shots": args.shots,
        },
        summary=summary,
        columns=columns,
        rows=rows,
    )
    write_record(record, args.out, args.format)
    return 0


def cmd_master_check(args: argparse.Namespace) -> int:
    initial = QubitState.from_excited_probability(args.p_excited)
    params = AtomParams(e0=args.e0, e1=args.e1, gamma=args.gamma)
    if args.n_traj < 1:
        raise ConfigurationError(f"n-traj must be >= 1, got {args.n_traj}")
    if args.grid < 2:
        raise ConfigurationError(f"grid must be >= 2, got {args.grid}")
    tol = args.tol if args.tol is not None else 5.0 / math.sqrt(args.n_traj)

    ecfg = EnsembleConfig(
        n_atoms=args.n_traj,
        initial=initial,
        params=params,
        horizon=args.horizon,
        grid_points=2,
        base_seed=args.seed,
    )
    jump_times = [r.jump_time for r in run_trajectories(ecfg)]

    n_steps = int(round(args.horizon / args.dt))
    mcfg = MasterRunConfig(
        dt=args.dt,
        t_max=args.horizon,
        record_every=max(1, n_steps // (args.grid - 1)),
    )
    series = integrate_master(density_from_state(initial), params, mcfg)
    averaged = average_trajectories(
        trajectory_state_series(initial, params, jump_times, series.times)
    )
    deviation = max_elementwise_deviation(averaged, series.matrices)

    analytic = args.p_excited * np.exp(-args.gamma * series.times)
    population_error = float(np.max(np.abs(series.rho11 - analytic)))

    rows = []
    for k, t in enumerate(series.times):
        m, a = series.matrices[k], averaged[k]
        rows.append(
            [
                float(t),
                m.rho00,
                m.rho11,
                m.rho01.real,
                m.rho01.imag,
                a.rho00,
                a.rho11,
                a.rho01.real,
                a.rho01.imag,
                float(analytic[k]),
            ]
        )
    record = OutputRecord(
        scenario="master-check",
        seed=args.seed,
        config={
            "p_excited": args.p_excited,
            "gamma": args.gamma,
            "e0": args.e0,
            "e1": args.e1,
            "n_traj": args.n_traj,
            "horizon": args.horizon,
            "dt": args.dt,
            "grid": args.grid,
            "tol": tol,
        },
        summary={
            "max_deviation": deviation,
            "tol": tol,
            "passed": deviation <= tol,
            "max_population_error_vs_analytic": population_error,
        },
        columns=[
            "t",
            "rho00_master",
            "rho11_master",
            "re_rho01_master",
            "im_rho01_master",
            "rho00_traj",
            "rho11_traj",
            "re_rho01_traj",
            "im_rho01_traj",
            "rho11_analytic",
        ],
        rows=rows,
    )
    write_record(record, args.out, args.format)
    return 0 if deviation <= tol else 3


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigurationError as err:
        print(f"nullshadow: error: {err}", file=sys.stderr)
        return 2
    except ValueError as err:
        print(f"nullshadow: error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"nullshadow: error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
