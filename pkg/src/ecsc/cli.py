"""Command-line interface: energies, reference tables, sweeps, wavefunctions."""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .core import (
    ScreeningSpec,
    SecondOrderVariant,
    ValidationError,
    make_unit_system,
    state_from_label,
)
from .perturbation import ground_wavefunction, moderated_validity_radius, total_energy
from .potential import effective_potential
from .radial import (
    IterationLimitError,
    NoBoundStateError,
    SolverConfig,
    default_solver_config,
    solve_bound_state,
)
from .tables import TABLES, reproduce_table, scan_delta, write_text


def _parse_units(text: str):
    if text in ("atomic", "hbar2m"):
        return make_unit_system(text)
    if text.startswith("custom:"):
        try:
            h, m = (float(v) for v in text[len("custom:"):].split(","))
        except ValueError:
            raise ValidationError(f"cannot parse units {text!r}; expected custom:HBAR,MASS")
        return make_unit_system(hbar=h, mass=m)
    raise ValidationError(f"unknown units {text!r}; expected atomic, hbar2m or custom:HBAR,MASS")


def _add_common(parser: argparse.ArgumentParser, with_state=True) -> None:
    if with_state:
        parser.add_argument("--state", required=True, help="spectroscopic label, e.g. 1s, 2p, 3d")
    parser.add_argument("--A", type=float, default=1.0, help="potential strength (default 1)")
    parser.add_argument("--units", default="atomic",
                        help="atomic | hbar2m | custom:HBAR,MASS (default atomic)")
    parser.add_argument("--variant", choices=("truncated", "full"), default="truncated",
                        help="second-order closed form for the first excited level")


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("csv", "md"), default="md")
    parser.add_argument("--out", default=None, help="output path (default stdout)")


def _emit(text: str, out_path) -> None:
    write_text(text, out_path if out_path is not None else sys.stdout)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ecsc",
        description="Bound states of the exponential-cosine-screened Coulomb potential",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_energy = sub.add_parser("energy", help="closed-form level energy with its breakdown")
    _add_common(p_energy)
    p_energy.add_argument("--delta", type=float, required=True, help="screening parameter")

    p_table = sub.add_parser("table", help="recompute a bundled reference table and diff it")
    p_table.add_argument("id", choices=sorted(TABLES) + [t.lower() for t in sorted(TABLES)],
                         help="table identifier T1..T6")
    p_table.add_argument("--variant", choices=("truncated", "full"), default="truncated")
    _add_output(p_table)

    p_scan = sub.add_parser("scan", help="sweep the screening parameter")
    _add_common(p_scan)
    p_scan.add_argument("--delta-start", type=float, required=True)
    p_scan.add_argument("--delta-end", type=float, required=True)
    p_scan.add_argument("--steps", type=int, required=True)
    p_scan.add_argument("--with-oracle", action="store_true",
                        help="also solve each point with the shooting solver")
    _add_output(p_scan)

    p_wf = sub.add_parser("wavefunction",
                          help="sample the moderated analytic ground-level wavefunction (n = 0)")
    _add_common(p_wf)
    p_wf.add_argument("--delta", type=float, required=True)
    p_wf.add_argument("--rmax", type=float, default=None, help="sampling cutoff")
    p_wf.add_argument("--points", type=int, default=1000)
    p_wf.add_argument("--renormalize", action="store_true")
    _add_output(p_wf)

    p_or = sub.add_parser("oracle", help="solve the radial equation numerically")
    _add_common(p_or)
    p_or.add_argument("--delta", type=float, required=True)
    p_or.add_argument("--g", type=float, default=1.0, help="cosine factor (0 gives pure Yukawa)")
    p_or.add_argument("--step", type=float, default=None, help="override grid spacing")
    p_or.add_argument("--rmax", type=float, default=None, help="override grid cutoff")
    p_or.add_argument("--out", default=None, help="dump the wavefunction as two-column text")

    return parser


def _cmd_energy(args) -> int:
    units = _parse_units(args.units)
    state = state_from_label(args.state)
    spec = ScreeningSpec(delta=args.delta, strength=args.A)
    breakdown = total_energy(state, spec, units, SecondOrderVariant(args.variant))
    print(f"state {args.state} (n={state.n}, l={state.ell})  "
          f"units hbar={units.hbar:g} mass={units.mass:g}  A={args.A:g} delta={args.delta:g}")
    print(f"  E0           {breakdown.e0:+.10g}")
    print(f"  A*delta      {breakdown.linear_shift:+.10g}")
    print(f"  E1           {breakdown.e1:+.10g}")
    print(f"  E2           {breakdown.e2:+.10g}"
          + ("   (none: no closed form for n > 2)" if breakdown.first_order_only else ""))
    print(f"  total        {breakdown.total:+.10g}")
    return 0


def _cmd_table(args) -> int:
    result = reproduce_table(args.id.upper(), SecondOrderVariant(args.variant))
    text = result.to_csv_text() if args.format == "csv" else result.to_markdown_text()
    _emit(text, args.out)
    if args.out is not None:
        print(result.summary())
    return 0 if result.passed else 1


def _cmd_scan(args) -> int:
    units = _parse_units(args.units)
    state = state_from_label(args.state)
    result = scan_delta(
        state, args.A, units, args.delta_start, args.delta_end, args.steps,
        with_oracle=args.with_oracle, variant=SecondOrderVariant(args.variant),
    )
    text = result.to_csv_text() if args.format == "csv" else result.to_markdown_text()
    _emit(text, args.out)
    return 0


def _cmd_wavefunction(args) -> int:
    units = _parse_units(args.units)
    state = state_from_label(args.state)
    if state.n != 0:
        print("the analytic moderated wavefunction is available for n = 0 levels only",
              file=sys.stderr)
        return 2
    spec = ScreeningSpec(delta=args.delta, strength=args.A)
    psi, poly = ground_wavefunction(state.ell, spec, units, renormalize=args.renormalize)
    beta = units.mass * args.A / ((state.ell + 1) * units.hbar**2)
    r_max = args.rmax
    if r_max is None:
        # stay inside the decaying window of the asymptotic closed form
        r_max = min(25.0 / beta, moderated_validity_radius(state.ell, spec, units))
    grid = np.linspace(r_max / args.points, r_max, args.points)
    values = psi(grid)
    lines = ["r,psi"]
    lines += [f"{r:.9g},{v:.9g}" for r, v in zip(grid, values)]
    _emit("\n".join(lines) + "\n", args.out)
    if args.out is not None:
        print("exponent coefficients:", ", ".join(f"p{i+1}={p:.6g}"
                                                  for i, p in enumerate(poly.as_tuple())))
    return 0


def _cmd_oracle(args) -> int:
    units = _parse_units(args.units)
    state = state_from_label(args.state)
    spec = ScreeningSpec(delta=args.delta, strength=args.A, g=args.g)
    config = default_solver_config(state, spec, units)
    if args.step is not None or args.rmax is not None:
        config = SolverConfig(
            step=args.step if args.step is not None else config.step,
            r_max=args.rmax if args.rmax is not None else config.r_max,
        )
    potential = lambda r: effective_potential(r, spec, state.ell, units)
    try:
        rf = solve_bound_state(potential, state, units, config)
    except NoBoundStateError as exc:
        print(f"no bound state: {exc}", file=sys.stderr)
        return 1
    except IterationLimitError as exc:
        print(f"did not converge: {exc} (bracket {exc.bracket})", file=sys.stderr)
        return 1
    print(f"numeric energy  {rf.energy:+.10g}   nodes={rf.node_count} "
          f"converged={rf.converged}")
    if spec.g == 1.0:
        analytic = total_energy(state, spec, units, SecondOrderVariant(args.variant)).total
        print(f"analytic total  {analytic:+.10g}   difference {rf.energy - analytic:+.3e}")
    if args.out is not None:
        rf.dump_two_column(args.out)
    return 0


_COMMANDS = {
    "energy": _cmd_energy,
    "table": _cmd_table,
    "scan": _cmd_scan,
    "wavefunction": _cmd_wavefunction,
    "oracle": _cmd_oracle,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValidationError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
