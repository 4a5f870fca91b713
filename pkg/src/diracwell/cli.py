"""Command-line interface: solve, table1, field, sweep.

Every run writes a JSON manifest recording the configuration, constants,
solved states and output paths. Data files themselves are deterministic;
see the io module. Exit codes: 0 success, 1 computational failure, 2 usage
error.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import re
import sys

import numpy as np

from . import __version__, field as field_mod
from .io import (
    RunManifest,
    constants_snapshot,
    state_summary,
    table_to_csv_text,
    table_to_json_text,
    write_text_atomic,
)
from .limits import sweep as run_sweep
from .reference import (
    E_KIN_TOLERANCE_MEV,
    GROUND_STATE_BENCHMARKS,
    LOG10_KAPPA_TOLERANCE,
    REFERENCE_RADIUS_NM,
    WAVE_NUMBER_RELATIVE_TOLERANCE,
)
from .solver import find_eigenstates
from .units import CODATA2018, WellConfig, to_internal

OUTPUT_DIR_ENV = "DIRACWELL_OUTPUT_DIR"

SOLVE_COLUMNS = [
    "l",
    "n",
    "E_kin_meV",
    "zeta_per_m",
    "xi_per_m",
    "ln_kappa",
    "log10_kappa",
    "skin_depth_nm",
    "boundary_residual",
]

FIELD_COLUMNS = [
    "rho_nm",
    "phi_rad",
    "re_psi1",
    "im_psi1",
    "re_psi4",
    "im_psi4",
    "j_rho",
    "j_phi",
    "j_z",
    "charge_density",
    "region",
]

SWEEP_COLUMNS = [
    "potential_ev",
    "e_kin_mev",
    "zeta_per_m",
    "zeta_infinite_per_m",
    "zeta_ratio",
    "skin_depth_nm",
    "outside_fraction",
]

TABLE1_COLUMNS = [
    "potential_ev",
    "e_kin_mev_ref",
    "e_kin_mev",
    "e_kin_delta_mev",
    "e_kin_pass",
    "zeta_per_m_ref",
    "zeta_per_m",
    "zeta_rel_delta",
    "zeta_pass",
    "xi_per_m_ref",
    "xi_per_m",
    "xi_rel_delta",
    "xi_pass",
    "log10_kappa_ref",
    "log10_kappa",
    "log10_kappa_delta",
    "log10_kappa_pass",
    "row_pass",
]

_STATE_SELECTOR = re.compile(r"^l(\d+)n(\d+)$")


def _output_dir() -> str:
    return os.environ.get(OUTPUT_DIR_ENV, ".")


def _resolve_output(path: str | None) -> str | None:
    if path is None:
        return None
    if os.path.isabs(path):
        return path
    return os.path.join(_output_dir(), path)


def _render(columns, rows, fmt: str) -> str:
    if fmt == "json":
        return table_to_json_text(columns, rows)
    return table_to_csv_text(columns, rows)


def _emit(text: str, output: str | None) -> list[str]:
    if output is None:
        sys.stdout.write(text)
        return []
    write_text_atomic(output, text)
    return [output]


def _manifest_path(command: str, output: str | None) -> str:
    if output is not None:
        return output + ".manifest.json"
    return os.path.join(_output_dir(), f"{command}.manifest.json")


def _solve_rows(states):
    rows = []
    for s in states:
        rows.append(
            {
                "l": s.azimuthal_l,
                "n": s.radial_n,
                "E_kin_meV": s.energy_kinetic_mev,
                "zeta_per_m": s.wave_numbers.zeta_per_m,
                "xi_per_m": s.wave_numbers.xi_per_m,
                "ln_kappa": s.ln_kappa,
                "log10_kappa": s.log10_kappa,
                "skin_depth_nm": field_mod.skin_depth_nm(s),
                "boundary_residual": s.boundary_residual,
            }
        )
    return rows


def _validated_config(parser, radius_nm, potential_ev, l, constants=CODATA2018) -> WellConfig:
    try:
        return to_internal(
            WellConfig(radius_nm=radius_nm, potential_ev=potential_ev, azimuthal_l=l),
            constants,
        )
    except ValueError as exc:
        parser.error(str(exc))


def cmd_solve(parser, args) -> int:
    config = _validated_config(parser, args.radius_nm, args.potential_ev, args.l)
    if args.max_states is not None and args.max_states < 1:
        parser.error("--max-states must be >= 1")
    states = find_eigenstates(config, args.max_states)
    rows = _solve_rows(states)
    output = _resolve_output(args.output)
    paths = _emit(_render(SOLVE_COLUMNS, rows, args.format), output)
    manifest = RunManifest(
        command="solve",
        config=dataclasses.asdict(config),
        states_solved=[state_summary(s) for s in states],
        output_paths=paths,
        tool_version=__version__,
        constants_used=constants_snapshot(CODATA2018),
    )
    manifest_path = _manifest_path("solve", output)
    manifest.output_paths = paths + [manifest_path]
    manifest.write(manifest_path)
    return 0


def cmd_table1(parser, args) -> int:
    constants = CODATA2018
    if args.electron_rest_energy_ev is not None:
        if args.electron_rest_energy_ev <= 0:
            parser.error("--electron-rest-energy-ev must be positive")
        constants = dataclasses.replace(
            CODATA2018, electron_rest_energy_ev=args.electron_rest_energy_ev
        )

    rows = []
    all_pass = True
    states_solved = []
    for bench in GROUND_STATE_BENCHMARKS:
        config = WellConfig(
            radius_nm=REFERENCE_RADIUS_NM, potential_ev=bench.potential_ev, azimuthal_l=0
        )
        ground = find_eigenstates(config, 1, constants=constants)[0]
        states_solved.append(state_summary(ground))
        e_delta = ground.energy_kinetic_mev - bench.e_kin_mev
        zeta_rel = ground.wave_numbers.zeta_per_m / bench.zeta_per_m - 1.0
        xi_rel = ground.wave_numbers.xi_per_m / bench.xi_per_m - 1.0
        k_delta = ground.log10_kappa - bench.log10_kappa
        e_pass = abs(e_delta) <= E_KIN_TOLERANCE_MEV
        zeta_pass = abs(zeta_rel) <= WAVE_NUMBER_RELATIVE_TOLERANCE
        xi_pass = abs(xi_rel) <= WAVE_NUMBER_RELATIVE_TOLERANCE
        k_pass = abs(k_delta) <= LOG10_KAPPA_TOLERANCE
        row_pass = e_pass and zeta_pass and xi_pass and k_pass
        all_pass = all_pass and row_pass
        rows.append(
            {
                "potential_ev": bench.potential_ev,
                "e_kin_mev_ref": bench.e_kin_mev,
                "e_kin_mev": ground.energy_kinetic_mev,
                "e_kin_delta_mev": e_delta,
                "e_kin_pass": e_pass,
                "zeta_per_m_ref": bench.zeta_per_m,
                "zeta_per_m": ground.wave_numbers.zeta_per_m,
                "zeta_rel_delta": zeta_rel,
                "zeta_pass": zeta_pass,
                "xi_per_m_ref": bench.xi_per_m,
                "xi_per_m": ground.wave_numbers.xi_per_m,
                "xi_rel_delta": xi_rel,
                "xi_pass": xi_pass,
                "log10_kappa_ref": bench.log10_kappa,
                "log10_kappa": ground.log10_kappa,
                "log10_kappa_delta": k_delta,
                "log10_kappa_pass": k_pass,
                "row_pass": row_pass,
            }
        )

    output = _resolve_output(args.output)
    paths = _emit(_render(TABLE1_COLUMNS, rows, args.format), output)
    notes = [] if all_pass else ["one or more benchmark rows failed tolerance"]
    if args.electron_rest_energy_ev is not None:
        notes.append("constants overridden via --electron-rest-energy-ev")
    manifest = RunManifest(
        command="table1",
        config={"radius_nm": REFERENCE_RADIUS_NM, "azimuthal_l": 0},
        states_solved=states_solved,
        output_paths=paths,
        tool_version=__version__,
        constants_used=constants_snapshot(constants),
        notes=notes,
    )
    manifest_path = _manifest_path("table1", output)
    manifest.output_paths = paths + [manifest_path]
    manifest.write(manifest_path)
    return 0 if all_pass else 1


def cmd_field(parser, args) -> int:
    match = _STATE_SELECTOR.match(args.state)
    if match is None:
        parser.error(f"state selector must look like l0n1, got {args.state!r}")
    l, n = int(match.group(1)), int(match.group(2))
    if n < 1:
        parser.error("the radial index in the state selector starts at 1")
    if args.samples < 1:
        parser.error("--samples must be >= 1")
    if args.phi_samples < 1:
        parser.error("--phi-samples must be >= 1")
    config = _validated_config(parser, args.radius_nm, args.potential_ev, l)
    rmax = args.rmax_nm if args.rmax_nm is not None else 3.0 * config.radius_nm
    if rmax <= 0:
        parser.error("--rmax-nm must be positive")

    states = find_eigenstates(config)
    if len(states) < n:
        available = ", ".join(f"l{s.azimuthal_l}n{s.radial_n}" for s in states) or "none"
        sys.stderr.write(
            f"state l{l}n{n} does not exist for this well; available: {available}\n"
        )
        return 1
    state = states[n - 1]

    rho = np.linspace(0.0, rmax, args.samples)
    phis = np.linspace(0.0, 2.0 * np.pi, args.phi_samples, endpoint=False)

    norm = None
    if args.normalize == field_mod.UNIT_CHARGE:
        norm = field_mod.normalization_integral(state, config)

    rows = []
    for phi in phis:
        phi_arr = np.full_like(rho, phi)
        psi = field_mod.spinor_vector(state, config, rho, phi_arr)
        j_rho, j_phi, j_z = field_mod.bilinear_current_profiles(state, config, rho, phi_arr)
        f, g = field_mod.radial_profiles(state, config, rho)
        charge = -(f * f + g * g)
        if norm is not None:
            c = CODATA2018
            psi = psi / np.sqrt(norm)
            to_si_j = c.elementary_charge_c * c.speed_of_light_nm_per_s * 1e18 / norm
            j_rho, j_phi, j_z = j_rho * to_si_j, j_phi * to_si_j, j_z * to_si_j
            charge = charge * c.elementary_charge_c * 1e27 / norm
        for i, r in enumerate(rho):
            rows.append(
                {
                    "rho_nm": float(r),
                    "phi_rad": float(phi),
                    "re_psi1": float(psi[i, 0].real),
                    "im_psi1": float(psi[i, 0].imag),
                    "re_psi4": float(psi[i, 3].real),
                    "im_psi4": float(psi[i, 3].imag),
                    "j_rho": float(j_rho[i]),
                    "j_phi": float(j_phi[i]),
                    "j_z": float(j_z[i]),
                    "charge_density": float(charge[i]),
                    "region": "inside" if r <= config.radius_nm else "outside",
                }
            )

    output = _resolve_output(args.output)
    paths = _emit(_render(FIELD_COLUMNS, rows, args.format), output)
    manifest = RunManifest(
        command="field",
        config=dataclasses.asdict(config),
        states_solved=[state_summary(state)],
        output_paths=paths,
        tool_version=__version__,
        constants_used=constants_snapshot(CODATA2018),
        notes=[f"normalization={args.normalize}", f"state=l{l}n{n}"],
    )
    manifest_path = _manifest_path("field", output)
    manifest.output_paths = paths + [manifest_path]
    manifest.write(manifest_path)
    return 0


def _parse_potentials(parser, tokens) -> list[float]:
    values = []
    for token in tokens:
        for piece in token.split(","):
            piece = piece.strip()
            if not piece:
                continue
            try:
                values.append(float(piece))
            except ValueError:
                parser.error(f"bad potential value {piece!r}")
    if not values:
        parser.error("at least one potential is required")
    return values


def cmd_sweep(parser, args) -> int:
    potentials = _parse_potentials(parser, args.potentials)
    for u in potentials:
        _validated_config(parser, args.radius_nm, u, 0)
    notes = []
    if potentials != sorted(potentials):
        notes.append("potentials auto-sorted ascending")

    result = run_sweep(args.radius_nm, potentials)
    report = result.report
    rows = []
    for i, u in enumerate(report.potential_grid_ev):
        rows.append(
            {
                "potential_ev": u,
                "e_kin_mev": report.kinetic_energies_mev[i],
                "zeta_per_m": report.zeta_ground_per_nm[i] * 1e9,
                "zeta_infinite_per_m": report.zeta_infinite_per_nm * 1e9,
                "zeta_ratio": report.zeta_ratios[i],
                "skin_depth_nm": report.skin_depths_nm[i],
                "outside_fraction": report.outside_fractions[i],
            }
        )

    output = _resolve_output(args.output)
    paths = _emit(_render(SWEEP_COLUMNS, rows, args.format), output)

    # per-depth eigenstate tables next to the report (only when writing files)
    states_solved = []
    if output is not None:
        stem, ext = os.path.splitext(output)
        for u in report.potential_grid_ev:
            states = result.states_by_potential[u]
            states_solved.extend(state_summary(s) for s in states)
            u_tag = format(u, ".6g").replace(".", "p")
            path = f"{stem}_u{u_tag}{ext or '.csv'}"
            write_text_atomic(path, _render(SOLVE_COLUMNS, _solve_rows(states), args.format))
            paths.append(path)
    else:
        for u in report.potential_grid_ev:
            states_solved.extend(state_summary(s) for s in result.states_by_potential[u])

    manifest = RunManifest(
        command="sweep",
        config={"radius_nm": args.radius_nm, "potentials_ev": list(report.potential_grid_ev)},
        states_solved=states_solved,
        output_paths=paths,
        tool_version=__version__,
        constants_used=constants_snapshot(CODATA2018),
        notes=notes,
    )
    manifest_path = _manifest_path("sweep", output)
    manifest.output_paths = paths + [manifest_path]
    manifest.write(manifest_path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diracwell",
        description="Bound states, evanescent fields and circulating currents "
        "of a finite cylindrical quantum well.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve bound states and print/write the table")
    p_solve.add_argument("--radius-nm", type=float, default=10.0)
    p_solve.add_argument("--potential-ev", type=float, required=True)
    p_solve.add_argument("--l", type=int, default=0, help="azimuthal quantum number")
    p_solve.add_argument("--max-states", type=int, default=None)
    p_solve.add_argument("--format", choices=("csv", "json"), default="csv")
    p_solve.add_argument("--output", default=None)
    p_solve.set_defaults(handler=cmd_solve)

    p_table = sub.add_parser(
        "table1", help="reproduce the published R=10 nm ground-state benchmarks"
    )
    p_table.add_argument("--format", choices=("csv", "json"), default="csv")
    p_table.add_argument("--output", default=None)
    p_table.add_argument(
        "--electron-rest-energy-ev",
        type=float,
        default=None,
        help="override m c^2 (validation hook; perturbing it must flag failures)",
    )
    p_table.set_defaults(handler=cmd_table1)

    p_field = sub.add_parser("field", help="sample spinor/current/charge fields on a grid")
    p_field.add_argument("--radius-nm", type=float, default=10.0)
    p_field.add_argument("--potential-ev", type=float, required=True)
    p_field.add_argument("--state", default="l0n1", help="state selector, e.g. l0n1")
    p_field.add_argument("--rmax-nm", type=float, default=None, help="default 3*radius")
    p_field.add_argument("--samples", type=int, default=600, help="radial samples")
    p_field.add_argument("--phi-samples", type=int, default=1)
    p_field.add_argument(
        "--normalize", choices=field_mod.NORMALIZATIONS, default=field_mod.RAW
    )
    p_field.add_argument("--format", choices=("csv", "json"), default="csv")
    p_field.add_argument("--output", default=None)
    p_field.set_defaults(handler=cmd_field)

    p_sweep = sub.add_parser("sweep", help="ground-state convergence across well depths")
    p_sweep.add_argument("--radius-nm", type=float, default=10.0)
    p_sweep.add_argument(
        "--potentials",
        nargs="+",
        default=["0.01,0.1,1,10"],
        help="depths in eV, space or comma separated",
    )
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.add_argument("--output", default=None)
    p_sweep.set_defaults(handler=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(parser, args)
    except BrokenPipeError:
        return 1
    except Exception as exc:  # noqa: BLE001 - CLI boundary, map to exit code 1
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
