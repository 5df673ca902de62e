"""Command-line front end: batch computation, scans and benchmark regression.

Exit codes: 0 success, 1 benchmark-table failure (paper-check), 2 bad
configuration or arguments, 3 numerical failure.  JSON artifacts are written
deterministically (sorted keys, floats at 17 significant digits) so identical
configurations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from importlib import resources
from pathlib import Path

import numpy as np
from jsonschema import ValidationError

from . import constants as C
from . import density, evaporation, imagefit, rfdress, thermo, trapfield
from .benchmarks import run_benchmarks

EXIT_OK = 0
EXIT_BENCH_FAIL = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

_NUMERICAL_ERRORS = (
    trapfield.ConvergenceError,
    trapfield.SaddlePointError,
    trapfield.NotATrapError,
    trapfield.SingularityError,
    rfdress.TopologyError,
    rfdress.RWAViolationError,
    rfdress.KnifeNotEngagedError,
    imagefit.FitError,
    np.linalg.LinAlgError,
)


# -- deterministic JSON ----------------------------------------------------------

def _json_fmt(obj, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f'{pad}  {json.dumps(str(k))}: {_json_fmt(v, indent + 1)}'
            for k, v in sorted(obj.items())
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(np.asarray(obj).tolist()) if isinstance(obj, np.ndarray) else list(obj)
        if not seq:
            return "[]"
        items = [f"{pad}  {_json_fmt(v, indent + 1)}" for v in seq]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, Fraction):
        return json.dumps(str(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return json.dumps(str(x))
        return format(x, ".17g")
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if obj is None:
        return "null"
    return json.dumps(str(obj))


def write_json(path, obj) -> None:
    Path(path).write_text(_json_fmt(obj) + "\n")


def data_dir() -> Path:
    override = os.environ.get("FERMICHIP_DATA_DIR")
    if override:
        return Path(override)
    return Path(resources.files("fermichip").joinpath("data"))


def _resolve_geometry(name_or_path: str):
    p = Path(name_or_path)
    if not p.exists():
        candidate = data_dir() / f"{name_or_path.replace('-', '_')}.json"
        if candidate.exists():
            p = candidate
        else:
            raise FileNotFoundError(f"geometry {name_or_path!r} not found (also tried {candidate})")
    return trapfield.load_geometry(p)


def _state_from_args(args) -> C.SpinState:
    reg = C.builtin_species()
    f_quantum = getattr(args, "f_quantum", None)
    mf = getattr(args, "mf", None)
    if f_quantum is not None or mf is not None:
        if f_quantum is None or mf is None:
            raise ValueError("--f-quantum and --mf must be given together")
        return reg.state(args.species, f_quantum, mf)
    return reg.stretched_state(args.species)


def _trap_from_args(args) -> thermo.HarmonicTrap:
    if args.fbar_hz is not None:
        omega = 2 * math.pi * args.fbar_hz
        return thermo.HarmonicTrap(omega, omega, omega)
    if None in (args.fx_hz, args.fy_hz, args.fz_hz):
        raise ValueError("give either --fbar-hz or all of --fx-hz/--fy-hz/--fz-hz")
    return thermo.HarmonicTrap.from_frequencies_hz(args.fx_hz, args.fy_hz, args.fz_hz)


# -- thermo ----------------------------------------------------------------------

def _scan_row(payload):
    species, f_traps, n_atoms, t = payload
    reg = C.builtin_species()
    state = reg.stretched_state(species)
    trap = thermo.HarmonicTrap(*f_traps)
    gas = thermo.TrappedGasState.from_reduced_temperature(state, trap, n_atoms, t)
    z = gas.fugacity
    return (
        t,
        z,
        gas.chemical_potential / gas.fermi_energy,
        thermo.energy_per_particle(gas) / gas.fermi_energy,
        thermo.degeneracy_parameter(z),
    )


def cmd_thermo(args) -> int:
    state = _state_from_args(args)
    trap = _trap_from_args(args)
    if args.t_over_tf is not None:
        gas = thermo.TrappedGasState.from_reduced_temperature(
            state, trap, args.n_atoms, args.t_over_tf
        )
    elif args.temperature_uk is not None:
        gas = thermo.TrappedGasState(state, trap, args.n_atoms, args.temperature_uk * 1e-6)
    else:
        raise ValueError("give --t-over-tf or --temperature-uk")
    report = {
        "species": args.species,
        "n_atoms": args.n_atoms,
        "omega_bar_hz": trap.omega_bar / (2 * math.pi),
        "fermi_energy_j": gas.fermi_energy,
        "fermi_energy_uk": gas.fermi_energy / C.K_B * 1e6,
        "fermi_temperature_uk": gas.fermi_temperature * 1e6,
        "temperature_uk": gas.temperature * 1e6,
        "t_over_tf": gas.t_reduced,
        "fugacity": gas.fugacity,
        "chemical_potential_over_ef": gas.chemical_potential / gas.fermi_energy,
        "energy_per_particle_j": thermo.energy_per_particle(gas),
        "energy_per_particle_over_ef": thermo.energy_per_particle(gas) / gas.fermi_energy,
        "degeneracy_parameter": thermo.degeneracy_parameter(gas.fugacity),
        "capacity_1d": None,
    }
    try:
        report["capacity_1d"] = thermo.capacity_1d(trap)
    except ValueError:
        pass
    if args.out:
        write_json(args.out, report)
    else:
        print(_json_fmt(report))
    if args.scan_out:
        t_values = np.geomspace(args.scan_min, args.scan_max, args.scan_points)
        payloads = [
            (args.species, tuple(trap.omegas), args.n_atoms, float(t)) for t in t_values
        ]
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                rows = list(pool.map(_scan_row, payloads))
        else:
            rows = [_scan_row(p) for p in payloads]
        with open(args.scan_out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["T_over_TF", "Z", "mu_over_EF", "E_per_N_over_EF", "n0_lambda3"])
            for row in rows:
                writer.writerow([f"{v:.17g}" for v in row])
    return EXIT_OK


# -- density / tof ----------------------------------------------------------------

def cmd_density(args) -> int:
    state = _state_from_args(args)
    trap = _trap_from_args(args)
    gas = thermo.TrappedGasState.from_reduced_temperature(
        state, trap, args.n_atoms, args.t_over_tf
    )
    s = np.linspace(-args.extent_um * 1e-6, args.extent_um * 1e-6, args.points)
    axis = {"x": 0, "y": 1, "z": 2}[args.axis]
    pts = np.zeros((args.points, 3))
    pts[:, axis] = s
    values = (
        density.density_zero_T(gas, pts) if args.zero_t else density.density_finite_T(gas, pts)
    )
    density.write_profile_csv(args.out, s, values, header=(f"{args.axis}_m", "density_m3"))
    return EXIT_OK


def cmd_tof(args) -> int:
    state = _state_from_args(args)
    trap = _trap_from_args(args)
    gas = thermo.TrappedGasState.from_reduced_temperature(
        state, trap, args.n_atoms, args.t_over_tf
    )
    pitch = args.pitch_um * 1e-6
    t = args.time_ms * 1e-3
    noise = 0.0
    if args.noise_frac > 0:
        clean = imagefit.synthesize_tof_image(gas, t, (args.ny, args.nx), pitch, 0.0)
        noise = args.noise_frac * float(clean.values.max())
    img = imagefit.synthesize_tof_image(gas, t, (args.ny, args.nx), pitch, noise, args.seed)
    img.save(args.out)
    if args.csv:
        xx, yy = img.coordinates()
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["x_m", "y_m", "column_density_m2"])
            for xi, yi, vi in zip(xx.ravel(), yy.ravel(), img.values.ravel()):
                writer.writerow([f"{xi:.17g}", f"{yi:.17g}", f"{vi:.17g}"])
    return EXIT_OK


# -- trap -------------------------------------------------------------------------

def cmd_trap(args) -> int:
    model, seed = _resolve_geometry(args.geometry)
    if args.seed_um:
        seed = np.asarray([float(v) for v in args.seed_um.split(",")]) * 1e-6
    if seed is None:
        raise ValueError("geometry file has no seed; pass --seed-um x,y,z")
    state = _state_from_args(args)
    minimum = trapfield.find_minimum(model, seed)
    report = {
        "geometry": str(args.geometry),
        "state": str(state),
        "position_um": (minimum.position * 1e6).tolist(),
        "b0_gauss": minimum.b0 / C.GAUSS,
        "zero_minimum": minimum.zero_minimum,
        "grad_norm_t_per_m": minimum.grad_norm,
    }
    if not minimum.zero_minimum:
        freqs = trapfield.trap_frequencies(model, state, minimum.position)
        depth = trapfield.trap_depth(model, state, minimum.position)
        ip = trapfield.ip_fit(model, minimum.position)
        report.update(
            {
                "frequencies_hz": sorted((freqs.omega / (2 * math.pi)).tolist()),
                "depth_j": depth.depth,
                "depth_mk": depth.temperature_equiv * 1e3,
                "escape_direction": depth.escape_direction.tolist(),
                "ip_b0_gauss": ip.b0 / C.GAUSS,
                "ip_b_prime_t_per_m": ip.b_prime,
                "ip_b_double_prime_t_per_m2": ip.b_double_prime,
                "ip_residual_rms_gauss": ip.residual_rms / C.GAUSS,
            }
        )
    if args.out:
        write_json(args.out, report)
    else:
        print(_json_fmt(report))
    return EXIT_OK


# -- dress ------------------------------------------------------------------------

DRESS_PRESETS = {
    # amplitude ramped on at ramp_khz, then swept to rf_khz
    "rb-doublewell": dict(geometry="toronto-split-trap", rf_khz=860.0, ramp_khz=800.0,
                          amplitude_mg=200.0),
    "k-doublewell": dict(geometry="toronto-split-trap", rf_khz=383.0, ramp_khz=338.0,
                         amplitude_mg=450.0),
}


def _dress_scan_report(scan: rfdress.DressedPotentialScan):
    try:
        wells = rfdress.characterize_wells(scan)
        report = {
            "topology": wells.topology,
            "well_positions_um": [p * 1e6 for p in wells.well_positions],
            "separation_um": wells.separation * 1e6,
            "barrier_khz": wells.barrier_height / C.H_PLANCK / 1e3,
            "level_repulsion_khz": [o / C.H_PLANCK / 1e3 for o in wells.level_repulsion],
        }
    except rfdress.TopologyError as exc:
        report = {"topology": "ambiguous", "detail": str(exc)}
    report["m_f_prime"] = str(scan.m_f_prime)
    report["adiabatic_connection"] = scan.connected
    return report


def cmd_dress(args) -> int:
    if args.preset:
        cfg = DRESS_PRESETS[args.preset]
        geometry, rf_khz = cfg["geometry"], cfg["rf_khz"]
        ramp_khz, amplitude_mg = cfg["ramp_khz"], cfg["amplitude_mg"]
    else:
        geometry, rf_khz = args.geometry, args.rf_khz
        ramp_khz, amplitude_mg = args.ramp_khz or args.rf_khz, args.amplitude_mg
    model, seed = _resolve_geometry(geometry)
    minimum = trapfield.find_minimum(model, seed)
    ip = trapfield.ip_fit(model, minimum.position)
    axis = ip.axes[:, 0]
    b_hat = model.field(minimum.position)
    b_hat = b_hat / np.linalg.norm(b_hat)
    pol = np.cross(axis, b_hat)
    pol /= np.linalg.norm(pol)
    rf = rfdress.RFField(amplitude_mg * 1e-3 * C.GAUSS, 2 * math.pi * rf_khz * 1e3, tuple(pol))

    reg = C.builtin_species()
    report = {
        "geometry": geometry,
        "rf_khz": rf_khz,
        "ramp_khz": ramp_khz,
        "amplitude_mg": amplitude_mg,
        "b0_gauss": minimum.b0 / C.GAUSS,
        "species": {},
    }
    prefix = Path(args.out_prefix)
    for name in ("Rb87", "K40"):
        state = reg.stretched_state(name)
        scan = rfdress.dressed_potential(
            model,
            rf,
            state,
            minimum.position,
            axis,
            args.extent_um * 1e-6,
            args.points,
            connect_at_omega=2 * math.pi * ramp_khz * 1e3,
        )
        report["species"][name] = _dress_scan_report(scan)
        csv_path = prefix.with_name(prefix.name + f"_{name.lower()}.csv")
        with open(csv_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["position_um", "u_eff_khz", "delta_khz", "rabi_khz"])
            for s, u, d, o in zip(scan.positions, scan.u_eff, scan.delta, scan.rabi):
                writer.writerow(
                    [
                        f"{s*1e6:.17g}",
                        f"{u/C.H_PLANCK/1e3:.17g}",
                        f"{d/C.H_PLANCK/1e3:.17g}",
                        f"{o/C.H_PLANCK/1e3:.17g}",
                    ]
                )
    write_json(prefix.with_name(prefix.name + "_report.json"), report)
    return EXIT_OK


# -- evap -------------------------------------------------------------------------

def _evap_preset(name: str, rho0: float | None):
    reg = C.builtin_species()
    rb = reg["Rb87"]
    k40 = reg["K40"]
    if name == "libbrecht-loop":
        f_bar = C.MU_B * 5.4e5 * C.GAUSS_PER_CM / 2.0 ** (2.0 / 3.0)
        model = evaporation.EffectiveVolumeModel("quadrupole3d", eta=4, mean_gradient=f_bar)
        depth = C.K_B * 21e-3
        species = rb
    elif name == "ioffe-c":
        model = evaporation.EffectiveVolumeModel(
            "sho", eta=4, mass=rb.mass, omega_bar=2 * math.pi * 94e3
        )
        depth = C.K_B * 1.3e-3
        species = rb
    elif name == "reichel-z":
        model = evaporation.EffectiveVolumeModel(
            "sho", eta=4, mass=rb.mass, omega_bar=2 * math.pi * 300.0
        )
        depth = C.K_B * 1.3e-3
        species = rb
    elif name == "toronto-z":
        omega_bar = math.sqrt(C.MU_B * 3e4 * C.GAUSS_PER_CM2 / rb.mass)
        model = evaporation.EffectiveVolumeModel("sho", eta=4, mass=rb.mass, omega_bar=omega_bar)
        depth = 4.0 * C.K_B * 300e-6  # loaded at 300 uK with eta = 4
        species = rb
    else:
        raise KeyError(name)
    rho = rho0 if rho0 is not None else 1e-6
    budget = evaporation.LoadingBudget(rho, depth, 4.0, species)
    t_load = budget.temperature
    report = {
        "preset": name,
        "species": species.name,
        "eta": 4.0,
        "rho0": rho,
        "depth_mk": depth / C.K_B * 1e3,
        "load_temperature_uk": t_load * 1e6,
        "v_eff_um3": evaporation.effective_volume(model, t_load) * 1e18,
        "n_max": evaporation.max_loadable_atoms(budget, model),
        "t_min_uk": evaporation.min_start_temperature(rb, rho, 150.0) * 1e6,
        "gamma_coll_hz": evaporation.collision_rate(
            rb, rho, t_load, evaporation.sigma_identical_low_temperature(5.3e-9)
        ),
    }
    if name == "toronto-z":
        model_k = evaporation.EffectiveVolumeModel(
            "sho", eta=4, mass=k40.mass,
            omega_bar=math.sqrt(C.MU_B * 3e4 * C.GAUSS_PER_CM2 / k40.mass),
        )
        budget_k = evaporation.LoadingBudget(4e-8, depth, 4.0, k40)
        report["n_max_k40_at_rho0_4e-8"] = evaporation.max_loadable_atoms(budget_k, model_k)
    return report


def cmd_evap(args) -> int:
    report = _evap_preset(args.preset, args.rho0)
    if args.out:
        write_json(args.out, report)
    else:
        print(_json_fmt(report))
    return EXIT_OK


# -- fit --------------------------------------------------------------------------

def cmd_fit(args) -> int:
    img = imagefit.TofImage.load(args.image, noise_rms=args.noise_rms)
    results = {}
    if args.model in ("gauss", "both"):
        results["gaussian"] = imagefit.fit_gaussian(img)
    if args.model in ("fd", "both"):
        results["fermi-dirac"] = imagefit.fit_fermi_dirac(img)
    report = {}
    for key, fit in results.items():
        report[key] = {
            "params": fit.params,
            "chi2": fit.chi2,
            "reduced_chi2": fit.reduced_chi2,
            "flags": fit.flags,
        }
    if len(results) == 2:
        report["chi2_ratio_gauss_over_fd"] = (
            results["gaussian"].reduced_chi2 / results["fermi-dirac"].reduced_chi2
        )
    if args.out:
        write_json(args.out, report)
    else:
        print(_json_fmt(report))
    return EXIT_OK


# -- paper-check --------------------------------------------------------------------

def cmd_paper_check(args) -> int:
    rows = run_benchmarks()
    width = max(len(r.name) for r in rows)
    n_fail = 0
    for r in rows:
        status = "PASS" if r.passed else "FAIL"
        if not r.passed:
            n_fail += 1
        line = f"{status}  {r.name:<{width}}  computed {r.computed:>12}  target {r.target}"
        if r.note:
            line += f"  [{r.note}]"
        print(line)
    print(f"{len(rows) - n_fail}/{len(rows)} checks passed")
    if args.out:
        write_json(
            args.out,
            [
                {
                    "name": r.name,
                    "description": r.description,
                    "computed": r.computed,
                    "target": r.target,
                    "passed": r.passed,
                    "note": r.note,
                }
                for r in rows
            ],
        )
    return EXIT_OK if n_fail == 0 else EXIT_BENCH_FAIL


# -- run (config file) ---------------------------------------------------------------

CONFIG_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["command"],
    "properties": {
        "command": {
            "enum": ["thermo", "density", "tof", "trap", "dress", "evap", "fit", "paper-check"]
        },
        "params": {
            "type": "object",
            "additionalProperties": {"type": ["string", "number", "boolean"]},
        },
    },
}


def cmd_run(args) -> int:
    import jsonschema

    doc = json.loads(Path(args.config).read_text())
    jsonschema.validate(doc, CONFIG_SCHEMA)
    argv = [doc["command"]]
    for key, value in doc.get("params", {}).items():
        flag = "--" + key.replace("_", "-")
        if isinstance(value, bool):
            if value:
                argv.append(flag)
        else:
            argv.extend([flag, str(value)])
    return main(argv)


# -- parser ---------------------------------------------------------------------------

def _add_species(p, default="K40"):
    p.add_argument("--species", default=default, choices=["K40", "Rb87"])
    p.add_argument("--f-quantum", dest="f_quantum", default=None,
                   help="hyperfine F as a fraction, e.g. 9/2 (default: stretched)")
    p.add_argument("--mf", default=None, help="m_F as a fraction, e.g. 9/2")


def _add_trap(p):
    p.add_argument("--fbar-hz", type=float, default=None, help="isotropic mean frequency")
    p.add_argument("--fx-hz", type=float, default=None)
    p.add_argument("--fy-hz", type=float, default=None)
    p.add_argument("--fz-hz", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fermichip",
        description="Ideal Fermi gases in atom-chip microtraps: thermodynamics, "
        "fields, dressed potentials, evaporation rules and profile fits.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("thermo", help="trapped-gas thermodynamics report and scans")
    _add_species(p)
    _add_trap(p)
    p.add_argument("--n-atoms", type=float, required=True)
    p.add_argument("--t-over-tf", type=float, default=None)
    p.add_argument("--temperature-uk", type=float, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--scan-out", default=None, help="CSV degeneracy scan path")
    p.add_argument("--scan-min", type=float, default=0.05)
    p.add_argument("--scan-max", type=float, default=5.0)
    p.add_argument("--scan-points", type=int, default=25)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_thermo)

    p = sub.add_parser("density", help="in-trap density profile along an axis (CSV)")
    _add_species(p)
    _add_trap(p)
    p.add_argument("--n-atoms", type=float, required=True)
    p.add_argument("--t-over-tf", type=float, required=True)
    p.add_argument("--axis", choices=["x", "y", "z"], default="x")
    p.add_argument("--extent-um", type=float, default=30.0)
    p.add_argument("--points", type=int, default=401)
    p.add_argument("--zero-t", action="store_true", help="emit the T=0 profile instead")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_density)

    p = sub.add_parser("tof", help="synthesize a time-of-flight column-density image")
    _add_species(p)
    _add_trap(p)
    p.add_argument("--n-atoms", type=float, required=True)
    p.add_argument("--t-over-tf", type=float, required=True)
    p.add_argument("--time-ms", type=float, default=10.0)
    p.add_argument("--nx", type=int, default=64)
    p.add_argument("--ny", type=int, default=64)
    p.add_argument("--pitch-um", type=float, default=8.0)
    p.add_argument("--noise-frac", type=float, default=0.0, help="noise RMS as fraction of peak")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="binary raster output")
    p.add_argument("--csv", default=None)
    p.set_defaults(fn=cmd_tof)

    p = sub.add_parser("trap", help="wire-trap report: minimum, frequencies, depth, IP fit")
    _add_species(p)
    p.add_argument("--geometry", default="toronto-z-trap",
                   help="geometry JSON path or shipped preset name")
    p.add_argument("--seed-um", default=None, help="comma-separated search seed")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_trap)

    p = sub.add_parser("dress", help="RF-dressed potential scans for both species")
    p.add_argument("--preset", choices=sorted(DRESS_PRESETS), default=None)
    p.add_argument("--geometry", default="toronto-split-trap")
    p.add_argument("--rf-khz", type=float, default=None)
    p.add_argument("--ramp-khz", type=float, default=None,
                   help="frequency at which the RF amplitude was ramped on")
    p.add_argument("--amplitude-mg", type=float, default=200.0)
    p.add_argument("--extent-um", type=float, default=10.0)
    p.add_argument("--points", type=int, default=4096)
    p.add_argument("--out-prefix", default="dress")
    p.set_defaults(fn=cmd_dress)

    p = sub.add_parser("evap", help="loading and evaporation design report")
    p.add_argument("--preset", required=True,
                   choices=["libbrecht-loop", "ioffe-c", "reichel-z", "toronto-z"])
    p.add_argument("--rho0", type=float, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_evap)

    p = sub.add_parser("fit", help="fit envelope models to a raster image")
    p.add_argument("--image", required=True)
    p.add_argument("--model", choices=["gauss", "fd", "both"], default="both")
    p.add_argument("--noise-rms", type=float, default=0.0)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_fit)

    p = sub.add_parser("paper-check",
                       help="regression table of published benchmark values")
    p.add_argument("--out", default=None, help="also write the table as JSON")
    p.set_defaults(fn=cmd_paper_check)

    p = sub.add_parser("run", help="execute a scenario config file (JSON)")
    p.add_argument("--config", required=True)
    p.set_defaults(fn=cmd_run)

    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, KeyError, FileNotFoundError, ValidationError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
