"""Command-line front end: ``casimir-kit <command> [options]``.

Single-point commands print one JSON record.  ``sweep`` writes a CSV
(``x,value,err_est,converged`` preceded by ``#`` metadata lines) or a JSON
document.  Exit status: 0 success, 2 invalid arguments, 3 non-convergence
(values are still printed).
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .casimir_polder import cp_energy, cp_retarded, eta_cp, london_energy, london_sum
from .errors import CasimirError, ValidationError
from .lifshitz import (
    casimir_energy,
    casimir_energy_ideal,
    casimir_force,
    casimir_force_ideal,
    sphere_plane_force,
)
from .model import (
    CavityConfig,
    PerfectMirror,
    PlasmaMirror,
    SphereConfig,
    UnitSystem,
    cavity_from_mapping,
    energy_to_si,
    force_to_si,
    load_atom_file,
    natural_length_scale,
    pressure_to_si,
    to_natural,
)
from .plasma_optics import brewster_frequency, plasmon_frequency
from .plasmon import alpha_coefficient, coupled_plasmon_frequencies
from .quadrature import QuadratureSpec

EXIT_OK, EXIT_USAGE, EXIT_NOT_CONVERGED = 0, 2, 3
FLOAT_FMT = "%.12e"
SWEEP_QUANTITIES = ("eta_F", "eta_E", "force", "energy", "plasmon_dispersion", "eta_CP")


class UsageError(Exception):
    pass


def _fmt(v):
    return FLOAT_FMT % v


def _clean(obj):
    """Round floats through the fixed output format so records are reproducible."""
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return float(_fmt(v)) if math.isfinite(v) else None
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


# --------------------------------------------------------------------------
# argument handling


def _units(args):
    return UnitSystem(args.units)


def _spec(args):
    return QuadratureSpec(rel_tol=args.tol) if args.tol else QuadratureSpec()


def _load_config(path):
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json" or text.lstrip().startswith("{"):
        record = json.loads(text)
        return record.get("inputs", record)
    try:
        import tomllib as tomli
    except ModuleNotFoundError:  # Python < 3.11
        import tomli

    return tomli.loads(text)


def _cavity_inputs(args):
    """Collect cavity inputs from ``--config`` then explicit flags."""
    inputs = {}
    if args.config:
        inputs.update(_load_config(args.config))
    for key in ("L", "A", "lambda_p", "omega_p", "L_over_lambdap"):
        v = getattr(args, key, None)
        if v is not None:
            inputs[key] = v
    if getattr(args, "ideal", False):
        inputs["ideal"] = True
    if "units" in inputs and args.units_explicit is None:
        args.units = inputs["units"]
    inputs["units"] = args.units
    return inputs


def _build_cavity(inputs):
    """Natural-unit cavity plus the length scale (metres) for SI output."""
    units = UnitSystem(inputs["units"])
    if "separation_nm" in inputs:
        cav = cavity_from_mapping(inputs)
        ell = natural_length_scale(cav)
        return to_natural(cav, UnitSystem.SI), ell
    if "lambda_p" in inputs and "omega_p" in inputs:
        raise UsageError("give only one of --lambda-p / --omega-p")
    ideal = bool(inputs.get("ideal", False))
    if "omega_p" in inputs:
        mirror = PlasmaMirror(float(inputs["omega_p"]))
    else:
        mirror = PlasmaMirror.from_lambda_p(float(inputs.get("lambda_p", 1.0)), units)
    if "L_over_lambdap" in inputs:
        L = float(inputs["L_over_lambdap"]) * (mirror.lambda_p_si if units is UnitSystem.SI else mirror.lambda_p)
    elif "L" in inputs:
        L = float(inputs["L"])
    else:
        raise UsageError("a separation is required (--L or --L-over-lambdap)")
    A = float(inputs.get("A", 1.0))
    if ideal:
        cav = CavityConfig.identical(PerfectMirror(), L, A)
        if units is UnitSystem.SI:
            return to_natural(cav, units, length_scale=mirror.lambda_p_si), mirror.lambda_p_si
        return cav, None
    cav = CavityConfig.identical(mirror, L, A)
    if units is UnitSystem.SI:
        ell = natural_length_scale(cav)
        return to_natural(cav, units), ell
    return cav, None


def _atoms(args):
    if not args.atom_file:
        raise UsageError("--atom-file is required")
    units = _units(args)
    a1 = load_atom_file(args.atom_file, units)
    a2 = load_atom_file(args.atom_file2, units) if args.atom_file2 else a1
    if units is UnitSystem.SI:
        ell = natural_length_scale(a1)
        return to_natural(a1, units, ell), to_natural(a2, units, ell), ell
    return a1, a2, None


# --------------------------------------------------------------------------
# commands; each returns (record, converged)


def _force_record(cav, ell, spec, ideal, kind):
    if kind == "force":
        r = casimir_force_ideal(cav) if ideal else casimir_force(cav, spec)
        value, per_area, err = r.force, r.per_unit_area, r.quad.error_estimate * cav.area_A
        if ell is not None:
            value, err = force_to_si(value, ell), force_to_si(err, ell)
            per_area = pressure_to_si(per_area, ell)
        units = "N" if ell is not None else "hbar*c/length^2"
        extra = {"pressure": per_area}
        if r.te is not None and not ideal:
            extra.update(te_fraction=r.te / r.per_unit_area, tm_fraction=r.tm / r.per_unit_area)
    else:
        r = casimir_energy_ideal(cav) if ideal else casimir_energy(cav, spec)
        value, err = r.energy, r.quad.error_estimate * cav.area_A
        if ell is not None:
            value, err = energy_to_si(value, ell), energy_to_si(err, ell)
        units = "J" if ell is not None else "hbar*c/length"
        extra = {}
    return {"value": value, "error_estimate": err, "units": units, **extra}, r.quad.converged


def cmd_force(args, kind="force"):
    inputs = _cavity_inputs(args)
    cav, ell = _build_cavity(inputs)
    rec, ok = _force_record(cav, ell, _spec(args), bool(inputs.get("ideal")), kind)
    return {"inputs": inputs, **rec}, ok


def cmd_eta(args):
    inputs = _cavity_inputs(args)
    cav, _ = _build_cavity(inputs)
    spec = _spec(args)
    f = casimir_force(cav, spec)
    e = casimir_energy(cav, spec)
    eta_f = f.per_unit_area / casimir_force_ideal(cav).per_unit_area
    eta_e = e.per_unit_area / casimir_energy_ideal(cav).per_unit_area
    rec = {
        "inputs": inputs,
        "L_over_lambdap": cav.reduced_distance,
        "eta_F": eta_f,
        "eta_E": eta_e,
        "error_estimate": max(
            f.quad.error_estimate / casimir_force_ideal(cav).per_unit_area,
            abs(e.quad.error_estimate / casimir_energy_ideal(cav).per_unit_area),
        ),
        "units": "dimensionless",
    }
    return rec, f.quad.converged and e.quad.converged


def cmd_sphere_plane(args):
    inputs = _cavity_inputs(args)
    if args.radius is None:
        raise UsageError("--radius is required")
    inputs["radius"] = args.radius
    cav, ell = _build_cavity(inputs)
    R = args.radius / ell if ell is not None else args.radius
    sphere = SphereConfig(R, cav.separation_L)
    r = sphere_plane_force(sphere, cav, _spec(args), ideal=bool(inputs.get("ideal")))
    value, err = r.force, r.quad.error_estimate
    if ell is not None:
        value, err = force_to_si(value, ell), force_to_si(err, ell)
    rec = {
        "inputs": inputs,
        "value": value,
        "error_estimate": err,
        "units": "N" if ell is not None else "hbar*c/length^2",
        "pfa_questionable": r.diagnostics["pfa_questionable"],
    }
    return rec, r.quad.converged


def _atom_inputs(args):
    if args.L is None:
        raise UsageError("--L is required")
    return {"atom_file": args.atom_file, "atom_file2": args.atom_file2, "L": args.L, "units": args.units}


def cmd_cp(args):
    inputs = _atom_inputs(args)
    a1, a2, ell = _atoms(args)
    L = args.L / ell if ell is not None else args.L
    q = cp_energy(a1, a2, L, _spec(args))
    ret = cp_retarded(a1, a2, L)
    conv = (lambda v: energy_to_si(v, ell)) if ell is not None else (lambda v: v)
    rec = {
        "inputs": inputs,
        "value": conv(q.value),
        "error_estimate": conv(q.error_estimate),
        "retarded_limit": conv(ret),
        "ratio_to_retarded": q.value / ret if ret else None,
        "units": "J" if ell is not None else "hbar*c/length",
    }
    if a1 == a2 and a1.static_polarizability > 0:
        rec["eta_CP"] = eta_cp(a1, L, _spec(args))
    return rec, q.converged


def cmd_london(args):
    inputs = _atom_inputs(args)
    a1, a2, ell = _atoms(args)
    L = args.L / ell if ell is not None else args.L
    q = london_energy(a1, a2, L, _spec(args))
    closed = london_sum(a1, a2, L)
    conv = (lambda v: energy_to_si(v, ell)) if ell is not None else (lambda v: v)
    rec = {
        "inputs": inputs,
        "value": conv(q.value),
        "error_estimate": conv(q.error_estimate),
        "closed_form": conv(closed),
        "units": "J" if ell is not None else "hbar*c/length",
    }
    return rec, q.converged


def cmd_alpha(args):
    a = alpha_coefficient()
    return {"alpha": a, "value": a, "error_estimate": 1e-12, "units": "dimensionless"}, True


def cmd_plasmon(args):
    inputs = _cavity_inputs(args)
    if args.k is None:
        raise UsageError("--k is required")
    inputs["k"] = args.k
    if "L" not in inputs and "L_over_lambdap" not in inputs:
        inputs["L"] = 1.0
    cav, ell = _build_cavity(inputs)
    k = args.k * ell if ell is not None else args.k
    m = cav.mirror1
    rec = {
        "inputs": inputs,
        "omega_plasmon": float(plasmon_frequency(k, m)),
        "omega_brewster": float(brewster_frequency(k, m)),
        "omega_s": m.omega_s,
        "units": "rad/s" if ell is not None else "c/length",
    }
    if args.L is not None or args.L_over_lambdap is not None:
        wp, wm = coupled_plasmon_frequencies(k, cav.separation_L, m)
        rec.update(omega_plus=float(wp), omega_minus=float(wm))
    if ell is not None:
        from .model import C

        for key in ("omega_plasmon", "omega_brewster", "omega_s", "omega_plus", "omega_minus"):
            if key in rec:
                rec[key] *= C / ell
    rec["value"] = rec["omega_plasmon"]
    return rec, True


# --------------------------------------------------------------------------
# sweep


def _grid(lo, hi, count, spacing):
    if count < 2:
        raise UsageError("--count must be >= 2")
    if not lo < hi:
        raise UsageError("--min must be < --max")
    if spacing == "log":
        if lo <= 0:
            raise UsageError("log spacing needs --min > 0")
        return np.geomspace(lo, hi, count)
    return np.linspace(lo, hi, count)


def _sweep_point(task):
    """Evaluate one sweep point; returns ``(x, value, err, converged)``."""
    quantity, x, rel_tol, atom = task
    spec = QuadratureSpec(rel_tol=rel_tol)
    try:
        if quantity == "plasmon_dispersion":
            m = PlasmaMirror(1.0)
            return x, float(plasmon_frequency(x, m)), 0.0, True
        if quantity == "eta_CP":
            L = x * atom.lambda_a
            return x, eta_cp(atom, L, spec), rel_tol, True
        cav = CavityConfig.identical(PlasmaMirror(2.0 * math.pi), x)
        if quantity in ("eta_F", "force"):
            r = casimir_force(cav, spec)
            ideal = casimir_force_ideal(cav).per_unit_area
            if quantity == "eta_F":
                return x, r.per_unit_area / ideal, r.quad.error_estimate / ideal, r.quad.converged
            return x, r.per_unit_area, r.quad.error_estimate, r.quad.converged
        r = casimir_energy(cav, spec)
        ideal = casimir_energy_ideal(cav).per_unit_area
        if quantity == "eta_E":
            return x, r.per_unit_area / ideal, abs(r.quad.error_estimate / ideal), r.quad.converged
        return x, r.per_unit_area, r.quad.error_estimate, r.quad.converged
    except CasimirError:
        return x, math.nan, math.nan, False


def _workers(n):
    env = os.environ.get("CASIMIR_KIT_THREADS")
    cap = int(env) if env else (os.cpu_count() or 1)
    return max(1, min(cap, n))


def run_sweep(quantity, xs, rel_tol=1e-9, atom=None):
    """Evaluate a sweep; rows come back in grid order whatever the scheduling."""
    tasks = [(quantity, float(x), rel_tol, atom) for x in xs]
    workers = _workers(len(tasks))
    if workers == 1:
        return [_sweep_point(t) for t in tasks]
    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_sweep_point, tasks))


_X_LABELS = {
    "eta_F": "L/lambda_P",
    "eta_E": "L/lambda_P",
    "force": "L/lambda_P",
    "energy": "L/lambda_P",
    "plasmon_dispersion": "c*k/omega_P",
    "eta_CP": "L/lambda_A",
}
_VALUE_UNITS = {
    "eta_F": "dimensionless",
    "eta_E": "dimensionless",
    "force": "hbar*c/lambda_P^4 (pressure)",
    "energy": "hbar*c/lambda_P^3 (per area)",
    "plasmon_dispersion": "omega_P",
    "eta_CP": "dimensionless",
}


def cmd_sweep(args, out):
    if args.quantity not in SWEEP_QUANTITIES:
        raise UsageError(f"unknown quantity {args.quantity!r}")
    xs = _grid(args.min, args.max, args.count, args.spacing)
    atom = None
    if args.quantity == "eta_CP":
        if not args.atom_file:
            raise UsageError("eta_CP sweeps need --atom-file")
        atom = load_atom_file(args.atom_file, UnitSystem.NATURAL)
    rel_tol = args.tol or 1e-9
    rows = run_sweep(args.quantity, xs, rel_tol, atom)
    meta = {
        "quantity": args.quantity,
        "x": _X_LABELS[args.quantity],
        "units": _VALUE_UNITS[args.quantity],
        "material": "plasma model, identical mirrors" if atom is None else f"atom file {args.atom_file}",
        "rel_tol": rel_tol,
        "spacing": args.spacing,
        "alpha": alpha_coefficient(),
        "version": __version__,
    }
    if args.output == "json":
        doc = {
            "meta": meta,
            "rows": [{"x": x, "value": v, "err_est": e, "converged": bool(c)} for x, v, e, c in rows],
        }
        out.write(json.dumps(_clean(doc), indent=1) + "\n")
    else:
        for k, v in meta.items():
            out.write(f"# {k} = {_fmt(v) if isinstance(v, float) else v}\n")
        out.write("x,value,err_est,converged\n")
        for x, v, e, c in rows:
            out.write(f"{_fmt(x)},{_fmt(v)},{_fmt(e)},{str(bool(c)).lower()}\n")
    return all(c for *_, c in rows)


# --------------------------------------------------------------------------
# parser


def _add_common(p):
    p.add_argument("--units", choices=["natural", "si"], default=None)
    p.add_argument("--tol", type=float, default=None, help="relative quadrature tolerance")
    p.add_argument("--output", choices=["json", "csv"], default="json")
    p.add_argument("--out", default=None, help="write to FILE instead of stdout")


def _add_cavity(p):
    p.add_argument("--config", default=None, help="TOML cavity file or a previous JSON record")
    p.add_argument("--L", type=float, default=None, help="separation")
    p.add_argument("--A", type=float, default=None, help="mirror area (default 1)")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--lambda-p", dest="lambda_p", type=float, default=None)
    g.add_argument("--omega-p", dest="omega_p", type=float, default=None)
    p.add_argument("--L-over-lambdap", dest="L_over_lambdap", type=float, default=None)
    p.add_argument("--ideal", action="store_true", help="perfect mirrors")


def _add_atoms(p):
    p.add_argument("--atom-file", default=None)
    p.add_argument("--atom-file2", default=None, help="second atom (default: same as first)")
    p.add_argument("--L", type=float, default=None)


def build_parser():
    parser = argparse.ArgumentParser(prog="casimir-kit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("force", "energy", "eta", "sphere-plane", "plasmon"):
        p = sub.add_parser(name)
        _add_common(p)
        _add_cavity(p)
        if name == "sphere-plane":
            p.add_argument("--radius", type=float, default=None)
        if name == "plasmon":
            p.add_argument("--k", type=float, default=None, help="transverse wavevector")
    for name in ("cp", "london"):
        p = sub.add_parser(name)
        _add_common(p)
        _add_atoms(p)
    p = sub.add_parser("alpha")
    _add_common(p)
    p = sub.add_parser("sweep")
    _add_common(p)
    p.set_defaults(output="csv")
    p.add_argument("--quantity", required=True, choices=SWEEP_QUANTITIES)
    p.add_argument("--min", type=float, required=True)
    p.add_argument("--max", type=float, required=True)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--spacing", choices=["linear", "log"], default="log")
    p.add_argument("--atom-file", default=None)
    return parser


_COMMANDS = {
    "force": lambda a: cmd_force(a, "force"),
    "energy": lambda a: cmd_force(a, "energy"),
    "eta": cmd_eta,
    "sphere-plane": cmd_sphere_plane,
    "cp": cmd_cp,
    "london": cmd_london,
    "alpha": cmd_alpha,
    "plasmon": cmd_plasmon,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    args.units_explicit = args.units
    if args.units is None:
        args.units = "natural"
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        if args.command == "sweep":
            ok = cmd_sweep(args, out)
        else:
            record, ok = _COMMANDS[args.command](args)
            record = {"command": args.command, **record, "converged": bool(ok), "version": __version__}
            out.write(json.dumps(_clean(record), sort_keys=False) + "\n")
    except (UsageError, ValidationError, CasimirError, OSError, ValueError) as exc:
        print(f"casimir-kit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK if ok else EXIT_NOT_CONVERGED


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
