"""Command-line interface.

Subcommands:

    spectrum       18 labeled closed-form levels with oracle residuals
    negativity     bipartite negativities and gTN at one parameter point
    phase-diagram  2-D ground-state phase map with bisected boundaries
    scan-gtn       ground-state entanglement over the (h/J, D/J) plane
    thermal-map    thermal entanglement map, dimensionless or compound units
    find-max       1-D maximization of a phase's entanglement
    validate       closed-form vs numerical-oracle sweep (CI gate)

Numeric flags override the optional config file.  Scan subcommands write
the delimited output to --out and render a matplotlib figure next to it
unless --no-figure is given.  SPINTRIMER_OUTDIR sets the default output
directory for bare file names.
"""

from __future__ import annotations

import argparse
import configparser
import json
import os
import sys
import time
from dataclasses import replace
from pathlib import Path

import numpy as np

from ._version import __version__
from .analytic import FAMILIES, analytic_eigensystem
from .export import (
    write_contours_csv,
    write_csv,
    write_json,
    write_phase_boundaries_csv,
    write_phase_map_csv,
    write_svg,
)
from .figures import render_heatmap, render_phase_map
from .hamiltonian import ModelParams, build_hamiltonian, diagonalize
from .negativity import gtn
from .phases import find_gtn_maximum, ground_phase, scan_phases
from .scans import (
    ZERO_FIELD_OFFSET,
    extract_contours,
    scan_gtn_zero_T,
    scan_thermal,
    scan_thermal_physical,
)
from .thermal import ground_state_density_matrix, pure_state_density_matrix, thermal_density_matrix
from .units import PhysicalParams

OUTDIR_ENV = "SPINTRIMER_OUTDIR"


def _parse_range(text: str, count_default: int = 201) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError(
            f"range {text!r} must be min:max or min:max:count"
        )
    try:
        lo, hi = float(parts[0]), float(parts[1])
        n = int(parts[2]) if len(parts) == 3 else count_default
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad range {text!r}: {exc}") from exc
    return lo, hi, n


def _out_path(name: str | None) -> Path | None:
    if name is None:
        return None
    p = Path(name)
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir and p.parent == Path("."):
        p = Path(outdir) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def _load_model_config(path: str | None) -> dict:
    if not path:
        return {}
    cfg = configparser.ConfigParser()
    if not cfg.read(path):
        raise FileNotFoundError(f"config file {path} not found or unreadable")
    out = {}
    if cfg.has_section("model"):
        for key in ("j1", "d", "h", "kt"):
            if cfg.has_option("model", key):
                out[key] = cfg.getfloat("model", key)
    return out


def _load_compound(path: str) -> PhysicalParams:
    cfg = configparser.ConfigParser()
    if not cfg.read(path):
        raise FileNotFoundError(f"compound file {path} not found or unreadable")
    if not cfg.has_section("compound"):
        raise ValueError(f"compound file {path} lacks a [compound] section")
    sec = cfg["compound"]
    if "g_factor" not in sec:
        raise ValueError("compound config must supply g_factor; no default exists")
    return PhysicalParams(
        J_wavenumber=sec.getfloat("j_wavenumber"),
        J1_wavenumber=sec.getfloat("j1_wavenumber", 0.0),
        D_over_J=sec.getfloat("d_over_j", 0.0),
        g_factor=sec.getfloat("g_factor"),
    )


def _params_from_args(args) -> ModelParams:
    file_vals = _load_model_config(getattr(args, "config", None))
    j1 = args.j1 if args.j1 is not None else file_vals.get("j1", 0.0)
    d = args.d if args.d is not None else file_vals.get("d", 0.0)
    h = args.h if args.h is not None else file_vals.get("h", 0.0)
    return ModelParams(J=1.0, J1=j1, D=d, h=h)


def _add_model_flags(sp, with_kt=False):
    sp.add_argument("--j1", type=float, default=None, help="exchange ratio J1/J")
    sp.add_argument("--d", type=float, default=None, help="anisotropy D/J")
    sp.add_argument("--h", type=float, default=None, help="Zeeman ratio h/J")
    if with_kt:
        sp.add_argument("--kt", type=float, default=None, help="temperature k_BT/J")
    sp.add_argument("--config", default=None, help="INI config with a [model] section")


def _figure_path(out: Path) -> Path:
    return out.with_suffix(".png")


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_spectrum(args) -> int:
    par = _params_from_args(args)
    levels = analytic_eigensystem(par)
    H = build_hamiltonian(par)
    rows = []
    for lv in levels:
        res = float(np.linalg.norm(H @ lv.vector - lv.energy * lv.vector))
        rows.append(
            {
                "S_t": str(lv.s_t), "S_t^z": str(lv.s_t_z), "branch": lv.branch,
                "energy": lv.energy, "residual": res,
            }
        )
    max_res = max(r["residual"] for r in rows)
    if args.format == "json":
        print(json.dumps({"params": vars(par), "levels": rows,
                          "max_residual": max_res}, indent=1, sort_keys=True))
    else:
        print(f"# J1/J={par.J1:g} D/J={par.D:g} h/J={par.h:g}")
        print(f"{'S_t':>5} {'S_t^z':>6} {'br':>3} {'energy':>20} {'residual':>12}")
        for r in rows:
            print(
                f"{r['S_t']:>5} {r['S_t^z']:>6} {r['branch'] or '-':>3} "
                f"{r['energy']:>20.12f} {r['residual']:>12.3e}"
            )
        print(f"# max residual = {max_res:.3e}")
    return 0


def _cmd_negativity(args) -> int:
    par = _params_from_args(args)
    spec = diagonalize(build_hamiltonian(par))
    kt = args.kt
    if kt is None and args.config:
        kt = _load_model_config(args.config).get("kt")
    if kt is not None:
        rho = thermal_density_matrix(spec, kt)
        mode = f"thermal kT/J={kt:g}"
    elif args.mode == "mixture":
        rho = ground_state_density_matrix(spec, degeneracy_tol=args.degeneracy_tol)
        mode = "ground-state degenerate mixture"
    else:
        # unique member: largest S_t^z among the degenerate ground levels
        sel = np.where(spec.energies <= spec.energies[0] + 1e-9)[0]
        pick = sel[np.argmax(spec.sz[sel])]
        rho = pure_state_density_matrix(spec.vectors[:, pick])
        mode = "ground-state pure member"
    rep = gtn(rho)
    payload = {
        "params": {"J1/J": par.J1, "D/J": par.D, "h/J": par.h},
        "state": mode,
        "n_mu": rep.n_mu, "n_s1": rep.n_s1, "n_s2": rep.n_s2, "gtn": rep.gtn,
        "negative_eigenvalues": {
            k: v.tolist() for k, v in rep.negative_eigenvalues.items()
        },
    }
    if args.format == "json":
        print(json.dumps(payload, indent=1, sort_keys=True))
    else:
        print(f"# {mode}; J1/J={par.J1:g} D/J={par.D:g} h/J={par.h:g}")
        print(f"N_mu|S1S2 = {rep.n_mu:.12f}")
        print(f"N_S1|muS2 = {rep.n_s1:.12f}")
        print(f"N_S2|muS1 = {rep.n_s2:.12f}")
        print(f"gTN       = {rep.gtn:.12f}")
    return 0


def _cmd_phase_diagram(args) -> int:
    par = _params_from_args(args)
    x_axis = (args.x_axis, *args.x_range)
    y_axis = (args.y_axis, *args.y_range)
    pm = scan_phases(x_axis, y_axis, par)
    out = _out_path(args.out)
    if out is None:
        counts = {}
        for lab in pm.labels.ravel():
            counts[FAMILIES[lab]] = counts.get(FAMILIES[lab], 0) + 1
        for fam, cnt in sorted(counts.items(), key=lambda kv: -kv[1]):
            print(f"{fam:12s} {cnt} cells")
        print(f"# boundary pairs: {len(pm.boundaries)}")
        return 0
    write_phase_map_csv(pm, out)
    bpath = out.with_name(out.stem + "_boundaries" + out.suffix)
    write_phase_boundaries_csv(pm, bpath)
    print(f"wrote {out} and {bpath}")
    if not args.no_figure:
        render_phase_map(pm, _figure_path(out))
        print(f"wrote {_figure_path(out)}")
    return 0


def _write_scan(scan, contours, args) -> int:
    out = _out_path(args.out)
    if out is None:
        v = scan.values
        print(f"# {scan.quantity} grid {v.shape[1]}x{v.shape[0]}: "
              f"min={v.min():.6g} max={v.max():.6g}")
        return 0
    if args.format == "json":
        write_json(scan, out)
    elif args.format == "svg":
        write_svg(scan, out, contours=contours)
    else:
        write_csv(scan, out)
        if contours is not None:
            cpath = out.with_name(out.stem + "_contours" + out.suffix)
            write_contours_csv(contours, cpath)
            print(f"wrote {cpath}")
    print(f"wrote {out}")
    if not args.no_figure:
        render_heatmap(scan, _figure_path(out), contours=contours, title=scan.quantity)
        print(f"wrote {_figure_path(out)}")
    return 0


def _cmd_scan_gtn(args) -> int:
    par = _params_from_args(args)
    scan = scan_gtn_zero_T(args.h_range, args.d_range, par.J1,
                           quantity=args.quantity, threads=args.threads,
                           zero_field_offset=args.zero_field_offset)
    contours = extract_contours(scan, args.isolines) if args.isolines else None
    return _write_scan(scan, contours, args)


def _cmd_thermal_map(args) -> int:
    if args.compound:
        phys = _load_compound(args.compound)
        if args.d is not None:
            phys = replace(phys, D_over_J=args.d)
        scan = scan_thermal_physical(args.t_range, args.b_range, phys,
                                     quantity=args.quantity, threads=args.threads)
    else:
        par = _params_from_args(args)
        scan = scan_thermal(args.kt_range, args.h_range, par,
                            quantity=args.quantity, threads=args.threads)
    contours = extract_contours(scan, args.isolines) if args.isolines else None
    return _write_scan(scan, contours, args)


def _cmd_find_max(args) -> int:
    par = _params_from_args(args)
    lo, hi, n = args.range
    loc, val = find_gtn_maximum(
        args.phase, args.axis, (lo, hi), par, quantity=args.quantity,
        mode=args.mode, coarse=n, require_stability=args.require_stability,
    )
    print(f"phase {args.phase}: max {args.quantity} = {val:.6f} "
          f"at {args.axis} = {loc:.4f}  (mode={args.mode})")
    return 0


def _cmd_validate(args) -> int:
    rng = np.random.default_rng(args.seed)
    t0 = time.perf_counter()
    max_energy_dev = 0.0
    max_residual = 0.0
    for _ in range(args.points):
        j1, d, h = rng.uniform(-3.0, 3.0, 3)
        par = ModelParams(J=1.0, J1=j1, D=d, h=h)
        H = build_hamiltonian(par)
        oracle = np.linalg.eigvalsh(H)
        levels = analytic_eigensystem(par)
        energies = np.array([lv.energy for lv in levels])
        max_energy_dev = max(max_energy_dev, float(np.abs(energies - oracle).max()))
        k = int(rng.integers(0, 18))
        lv = levels[k]
        max_residual = max(
            max_residual,
            float(np.linalg.norm(H @ lv.vector - lv.energy * lv.vector)),
        )
    elapsed = time.perf_counter() - t0
    ok = max_energy_dev < 1e-8 and max_residual < 1e-8
    verdict = "PASS" if ok else "FAIL"
    print(f"{verdict}: {args.points} random points (seed={args.seed})")
    print(f"  max |energy - oracle|  = {max_energy_dev:.3e}  (tolerance 1e-8)")
    print(f"  max eigvec residual    = {max_residual:.3e}  (tolerance 1e-8)")
    print(f"  elapsed                = {elapsed:.2f} s")
    return 0 if ok else 1


def _cmd_ground(args) -> int:
    par = _params_from_args(args)
    label = ground_phase(par)
    tie = f"  tied with: {', '.join(label.tied_with)}" if label.tied_with else ""
    print(f"{label.display}{tie}")
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="spintrimer",
        description="Entanglement of the mixed spin-(1,1/2,1) Heisenberg trimer",
    )
    ap.add_argument("--version", action="version", version=f"spintrimer {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="18 labeled levels with oracle residuals")
    _add_model_flags(sp)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=_cmd_spectrum)

    sp = sub.add_parser("negativity", help="negativities at one parameter point")
    _add_model_flags(sp, with_kt=True)
    sp.add_argument("--mode", choices=("pure", "mixture"), default="pure",
                    help="ground-state mode when --kt is not given")
    sp.add_argument("--degeneracy-tol", type=float, default=1e-9,
                    help="relative energy window of the ground-state mixture")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=_cmd_negativity)

    sp = sub.add_parser("ground", help="ground-state phase label at one point")
    _add_model_flags(sp)
    sp.set_defaults(func=_cmd_ground)

    sp = sub.add_parser("phase-diagram", help="2-D ground-state phase map")
    _add_model_flags(sp)
    sp.add_argument("--x-axis", choices=("h", "d", "j1"), default="d")
    sp.add_argument("--y-axis", choices=("h", "d", "j1"), default="j1")
    sp.add_argument("--x-range", type=_parse_range, default=(-3.0, 3.0, 401))
    sp.add_argument("--y-range", type=_parse_range, default=(0.0, 3.0, 401))
    sp.add_argument("--out", default=None, help="phase map CSV path")
    sp.add_argument("--no-figure", action="store_true")
    sp.set_defaults(func=_cmd_phase_diagram)

    sp = sub.add_parser("scan-gtn", help="zero-temperature entanglement map")
    _add_model_flags(sp)
    sp.add_argument("--h-range", type=_parse_range, default=(0.0, 4.0, 201))
    sp.add_argument("--d-range", type=_parse_range, default=(-3.0, 3.0, 201))
    sp.add_argument("--zero-field-offset", type=float, default=ZERO_FIELD_OFFSET,
                    help="replacement field for exact h = 0 grid points")
    sp.add_argument("--quantity", choices=("gtn", "n_mu", "n_s1"), default="gtn")
    sp.add_argument("--isolines", type=lambda s: [float(v) for v in s.split(",")],
                    default=None, help="comma-separated isovalues")
    sp.add_argument("--out", default=None)
    sp.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--no-figure", action="store_true")
    sp.set_defaults(func=_cmd_scan_gtn)

    sp = sub.add_parser("thermal-map", help="thermal entanglement map")
    _add_model_flags(sp)
    sp.add_argument("--kt-range", type=_parse_range, default=(0.02, 2.0, 201),
                    help="k_BT/J range (dimensionless mode)")
    sp.add_argument("--h-range", type=_parse_range, default=(0.0, 4.0, 201))
    sp.add_argument("--compound", default=None,
                    help="INI file with a [compound] section (physical units)")
    sp.add_argument("--t-range", type=_parse_range, default=(1.0, 160.0, 161),
                    help="temperature range in K (compound mode)")
    sp.add_argument("--b-range", type=_parse_range, default=(0.0, 140.0, 141),
                    help="field range in T (compound mode)")
    sp.add_argument("--quantity", choices=("gtn", "n_mu", "n_s1"), default="gtn")
    sp.add_argument("--isolines", type=lambda s: [float(v) for v in s.split(",")],
                    default=None)
    sp.add_argument("--out", default=None)
    sp.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--no-figure", action="store_true")
    sp.set_defaults(func=_cmd_thermal_map)

    sp = sub.add_parser("find-max", help="maximize a phase's entanglement on one axis")
    _add_model_flags(sp)
    sp.add_argument("--phase", required=True,
                    help='level family, e.g. "3/2,3/2,II" or "1/2,1/2,I"')
    sp.add_argument("--axis", choices=("h", "d", "j1"), required=True)
    sp.add_argument("--range", type=_parse_range, default=(-3.0, 3.0, 401))
    sp.add_argument("--quantity", choices=("gtn", "n_mu", "n_s1"), default="gtn")
    sp.add_argument("--mode", choices=("vector", "mixture"), default="vector")
    sp.add_argument("--require-stability", action="store_true")
    sp.set_defaults(func=_cmd_find_max)

    sp = sub.add_parser("validate", help="closed-form vs oracle equivalence sweep")
    sp.add_argument("--points", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=7)
    sp.set_defaults(func=_cmd_validate)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
