"""Command-line entry point: config loading, experiment runs, serialization.

Config files are flat INI text (key = value under [construction],
[experiment], [solver], [run], [grid]); every key has a default, so an empty
file runs the default suite.  Outputs per run directory:

    manifest.json   config echo, grid summary, output list, wall clock
    <name>.csv      rows: experiment,n,t,quantity,value
    fits.csv        rows: experiment,quantity,slope,intercept,predicted,residual
    verdicts.json   one entry per graded criterion
    d0.csv, dt.csv  (nonuniform) data/solution distances for the plot scripts

Floats are serialized with 17 significant digits (round-trip exact), and a
given config produces byte-identical CSVs.
"""

from __future__ import annotations

import argparse
import configparser
import dataclasses
import json
import math
import os
import sys
import time
from pathlib import Path

from . import __version__
from .constructions import ConstructionParams
from .experiments import (
    ExperimentConfig,
    ExperimentReport,
    Lab,
    Row,
    Verdict,
    exp_approx_error,
    exp_convergence_u,
    exp_corollary,
    exp_lemma_scalings,
    exp_lower_bound,
    exp_lp_check,
    exp_nonuniform,
)
from .littlewood_paley import besov_norm
from .solver import BlowUpError

__all__ = ["load_config", "run", "main"]

CSV_HEADER = "experiment,n,t,quantity,value"
FITS_HEADER = "experiment,quantity,slope,intercept,predicted,residual"

EXPERIMENTS = {
    "lp-check": exp_lp_check,
    "lemma-scalings": exp_lemma_scalings,
    "corollary": exp_corollary,
    "convergence": exp_convergence_u,
    "approx-error": exp_approx_error,
    "lower-bound": exp_lower_bound,
    "nonuniform": exp_nonuniform,
}
SUBCOMMANDS = list(EXPERIMENTS) + ["evolve", "all"]

DEFAULTS = {
    "construction": {"s": "3.0", "p": "2", "r": "2", "delta": "0.02", "sigma": "1.9"},
    "experiment": {
        "n_values": "4..10",
        "times": "0 0.025 0.05 0.1",
        "slope_tol": "0.05",
        "const_tol": "0.05",
        "corollary_tol": "0.1",
        "approx_slope_margin": "0.1",
        "ratio_bound": "3.0",
        "t_slope_margin": "0.3",
        "headline_factor": "0.5",
    },
    "solver": {"cfl": "0.5", "dt": "auto", "blowup_factor": "1e3"},
    "run": {"w_sign": "minus", "workers": "1", "evolve_family": "v", "evolve_n": "max"},
    "grid": {},
}


def _parse_extended_float(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity"):
        return math.inf
    return float(text)


def _parse_n_values(text: str) -> tuple:
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..")
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(tok) for tok in text.replace(",", " ").split())


def _parse_times(text: str) -> tuple:
    return tuple(float(tok) for tok in text.replace(",", " ").split())


def load_config(path: str | None):
    """Parse and validate a config file; returns (ExperimentConfig, run options).

    Missing keys take defaults; an empty (or absent) file yields the default
    suite.  Parameter-constraint violations raise ValueError carrying the
    failed inequality.
    """
    parser = configparser.ConfigParser()
    parser.read_dict(DEFAULTS)
    if path is not None:
        with open(path) as fh:
            parser.read_file(fh)

    con, exp, sol, runsec = (parser[k] for k in ("construction", "experiment", "solver", "run"))
    n_values = _parse_n_values(exp["n_values"])
    params = ConstructionParams(
        n=n_values[0],
        s=float(con["s"]),
        p=_parse_extended_float(con["p"]),
        r=_parse_extended_float(con["r"]),
        delta=float(con["delta"]),
        sigma=float(con["sigma"]),
    )
    grid_spec = None
    if parser.has_section("grid") and parser["grid"]:
        gs = parser["grid"]
        grid_spec = (float(gs["l"]), int(gs["n"]), float(gs["k_keep"]))
    dt_text = sol["dt"].strip().lower()
    cfg = ExperimentConfig(
        params=params,
        n_values=n_values,
        times=_parse_times(exp["times"]),
        cfl=float(sol["cfl"]),
        dt=None if dt_text in ("auto", "none", "") else float(sol["dt"]),
        blowup_factor=float(sol["blowup_factor"]),
        slope_tol=float(exp["slope_tol"]),
        const_tol=float(exp["const_tol"]),
        corollary_tol=float(exp["corollary_tol"]),
        approx_slope_margin=float(exp["approx_slope_margin"]),
        ratio_bound=float(exp["ratio_bound"]),
        t_slope_margin=float(exp["t_slope_margin"]),
        headline_factor=float(exp["headline_factor"]),
        w_sign=runsec["w_sign"].strip(),
        workers=int(runsec["workers"]),
        grid_spec=grid_spec,
    )
    evolve_n = runsec["evolve_n"].strip().lower()
    options = {
        "evolve_family": runsec["evolve_family"].strip(),
        "evolve_n": n_values[-1] if evolve_n == "max" else int(evolve_n),
    }
    return cfg, options


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _write_rows(path: Path, rows) -> None:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(",".join([r.experiment, _fmt(r.n), _fmt(r.t), r.quantity, _fmt(r.value)]))
    path.write_text("\n".join(lines) + "\n")


def _append_fits(collected: list, report: ExperimentReport) -> None:
    for f in report.fits:
        collected.append(
            ",".join(
                [
                    report.experiment,
                    f.quantity,
                    _fmt(f.slope),
                    _fmt(f.intercept),
                    _fmt(f.predicted),
                    _fmt(f.residual),
                ]
            )
        )


def _evolve_report(cfg: ExperimentConfig, lab: Lab, options: dict) -> ExperimentReport:
    rep = ExperimentReport("evolve")
    family = options.get("evolve_family", "v")
    n = options.get("evolve_n", cfg.n_values[-1])
    if family not in ("u", "v"):
        raise ValueError(f"evolve_family must be 'u' or 'v', got {family!r}")
    try:
        traj = lab.trajectory(family, n)
    except BlowUpError as e:
        rep.verdicts.append(Verdict("solve_completed", e.time, max(cfg.times), 0.0, False))
        return rep

    idx = lab.index(cfg.params.s)
    for t, fieldv in traj.snapshots:
        rep.rows.append(Row("evolve", n, t, "besov_s", besov_norm(fieldv, idx, lab.partition)))
    for i, t in enumerate(traj.diag_times):
        rep.rows.append(Row("evolve", n, float(t), "mass", float(traj.mass[i])))
        rep.rows.append(Row("evolve", n, float(t), "linf", float(traj.linf[i])))
        rep.rows.append(Row("evolve", n, float(t), "dx_linf", float(traj.dx_linf[i])))
    drift = max(abs(m - traj.mass[0]) for m in traj.mass) / max(abs(traj.mass[0]), 1e-300)
    rep.rows.append(Row("evolve", n, None, "mass_drift_rel", drift))
    rep.verdicts.append(Verdict("mass_conserved", drift, 0.0, 1e-9, drift < 1e-9))
    return rep


def run(subcommand: str, cfg: ExperimentConfig, out_dir: str, options: dict | None = None) -> int:
    """Execute a subcommand, writing manifest, CSV tables, fits, and verdicts.

    Returns 0 iff every graded verdict passed.
    """
    options = options or {}
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    names = list(EXPERIMENTS) if subcommand == "all" else [subcommand]
    planned = []
    for name in names:
        planned.append(f"{name}.csv")
        if name == "nonuniform":
            planned += ["d0.csv", "dt.csv"]
    planned += ["fits.csv", "verdicts.json"]

    lab = Lab(cfg)
    manifest = {
        "tool": "forqlab",
        "version": __version__,
        "subcommand": subcommand,
        "config": dataclasses.asdict(cfg),
        "grid": {
            "L": lab.grid.L,
            "N": lab.grid.N,
            "K_keep": lab.grid.K_keep,
            "q_max": lab.partition.q_max,
        },
        "outputs": planned,
        "wall_clock_s": {name: None for name in names},
    }
    manifest_path = out / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2, default=str) + "\n")

    fits_lines: list = []
    verdicts: list = []
    for name in names:
        t0 = time.perf_counter()
        if name == "evolve":
            report = _evolve_report(cfg, lab, options)
        else:
            report = EXPERIMENTS[name](cfg, lab)
        manifest["wall_clock_s"][name] = round(time.perf_counter() - t0, 3)

        _write_rows(out / f"{name}.csv", report.rows)
        if name == "nonuniform":
            _write_rows(out / "d0.csv", [r for r in report.rows if r.quantity == "d0"])
            _write_rows(
                out / "dt.csv",
                [r for r in report.rows if r.quantity in ("d", "chat")],
            )
        _append_fits(fits_lines, report)
        for v in report.verdicts:
            verdicts.append(
                {
                    "experiment": name,
                    "criterion": v.criterion,
                    "measured": float(v.measured),
                    "expected": float(v.expected),
                    "tolerance": float(v.tolerance),
                    "pass": bool(v.passed),
                }
            )
        status = "ok" if report.passed else "FAIL"
        print(f"[forqlab] {name}: {len(report.rows)} rows, "
              f"{sum(v.passed for v in report.verdicts)}/{len(report.verdicts)} verdicts pass ({status})")

    (out / "fits.csv").write_text("\n".join([FITS_HEADER] + fits_lines) + "\n")
    (out / "verdicts.json").write_text(json.dumps(verdicts, indent=2) + "\n")
    manifest_path.write_text(json.dumps(manifest, indent=2, default=str) + "\n")

    return 0 if all(v["pass"] for v in verdicts) else 1


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="forqlab",
        description="FORQ equation laboratory: Besov norms, scalings, and the "
        "non-uniform-continuity experiments",
    )
    sub = ap.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", default=None, help="INI config file (defaults if omitted)")
        p.add_argument("--out", default="out", help="output directory")
        p.add_argument("--workers", type=int, default=None, help="parallel solve workers")
        p.add_argument("--w-sign", choices=["plus", "minus"], default=None,
                       help="transport sign of the approximate solution")
    args = ap.parse_args(argv)

    try:
        cfg, options = load_config(args.config)
        if args.workers is not None:
            cfg = dataclasses.replace(cfg, workers=args.workers)
        if args.w_sign is not None:
            cfg = dataclasses.replace(cfg, w_sign=args.w_sign)
    except (ValueError, KeyError, configparser.Error) as e:
        print(f"forqlab: invalid configuration: {e}", file=sys.stderr)
        return 1

    out_dir = os.environ.get("FORQLAB_OUT") or args.out
    return run(args.subcommand, cfg, out_dir, options)


if __name__ == "__main__":
    sys.exit(main())
