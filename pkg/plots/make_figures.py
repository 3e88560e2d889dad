"""Turn a forqlab run directory into figures.

    python plots/make_figures.py <run-dir> [--format png|svg]

Produces one scaling figure per experiment CSV that carries n-indexed
quantities (lemma-scalings, corollary, lower-bound, nonuniform) and, when
d0.csv and dt.csv are present, the two-panel separation figure with the
0.5 * chat * t reference line.  Exit 0 on success.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from figures import InputError, plot_scalings, plot_separation  # noqa: E402

SCALING_SOURCES = ["lemma-scalings", "corollary", "lower-bound", "nonuniform"]


def make_figures(run_dir, fmt="png"):
    run_dir = Path(run_dir)
    if not run_dir.is_dir():
        raise InputError(f"not a run directory: {run_dir}")
    made = []
    for name in SCALING_SOURCES:
        src = run_dir / f"{name}.csv"
        if src.exists():
            made.append(plot_scalings(src, run_dir / f"scalings_{name}.{fmt}"))
    d0, dt = run_dir / "d0.csv", run_dir / "dt.csv"
    if d0.exists() and dt.exists():
        made.append(plot_separation(d0, dt, run_dir / f"separation.{fmt}"))
    if not made:
        raise InputError(f"no plottable CSVs found in {run_dir}")
    return made


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="make_figures", description=__doc__)
    ap.add_argument("run_dir", help="directory written by a forqlab run")
    ap.add_argument("--format", choices=["png", "svg"], default="png")
    args = ap.parse_args(argv)
    try:
        made = make_figures(args.run_dir, args.format)
    except InputError as e:
        print(f"make_figures: {e}", file=sys.stderr)
        return 1
    for path in made:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
