"""Figure builders for forqlab run directories.

Read-only consumers of the run CSVs: every number drawn here is taken from
an input file (rows from the experiment CSVs, slopes from fits.csv, the
lower-bound constant from the chat row of dt.csv).  Figures regenerate
deterministically: fixed sizes, no timestamps embedded.

CSV schema: experiment,n,t,quantity,value with 17-significant-digit floats.
"""

from __future__ import annotations

import csv
import math
import warnings
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

FIGSIZE_PANEL = (3.2, 2.6)
ROW_COLUMNS = ["experiment", "n", "t", "quantity", "value"]
FIT_COLUMNS = ["experiment", "quantity", "slope", "intercept", "predicted", "residual"]


class InputError(ValueError):
    """Raised when an input CSV is missing, empty, or malformed."""


def _read_csv(path, expected_columns):
    path = Path(path)
    if not path.exists():
        raise InputError(f"input file not found: {path}")
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or [c.strip() for c in reader.fieldnames] != expected_columns:
            raise InputError(
                f"{path}: expected columns {','.join(expected_columns)}, "
                f"got {reader.fieldnames}"
            )
        rows = list(reader)
    if not rows:
        raise InputError(f"{path}: no data rows")
    return rows


def load_rows(path):
    """Parse a rows CSV into dicts with typed n, t, value."""
    out = []
    for raw in _read_csv(path, ROW_COLUMNS):
        out.append(
            {
                "experiment": raw["experiment"],
                "n": int(raw["n"]) if raw["n"] else None,
                "t": float(raw["t"]) if raw["t"] else None,
                "quantity": raw["quantity"],
                "value": float(raw["value"]),
            }
        )
    return out


def load_fits(path):
    fits = {}
    for raw in _read_csv(path, FIT_COLUMNS):
        fits[(raw["experiment"], raw["quantity"])] = {
            "slope": float(raw["slope"]),
            "intercept": float(raw["intercept"]),
            "predicted": float(raw["predicted"]) if raw["predicted"] else None,
        }
    return fits


def _save(fig, out_image):
    out_image = Path(out_image)
    fmt = out_image.suffix.lstrip(".")
    metadata = {"Date": None} if fmt == "svg" else None
    fig.savefig(out_image, format=fmt, metadata=metadata)
    plt.close(fig)
    return out_image


def plot_scalings(csv_path, out_image, fits_csv=None):
    """One panel per n-indexed quantity: points, fitted line, predicted slope.

    Values are drawn on a log2 axis against n.  Fit lines come from the
    sibling fits.csv (or an explicit fits_csv); without a usable fit the
    panel keeps the points and a warning is emitted.
    """
    rows = [r for r in load_rows(csv_path) if r["n"] is not None and r["value"] > 0]
    if not rows:
        raise InputError(f"{csv_path}: no positive n-indexed rows to plot")

    # panel per quantity; within a panel, one point set per distinct time
    series: dict = {}
    for r in rows:
        series.setdefault(r["quantity"], {}).setdefault(r["t"], {})[r["n"]] = r["value"]

    fits = {}
    fits_path = Path(fits_csv) if fits_csv else Path(csv_path).parent / "fits.csv"
    if fits_path.exists():
        fits = load_fits(fits_path)

    names = sorted(series)
    ncols = min(3, len(names))
    nrows = math.ceil(len(names) / ncols)
    fig, axes = plt.subplots(
        nrows, ncols, figsize=(FIGSIZE_PANEL[0] * ncols, FIGSIZE_PANEL[1] * nrows), squeeze=False
    )
    experiment = rows[0]["experiment"]
    for ax in axes.flat[len(names) :]:
        ax.set_visible(False)
    for ax, name in zip(axes.flat, names):
        all_ns = sorted({n for by_n in series[name].values() for n in by_n})
        for t, by_n in sorted(series[name].items(), key=lambda kv: (kv[0] is not None, kv[0])):
            pts = sorted(by_n.items())
            label = "measured" if t is None else f"t={t:g}"
            ax.plot(
                [n for n, _ in pts],
                [math.log2(v) for _, v in pts],
                "o",
                ms=4,
                mfc="none",
                label=label,
            )
        fit = fits.get((experiment, name))
        if fit is not None and len(all_ns) >= 2:
            ax.plot(
                all_ns,
                [fit["slope"] * n + fit["intercept"] for n in all_ns],
                "-",
                color="#d62728",
                lw=1,
                label=f"fit {fit['slope']:+.2f}",
            )
            if fit["predicted"] is not None:
                first = sorted(series[name].values(), key=len)[-1]
                n0 = min(first)
                anchor = math.log2(first[n0]) - fit["predicted"] * n0
                ax.plot(
                    all_ns,
                    [fit["predicted"] * n + anchor for n in all_ns],
                    "--",
                    color="#7f7f7f",
                    lw=1,
                    label=f"rate {fit['predicted']:+.2f}",
                )
        elif len(all_ns) < 2:
            warnings.warn(f"single-n data for {name!r}: points only, no fit line", stacklevel=2)
        ax.set_title(name, fontsize=7)
        ax.set_xlabel("n", fontsize=7)
        ax.set_ylabel("log2 value", fontsize=7)
        ax.tick_params(labelsize=6)
        ax.legend(fontsize=5, frameon=False)
    fig.tight_layout()
    return _save(fig, out_image)


def plot_separation(d0_csv, dt_csv, out_image):
    """Two panels: vanishing data distance, persistent solution distance.

    Left: d0(n) against n on a log scale.  Right: d(n_max, t) against t with
    the 0.5 * chat * t reference line, chat taken from the dt.csv chat row.
    """
    d0_rows = [r for r in load_rows(d0_csv) if r["quantity"] == "d0"]
    dt_all = load_rows(dt_csv)
    d_rows = [r for r in dt_all if r["quantity"] == "d"]
    if not d0_rows or not d_rows:
        raise InputError("missing d0 or d rows in the separation inputs")

    n_d0 = sorted({r["n"] for r in d0_rows})
    n_dt = sorted({r["n"] for r in d_rows})
    if n_d0 != n_dt:
        raise InputError(f"mismatched n ranges: d0 has {n_d0}, dt has {n_dt}")

    chat = next((r["value"] for r in dt_all if r["quantity"] == "chat"), None)
    n_max = n_dt[-1]
    tail = sorted((r["t"], r["value"]) for r in d_rows if r["n"] == n_max)

    fig, (left, right) = plt.subplots(1, 2, figsize=(FIGSIZE_PANEL[0] * 2, FIGSIZE_PANEL[1]))
    left.semilogy([r["n"] for r in d0_rows], [r["value"] for r in d0_rows], "o-", color="#1f77b4")
    left.set_xlabel("n", fontsize=7)
    left.set_ylabel("data distance d0(n)", fontsize=7)
    left.set_title("data families converge", fontsize=8)

    ts = [t for t, _ in tail]
    right.plot(ts, [v for _, v in tail], "o-", color="#1f77b4", label=f"d(n={n_max}, t)")
    if chat is not None and max(ts, default=0.0) > 0:
        right.plot(ts, [0.5 * chat * t for t in ts], "--", color="#d62728", label="0.5 chat t")
    right.set_xlabel("t", fontsize=7)
    right.set_ylabel("solution distance", fontsize=7)
    right.set_title("solutions stay separated", fontsize=8)
    right.legend(fontsize=6, frameon=False)
    for ax in (left, right):
        ax.tick_params(labelsize=6)
    fig.tight_layout()
    return _save(fig, out_image)
