"""Render the reference figures from CSV produced by the cvqkd CLI.

Each figure id maps to one CSV schema:

    fig5    noise-breakdown   Raman photons vs distance
    fig6    noise-breakdown   total thermal photons vs distance
    fig7a   rate-sweep        rate vs distance per trust level + PLOB line
    fig7b   rate-sweep        rate vs source attenuation per trust level
    fig8a   noise-breakdown   decomposition pie at the row nearest 25 km
    fig8b   noise-breakdown   decomposition pie at the row nearest 50 km
    fig9a   satellite-orbit   per-slice rate vs zenith per trust level
    fig9b   daily CSV         daily bits vs ground distance

Rates are drawn on a log axis (fig7*, fig9*); photon budgets on linear axes.
The renderer only reads the CSV; no physics is recomputed here.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

FIGURE_IDS = ("fig5", "fig6", "fig7a", "fig7b", "fig8a", "fig8b", "fig9a", "fig9b")

PIE_COMPONENTS = (
    "rin", "vol", "raman", "background", "electronic",
    "common_mode", "quantization", "phase",
)

_REQUIRED = {
    "fig5": ("distance_km", "raman"),
    "fig6": ("distance_km", "total"),
    "fig7a": ("sweep_value", "trust", "r_com_pe", "plob"),
    "fig7b": ("sweep_value", "trust", "r_com_pe"),
    "fig8a": ("distance_km",) + PIE_COMPONENTS,
    "fig8b": ("distance_km",) + PIE_COMPONENTS,
    "fig9a": ("trust", "theta_min", "theta_max", "r_com_pe"),
    "fig9b": ("distance_km",),
}

_RATE_FLOOR = 1e-8  # log-axis stand-in for clamped zero rates


class SchemaError(Exception):
    """CSV does not carry the columns the requested figure needs."""

    def __init__(self, figure_id: str, missing: list[str]):
        self.missing = missing
        super().__init__(f"{figure_id}: missing columns {', '.join(missing)}")


@dataclass(frozen=True)
class FigureSpec:
    csv_path: str | Path
    figure_id: str
    output_image_path: str | Path


def _load_rows(spec: FigureSpec) -> list[dict]:
    with open(spec.csv_path, newline="") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        rows = list(reader)
    required = list(_REQUIRED[spec.figure_id])
    if spec.figure_id == "fig9b":
        # at least one fiber curve and one satellite line
        if not any(col.startswith("fiber_rep") for col in header):
            required.append("fiber_rep*")
        if not any(col.startswith("sat_") for col in header):
            required.append("sat_*")
    missing = [col for col in required if "*" in col or col not in header]
    if missing or not rows:
        if not rows and not missing:
            missing = required
        raise SchemaError(spec.figure_id, missing)
    return rows


def _series(rows: list[dict], key_col: str, x_col: str, y_col: str):
    """Group rows into {key: (xs, ys)} preserving first-seen key order."""
    out: dict[str, tuple[list[float], list[float]]] = {}
    for row in rows:
        xs, ys = out.setdefault(row[key_col], ([], []))
        xs.append(float(row[x_col]))
        ys.append(float(row[y_col]))
    return out


def render(spec: FigureSpec):
    """Write the figure image and return the matplotlib Figure."""
    if spec.figure_id not in FIGURE_IDS:
        raise SchemaError(str(spec.figure_id), ["<unknown figure id>"])
    rows = _load_rows(spec)
    fig, ax = plt.subplots(figsize=(6.4, 4.2))

    if spec.figure_id in ("fig5", "fig6"):
        column = "raman" if spec.figure_id == "fig5" else "total"
        xs = [float(r["distance_km"]) for r in rows]
        ys = [float(r[column]) for r in rows]
        ax.plot(xs, ys)
        ax.set_xlabel("distance (km)")
        ax.set_ylabel(
            "Raman photons per mode" if spec.figure_id == "fig5"
            else "total thermal photons per mode"
        )

    elif spec.figure_id in ("fig7a", "fig7b"):
        for trust, (xs, ys) in _series(rows, "trust", "sweep_value", "r_com_pe").items():
            ax.plot(xs, [max(y, _RATE_FLOOR) for y in ys], label=trust)
        if spec.figure_id == "fig7a":
            xs = sorted({float(r["sweep_value"]) for r in rows})
            plob = {float(r["sweep_value"]): float(r["plob"]) for r in rows}
            ax.plot(xs, [max(plob[x], _RATE_FLOOR) for x in xs],
                    color="grey", linestyle="--", label="PLOB")
        ax.set_yscale("log")
        ax.set_xlabel("distance (km)" if spec.figure_id == "fig7a" else "source transmittance")
        ax.set_ylabel("composable rate (bit/use)")
        ax.legend(fontsize=8)

    elif spec.figure_id in ("fig8a", "fig8b"):
        target = 25.0 if spec.figure_id == "fig8a" else 50.0
        row = min(rows, key=lambda r: abs(float(r["distance_km"]) - target))
        values = [float(row[c]) for c in PIE_COMPONENTS]
        keep = [(c, v) for c, v in zip(PIE_COMPONENTS, values) if v > 0.0]
        ax.pie([v for _, v in keep], labels=[c for c, _ in keep],
               autopct="%1.1f%%", textprops={"fontsize": 7})
        ax.set_title(f"thermal-photon decomposition at {float(row['distance_km']):g} km")

    elif spec.figure_id == "fig9a":
        grouped: dict[str, tuple[list[float], list[float]]] = {}
        for row in rows:
            mid = 0.5 * (float(row["theta_min"]) + float(row["theta_max"]))
            xs, ys = grouped.setdefault(row["trust"], ([], []))
            xs.append(mid)
            ys.append(max(float(row["r_com_pe"]), _RATE_FLOOR))
        for trust, (xs, ys) in grouped.items():
            order = sorted(range(len(xs)), key=xs.__getitem__)
            ax.plot([xs[i] for i in order], [ys[i] for i in order],
                    marker="o", markersize=3, label=trust)
        ax.set_yscale("log")
        ax.set_xlabel("zenith angle (rad)")
        ax.set_ylabel("composable rate (bit/use)")
        ax.legend(fontsize=8)

    else:  # fig9b
        header = rows[0].keys()
        xs = [float(r["distance_km"]) for r in rows]
        for col in header:
            if col.startswith("fiber_rep"):
                ax.plot(xs, [max(float(r[col]), _RATE_FLOOR) for r in rows],
                        color="grey", linewidth=0.9, label=col)
        for col in header:
            if col.startswith("sat_"):
                ax.plot(xs, [max(float(r[col]), _RATE_FLOOR) for r in rows],
                        label=col)
        ax.set_yscale("log")
        ax.set_xlabel("ground distance (km)")
        ax.set_ylabel("secret bits per day")
        ax.legend(fontsize=8)

    fig.tight_layout()
    fig.savefig(spec.output_image_path, dpi=150)
    plt.close(fig)
    return fig
