"""Command-line front end: scenario sweeps and CSV emission.

Subcommands
    rate-sweep       fibre key-rate curves over a swept variable
    noise-breakdown  per-distance decomposition of the thermal-photon budget
    pe-validate      Monte-Carlo coverage of the estimation confidence bounds
    satellite-orbit  per-slice orbital rates, optional daily-bits comparison

Exit codes: 0 success, 2 configuration error, 3 every row failed to compute.
CSV cells use 17 significant digits so regression diffs are meaningful; the
worker count for sweeps comes from the CVQKD_THREADS environment variable.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .config import ScenarioConfig, load_config
from .errors import ConfigError, CVQKDError
from .finite_size import finite_size_rate
from .noise import fiber_scenario
from .rates import plob_thermal_bound
from .sampling import SyntheticChannel, coverage_experiment
from .satellite import (
    BuiltinTransmittance,
    TableTransmittance,
    daily_bits_fiber,
    daily_bits_satellite,
    orbital_rate,
    reference_profile,
)
from .trust import TrustLevel

_SWEEP_VARIABLES = ("length_km", "eta0", "modulation_variance",
                    "p_in_per_channel_w", "n_channels")


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return "" if value is None else str(value)


def _write_csv(rows: list[dict], columns: list[str], out: str | None) -> None:
    handle = open(out, "w", newline="") if out else sys.stdout
    try:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row.get(col)) for col in columns])
    finally:
        if out:
            handle.close()


def _workers() -> int:
    raw = os.environ.get("CVQKD_THREADS", "")
    if raw.strip():
        try:
            return max(1, int(raw))
        except ValueError as exc:
            raise ConfigError(f"CVQKD_THREADS: expected an integer, got {raw!r}") from exc
    return min(4, os.cpu_count() or 1)


def _fiber_at(cfg: ScenarioConfig, variable: str, value: float):
    fiber = cfg.fiber
    sigma_x2 = cfg.modulation_variance
    eta0 = cfg.eta0
    if variable == "length_km":
        fiber = dataclasses.replace(fiber, length_km=float(value))
    elif variable == "eta0":
        eta0 = float(value)
    elif variable == "modulation_variance":
        sigma_x2 = float(value)
    elif variable == "p_in_per_channel_w":
        fiber = dataclasses.replace(fiber, p_in_per_channel_w=float(value))
    elif variable == "n_channels":
        fiber = dataclasses.replace(fiber, n_channels=int(round(value)))
    else:
        raise ConfigError(
            f"sweep.variable: expected one of {_SWEEP_VARIABLES}, got {variable!r}"
        )
    return fiber_scenario(
        cfg.hardware, fiber, sigma_x2, eta0=eta0, detector=cfg.detector,
        wavelength_nm=cfg.wavelength_nm,
    )


RATE_SWEEP_COLUMNS = [
    "sweep_value", "trust", "tau", "n_total", "snr", "i_ab", "chi",
    "r_asy", "r_com_pe", "plob", "error",
]


def run_rate_sweep(cfg: ScenarioConfig) -> list[dict]:
    if cfg.mode != "fiber":
        raise ConfigError("mode: rate-sweep requires mode 'fiber'")
    variable = cfg.sweep.variable
    values = cfg.sweep.values()

    def point_rows(value: float) -> list[dict]:
        rows = []
        try:
            params, budget = _fiber_at(cfg, variable, value)
            plob = plob_thermal_bound(params.tau, params.n_total)
            shared = None
        except CVQKDError as exc:
            shared = str(exc)
        for level in cfg.trust:
            row = {"sweep_value": float(value), "trust": level.label()}
            if shared is not None:
                row["error"] = shared
                rows.append(row)
                continue
            try:
                result = finite_size_rate(level, params, budget, cfg.composition, cfg.beta)
                row.update(
                    tau=params.tau,
                    n_total=params.n_total,
                    snr=result.rate.snr,
                    i_ab=result.rate.i_ab,
                    chi=result.rate.chi,
                    r_asy=result.rate.r_asy,
                    r_com_pe=result.r_com_clamped,
                    plob=plob,
                )
            except CVQKDError as exc:
                row["error"] = str(exc)
            rows.append(row)
        return rows

    with ThreadPoolExecutor(max_workers=_workers()) as pool:
        chunks = list(pool.map(point_rows, values))
    return [row for chunk in chunks for row in chunk]


BREAKDOWN_COLUMNS = [
    "distance_km", "tau", "rin", "vol", "raman", "background", "electronic",
    "common_mode", "quantization", "phase", "total",
    "n_tx", "n_ch", "n_rx", "raman_backward", "oa", "error",
]


def run_noise_breakdown(cfg: ScenarioConfig) -> list[dict]:
    if cfg.mode != "fiber":
        raise ConfigError("mode: noise-breakdown requires mode 'fiber'")

    def row_for(distance: float) -> dict:
        row = {"distance_km": float(distance)}
        try:
            params, budget = _fiber_at(cfg, "length_km", distance)
            row.update(budget.receiver_referred())
            row.update(
                tau=params.tau,
                total=budget.n_total,
                n_tx=budget.n_tx,
                n_ch=budget.n_ch,
                n_rx=budget.n_rx,
                raman_backward=budget.n_ram_backward,
                oa=budget.n_oa,
            )
        except CVQKDError as exc:
            row["error"] = str(exc)
        return row

    with ThreadPoolExecutor(max_workers=_workers()) as pool:
        return list(pool.map(row_for, cfg.distances))


PE_COLUMNS = [
    "tau", "n_total", "sigma_x2", "v_det", "m_pe", "eps_pe", "trials", "seed",
    "w", "tau_violation_rate", "n_violation_rate", "joint_violation_rate",
    "mean_tau_hat", "mean_n_hat", "mean_tau_gap", "error",
]


def run_pe_validation(cfg: ScenarioConfig, seed: int | None) -> list[dict]:
    rows = []
    base_seed = cfg.seed if seed is None else seed
    for spec in cfg.pe_validation:
        row = {
            "tau": spec.tau, "n_total": spec.n_total, "sigma_x2": spec.sigma_x2,
            "v_det": spec.v_det, "m_pe": spec.m_pe, "eps_pe": spec.eps_pe,
            "trials": spec.trials, "seed": base_seed,
        }
        try:
            channel = SyntheticChannel(
                tau=spec.tau, n_total=spec.n_total, sigma_x2=spec.sigma_x2,
                v_det=spec.v_det, seed=base_seed,
            )
            report = coverage_experiment(channel, spec.m_pe, spec.eps_pe, spec.trials)
            row.update(
                w=report.w,
                tau_violation_rate=report.tau_rate,
                n_violation_rate=report.n_rate,
                joint_violation_rate=report.joint_rate,
                mean_tau_hat=report.mean_tau_hat,
                mean_n_hat=report.mean_n_hat,
                mean_tau_gap=report.mean_tau_gap,
            )
        except CVQKDError as exc:
            row["error"] = str(exc)
        rows.append(row)
    return rows


ORBIT_COLUMNS = [
    "trust", "slice_index", "theta_min", "theta_max", "eta_worst",
    "n_rounds", "r_com_pe", "error",
]

DAILY_COLUMNS_PREFIX = ["distance_km"]


def _provider(cfg: ScenarioConfig):
    spec = cfg.transmittance
    if spec.provider == "reference":
        return reference_profile()
    if spec.provider == "table":
        return TableTransmittance.from_file(spec.path)
    return BuiltinTransmittance(
        waist_m=spec.waist_m,
        aperture_m=spec.aperture_m,
        wavelength_nm=spec.wavelength_nm,
        extinction_zenith=spec.extinction_zenith,
        excess=spec.excess,
    )


def run_satellite_orbit(cfg: ScenarioConfig) -> tuple[list[dict], list[dict], list[str]]:
    if cfg.mode != "satellite":
        raise ConfigError("mode: satellite-orbit requires mode 'satellite'")
    provider = _provider(cfg)
    rows: list[dict] = []
    summary: list[str] = []
    orbital: dict[TrustLevel, float] = {}
    t_q = None
    for level in cfg.trust:
        try:
            result = orbital_rate(
                cfg.orbit, provider, cfg.hardware, cfg.optics, cfg.sky, level,
                cfg.modulation_variance, cfg.composition, beta=cfg.beta,
                eta0=cfg.eta0, detector=cfg.detector,
            )
        except CVQKDError as exc:
            rows.append({"trust": level.label(), "error": str(exc)})
            continue
        t_q = result.t_q_s
        orbital[level] = result.r_orb
        daily = daily_bits_satellite(result.r_orb, cfg.orbit.clock_hz, result.t_q_s)
        summary.append(
            f"{level.label()}: R_orb = {result.r_orb:.6g} bit/use, "
            f"daily bits = {daily:.6g}"
        )
        for s in result.slices:
            rows.append(
                {
                    "trust": level.label(),
                    "slice_index": s.index,
                    "theta_min": s.theta_min,
                    "theta_max": s.theta_max,
                    "eta_worst": s.eta_worst,
                    "n_rounds": s.n_rounds,
                    "r_com_pe": s.r_com_clamped,
                }
            )
    if t_q is not None:
        summary.insert(0, f"t_Q = {t_q:.6g} s over {cfg.orbit.n_slices} slices")

    daily_rows: list[dict] = []
    if t_q is not None:
        for distance in cfg.daily.distances():
            row = {"distance_km": float(distance)}
            for n_rep in cfg.daily.repeaters:
                row[f"fiber_rep{n_rep}"] = daily_bits_fiber(
                    distance, n_rep, cfg.orbit.clock_hz
                )
            for level, r_orb in orbital.items():
                row[f"sat_{level.label().lower()}"] = daily_bits_satellite(
                    r_orb, cfg.orbit.clock_hz, t_q
                )
            daily_rows.append(row)
    return rows, daily_rows, summary


def _daily_columns(cfg: ScenarioConfig, daily_rows: list[dict]) -> list[str]:
    columns = list(DAILY_COLUMNS_PREFIX)
    columns += [f"fiber_rep{n}" for n in cfg.daily.repeaters]
    if daily_rows:
        columns += [key for key in daily_rows[0] if key.startswith("sat_")]
    return columns


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="cvqkd", description="CV-QKD composable rate engine"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("rate-sweep", "noise-breakdown", "pe-validate", "satellite-orbit"):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="scenario YAML file")
        p.add_argument("--out", default=None, help="output CSV path (default stdout)")
        p.add_argument("--seed", type=int, default=None, help="RNG seed override")
        p.add_argument("--format", default="csv", choices=["csv"])
        if name == "satellite-orbit":
            p.add_argument("--daily-out", default=None,
                           help="optional CSV of daily bits vs ground distance")
    args = parser.parse_args(argv)

    try:
        cfg = load_config(args.config)
        if args.command == "rate-sweep":
            rows = run_rate_sweep(cfg)
            _write_csv(rows, RATE_SWEEP_COLUMNS, args.out)
        elif args.command == "noise-breakdown":
            rows = run_noise_breakdown(cfg)
            _write_csv(rows, BREAKDOWN_COLUMNS, args.out)
        elif args.command == "pe-validate":
            rows = run_pe_validation(cfg, args.seed)
            _write_csv(rows, PE_COLUMNS, args.out)
        else:
            rows, daily_rows, summary = run_satellite_orbit(cfg)
            _write_csv(rows, ORBIT_COLUMNS, args.out)
            if args.daily_out and daily_rows:
                _write_csv(daily_rows, _daily_columns(cfg, daily_rows), args.daily_out)
            for line in summary:
                print(line, file=sys.stderr)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except CVQKDError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3

    if rows and all(row.get("error") for row in rows):
        print("error: every row failed to compute", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
