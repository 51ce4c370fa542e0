"""LEO downlink: sky background, orbit geometry, sector slicing, daily keys.

The satellite flies a circular zenith-crossing orbit.  Quantum transmission
is restricted to the sector where the zenith angle stays within a configured
half-width (one radiant by default); that sector is cut into equal-time
slices, each processed as one finite-size block at its worst (largest)
zenith angle, and the orbital rate is the average over slices.

The free-space transmittance itself is delegated to a provider: either an
interpolated zenith profile from a file, or a first-principles
diffraction + extinction + excess-loss approximation for sensitivity
studies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import BelowHorizon, DomainError, ProfileRange
from .finite_size import CompositionParams, FiniteSizeResult, finite_size_rate
from .noise import HardwareParams, compose_budget
from .rates import repeater_chain_rate
from .trust import ScenarioParams, TrustLevel

GRAV_CONST = 6.6743e-11  # m^3 / (kg s^2)

_REFERENCE_PROFILE = "transmittance_530km_night.txt"


@dataclass(frozen=True)
class ReceiverOptics:
    """Ground-station receiver front end."""

    aperture_m: float = 0.4
    fov_sr: float = 1e-10
    filter_nm: float = 1e-4  # 0.1 pm, set by the local-oscillator bandwidth
    pulse_dt_s: float = 1e-8
    wavelength_nm: float = 800.0

    def __post_init__(self) -> None:
        for name in ("aperture_m", "fov_sr", "filter_nm", "pulse_dt_s", "wavelength_nm"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class SkyModel:
    """Spectral irradiances in photons / (m^2 s nm sr)."""

    irradiance_sky: float = 1.9e13  # clear night at 800 nm
    irradiance_sun: float = 0.0
    kappa: float = 0.0

    def __post_init__(self) -> None:
        if self.irradiance_sky < 0.0 or self.irradiance_sun < 0.0 or self.kappa < 0.0:
            raise ValueError("sky model values must be >= 0")

    @classmethod
    def clear_night(cls) -> "SkyModel":
        return cls(irradiance_sky=1.9e13)

    @classmethod
    def clear_day(cls) -> "SkyModel":
        return cls(irradiance_sky=1.9e16)


@dataclass(frozen=True)
class OrbitConfig:
    altitude_km: float = 530.0
    earth_radius_km: float = 6371.0
    earth_mass_kg: float = 5.97e24
    grav_const: float = GRAV_CONST
    clock_hz: float = 1e7
    sector_halfwidth_rad: float = 1.0
    n_slices: int = 20
    slice_window_s: float = 10.0

    def __post_init__(self) -> None:
        if not 0.0 < self.altitude_km <= 2000.0:
            raise ValueError(f"altitude must be in (0, 2000] km, got {self.altitude_km}")
        if self.n_slices < 1:
            raise ValueError(f"n_slices must be >= 1, got {self.n_slices}")
        if not 0.0 < self.sector_halfwidth_rad < math.pi / 2.0:
            raise ValueError("sector_halfwidth_rad must be in (0, pi/2)")

    @property
    def orbit_radius_m(self) -> float:
        return (self.earth_radius_km + self.altitude_km) * 1e3

    @property
    def speed_m_s(self) -> float:
        return math.sqrt(self.grav_const * self.earth_mass_kg / self.orbit_radius_m)

    @property
    def period_s(self) -> float:
        return 2.0 * math.pi * self.orbit_radius_m / self.speed_m_s


# ---------------------------------------------------------------------------
# background photons


def gamma_r(optics: ReceiverOptics) -> float:
    """Receiver acceptance Gamma_R = filter * dt * fov * aperture^2 (m^2 s nm sr)."""
    return optics.filter_nm * optics.pulse_dt_s * optics.fov_sr * optics.aperture_m**2


def background_photons_downlink(optics: ReceiverOptics, sky: SkyModel) -> float:
    """Sky photons per mode seen by the ground receiver."""
    return sky.irradiance_sky * gamma_r(optics)


def background_photons_uplink(optics: ReceiverOptics, sky: SkyModel) -> float:
    """Reflected-sunlight photons per mode at a satellite receiver."""
    return sky.kappa * sky.irradiance_sun * gamma_r(optics)


# ---------------------------------------------------------------------------
# orbit geometry


def slant_distance_km(cfg: OrbitConfig, alpha0: float) -> float:
    """Ground-station to satellite range at orbital angle alpha0 (law of cosines)."""
    re = cfg.earth_radius_km
    rs = cfg.earth_radius_km + cfg.altitude_km
    return math.sqrt(re * re + rs * rs - 2.0 * re * rs * math.cos(alpha0))


def zenith_angle(cfg: OrbitConfig, alpha0: float) -> float:
    """Signed zenith angle at orbital angle alpha0; BelowHorizon past pi/2."""
    z = slant_distance_km(cfg, alpha0)
    rs = cfg.earth_radius_km + cfg.altitude_km
    s = rs * math.sin(alpha0) / z
    s = min(max(s, -1.0), 1.0)
    theta = math.asin(s)
    # asin folds obtuse angles back; past the tangent point the satellite
    # has set.  The line of sight is horizontal when cos(alpha0) = Re / Rs.
    if math.cos(alpha0) <= cfg.earth_radius_km / rs:
        raise BelowHorizon(f"satellite below horizon at orbital angle {alpha0}")
    return theta


def orbit_kinematics(cfg: OrbitConfig, t_s: float) -> tuple[float, float, float]:
    """(orbital angle, zenith angle, slant distance km) at time t from zenith pass.

    The orbital angle is the arc travelled over the orbit radius,
    alpha0 = v t / (Re + h), so t = 0 is the zenith crossing.
    """
    alpha0 = cfg.speed_m_s * t_s / cfg.orbit_radius_m
    theta = zenith_angle(cfg, alpha0)
    return alpha0, theta, slant_distance_km(cfg, alpha0)


def sector_transmission_time(cfg: OrbitConfig) -> float:
    """Time spent with |zenith| below the sector half-width (bisection)."""
    target = cfg.sector_halfwidth_rad
    rs = cfg.earth_radius_km + cfg.altitude_km
    alpha_horizon = math.acos(cfg.earth_radius_km / rs)
    lo, hi = 0.0, alpha_horizon * (1.0 - 1e-12)
    if zenith_angle(cfg, hi) <= target:
        raise DomainError("sector half-width unreachable before the horizon")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if zenith_angle(cfg, mid) < target:
            lo = mid
        else:
            hi = mid
    alpha_star = 0.5 * (lo + hi)
    return 2.0 * alpha_star * cfg.orbit_radius_m / cfg.speed_m_s


# ---------------------------------------------------------------------------
# transmittance providers


class TableTransmittance:
    """Linear interpolation of a tabulated eta(|zenith|) profile.

    The file format is two whitespace-separated columns, zenith_rad and eta,
    with strictly increasing zenith; '#' starts a comment.
    """

    def __init__(self, zenith_rad: np.ndarray, eta: np.ndarray):
        zenith_rad = np.asarray(zenith_rad, dtype=float)
        eta = np.asarray(eta, dtype=float)
        if zenith_rad.ndim != 1 or zenith_rad.size < 2 or zenith_rad.size != eta.size:
            raise DomainError("profile needs >= 2 rows of (zenith, eta)")
        if np.any(np.diff(zenith_rad) <= 0.0):
            raise DomainError("profile zenith column must be strictly increasing")
        if np.any(eta <= 0.0) or np.any(eta > 1.0):
            raise DomainError("profile eta values must be in (0, 1]")
        self.zenith_rad = zenith_rad
        self.eta = eta

    @classmethod
    def from_file(cls, path: str | Path) -> "TableTransmittance":
        rows = []
        for line in Path(path).read_text().splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            cols = line.split()
            if len(cols) != 2:
                raise DomainError(f"profile rows need two columns, got {line!r}")
            rows.append((float(cols[0]), float(cols[1])))
        data = np.array(rows)
        return cls(data[:, 0], data[:, 1])

    def transmittance(self, zenith_rad: float, slant_km: float | None = None) -> float:
        z = abs(zenith_rad)
        if z < self.zenith_rad[0] - 1e-12 or z > self.zenith_rad[-1] + 1e-12:
            raise ProfileRange(
                f"zenith {z} outside profile range "
                f"[{self.zenith_rad[0]}, {self.zenith_rad[-1]}]"
            )
        return float(np.interp(z, self.zenith_rad, self.eta))


class BuiltinTransmittance:
    """Far-field diffraction times extinction times a constant excess loss.

    eta_diff = 1 - exp(-2 a_R^2 / w_z^2) with w_z the diffracted beam waist
    at the slant distance, extinction exp(-alpha_zenith * sec(zenith)) for
    one atmosphere, and a configurable excess factor.  A smooth stand-in
    for the full turbulence/pointing treatment, not a replacement.
    """

    def __init__(
        self,
        waist_m: float = 0.4,
        aperture_m: float = 0.4,
        wavelength_nm: float = 800.0,
        extinction_zenith: float = 0.35,
        excess: float = 1.0,
    ):
        if waist_m <= 0.0 or aperture_m <= 0.0 or wavelength_nm <= 0.0:
            raise DomainError("waist, aperture and wavelength must be positive")
        if not 0.0 < excess <= 1.0:
            raise DomainError(f"excess factor must be in (0, 1], got {excess}")
        self.waist_m = waist_m
        self.aperture_m = aperture_m
        self.wavelength_m = wavelength_nm * 1e-9
        self.extinction_zenith = extinction_zenith
        self.excess = excess

    def transmittance(self, zenith_rad: float, slant_km: float) -> float:
        if slant_km is None or slant_km < 0.0:
            raise DomainError("builtin provider needs a slant distance")
        z_m = slant_km * 1e3
        rayleigh = math.pi * self.waist_m**2 / self.wavelength_m
        w_z = self.waist_m * math.sqrt(1.0 + (z_m / rayleigh) ** 2)
        eta_diff = 1.0 - math.exp(-2.0 * self.aperture_m**2 / w_z**2)
        sec = 1.0 / math.cos(min(abs(zenith_rad), math.pi / 2.0 - 1e-9))
        atmo = math.exp(-self.extinction_zenith * sec)
        return min(eta_diff * atmo * self.excess, 1.0)


def freespace_transmittance(provider, zenith_rad: float, cfg: OrbitConfig) -> float:
    """Channel transmittance at a zenith angle through the given provider."""
    if abs(zenith_rad) >= math.pi / 2.0:
        raise BelowHorizon(f"zenith {zenith_rad} at or past the horizon")
    rs = cfg.earth_radius_km + cfg.altitude_km
    # invert sin(theta) = Rs sin(alpha0) / z for the slant range
    alpha0 = _alpha_for_zenith(cfg, abs(zenith_rad))
    return provider.transmittance(zenith_rad, slant_distance_km(cfg, alpha0))


def _alpha_for_zenith(cfg: OrbitConfig, theta: float) -> float:
    rs = cfg.earth_radius_km + cfg.altitude_km
    alpha_horizon = math.acos(cfg.earth_radius_km / rs)
    lo, hi = 0.0, alpha_horizon * (1.0 - 1e-12)
    if theta <= 0.0:
        return 0.0
    if zenith_angle(cfg, hi) <= theta:
        raise BelowHorizon(f"zenith {theta} unreachable before the horizon")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if zenith_angle(cfg, mid) < theta:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def reference_profile() -> TableTransmittance:
    """Calibrated 530 km clear-night downlink profile shipped with the package.

    Calibrated so the whole pipeline reproduces the reference orbital rate of
    the passive line-of-sight scenario; see the file header.
    """
    with resources.as_file(
        resources.files("cvqkd.data").joinpath(_REFERENCE_PROFILE)
    ) as path:
        return TableTransmittance.from_file(path)


# ---------------------------------------------------------------------------
# orbital and daily rates


@dataclass(frozen=True)
class SliceRate:
    index: int
    theta_min: float
    theta_max: float
    theta_worst: float
    eta_worst: float
    n_rounds: float
    result: FiniteSizeResult

    @property
    def r_com_clamped(self) -> float:
        return self.result.r_com_clamped


@dataclass(frozen=True)
class OrbitalRateResult:
    r_orb: float
    t_q_s: float
    slices: list[SliceRate]


def satellite_scenario(
    hw: HardwareParams,
    optics: ReceiverOptics,
    sky: SkyModel,
    eta_ch: float,
    sigma_x2: float,
    eta0: float = 1.0,
    detector: str = "het",
):
    """Working point and budget for one zenith angle of the downlink."""
    tau = hw.eta_eff * eta_ch
    v_det = 1 if detector == "hom" else 2
    n_bg = background_photons_downlink(optics, sky)
    budget = compose_budget(
        hw, sigma_x2, tau, optics.wavelength_nm, v_det, n_background=n_bg
    )
    params = ScenarioParams(
        sigma_x2=sigma_x2,
        eta_ch=eta_ch,
        eta_eff=hw.eta_eff,
        eta0=eta0,
        n_tx=budget.n_tx,
        n_ch=budget.n_ch,
        n_rx=budget.n_rx,
        detector=detector,
    )
    return params, budget


def orbital_rate(
    cfg: OrbitConfig,
    provider,
    hw: HardwareParams,
    optics: ReceiverOptics,
    sky: SkyModel,
    level: TrustLevel,
    sigma_x2: float,
    comp: CompositionParams,
    beta: float = 0.95,
    eta0: float = 1.0,
    detector: str = "het",
) -> OrbitalRateResult:
    """Average composable rate over the equal-time slices of the sector.

    Each slice is one block of clock * slice_window rounds, rated at its
    largest |zenith| (the slice minimum); negative slice rates count as zero
    key material.
    """
    t_q = sector_transmission_time(cfg)
    edges = np.linspace(-t_q / 2.0, t_q / 2.0, cfg.n_slices + 1)
    n_rounds = cfg.clock_hz * cfg.slice_window_s
    comp_slice = replace(comp, n_total_rounds=n_rounds)
    slices: list[SliceRate] = []
    for i in range(cfg.n_slices):
        theta_a = orbit_kinematics(cfg, edges[i])[1]
        theta_b = orbit_kinematics(cfg, edges[i + 1])[1]
        theta_worst = theta_a if abs(theta_a) >= abs(theta_b) else theta_b
        eta_worst = freespace_transmittance(provider, theta_worst, cfg)
        params, budget = satellite_scenario(
            hw, optics, sky, eta_worst, sigma_x2, eta0, detector
        )
        result = finite_size_rate(level, params, budget, comp_slice, beta)
        slices.append(
            SliceRate(
                index=i,
                theta_min=min(theta_a, theta_b),
                theta_max=max(theta_a, theta_b),
                theta_worst=theta_worst,
                eta_worst=eta_worst,
                n_rounds=n_rounds,
                result=result,
            )
        )
    r_orb = sum(s.r_com_clamped for s in slices) / len(slices)
    return OrbitalRateResult(r_orb=r_orb, t_q_s=t_q, slices=slices)


def daily_bits_satellite(r_orb: float, clock_hz: float, t_q_s: float) -> float:
    """Secret bits of one zenith-crossing passage, clock * t_Q * R_orb."""
    return clock_hz * t_q_s * r_orb


def daily_bits_fiber(
    distance_km: float,
    n_rep: int,
    clock_hz: float,
    alpha_db: float = 0.2,
    seconds_per_day: float = 8.6e4,
) -> float:
    """Daily secret bits of a ground link with n_rep ideal repeaters."""
    if distance_km < 1.0:
        raise DomainError(f"ground distance must be >= 1 km, got {distance_km}")
    eta_fib = 10.0 ** (-alpha_db * distance_km / 10.0)
    return clock_hz * repeater_chain_rate(eta_fib, n_rep) * seconds_per_day
