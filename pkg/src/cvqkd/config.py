"""Scenario configuration: YAML parsing, strict validation, round-tripping.

Unknown keys are rejected with the full field path so typos fail loudly
before any computation runs.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml

from .errors import ConfigError, CVQKDError
from .finite_size import CompositionParams
from .noise import FiberPlan, HardwareParams
from .satellite import OrbitConfig, ReceiverOptics, SkyModel
from .trust import TrustLevel

_SKY_PRESETS = {
    "clear_night": SkyModel.clear_night,
    "clear_day": SkyModel.clear_day,
}


@dataclass(frozen=True)
class SweepSpec:
    variable: str = "length_km"
    start: float = 0.5
    stop: float = 30.0
    steps: int = 60

    def values(self) -> list[float]:
        if self.steps < 1:
            raise ConfigError("sweep.steps: must be >= 1")
        if self.steps == 1:
            return [self.start]
        width = (self.stop - self.start) / (self.steps - 1)
        return [self.start + i * width for i in range(self.steps)]


@dataclass(frozen=True)
class PEValidationSpec:
    tau: float = 0.5
    n_total: float = 0.05
    sigma_x2: float = 12.0
    v_det: int = 2
    m_pe: int = 10000
    eps_pe: float = 0.01
    trials: int = 10000


@dataclass(frozen=True)
class TransmittanceSpec:
    provider: str = "reference"  # reference | table | builtin
    path: str | None = None
    waist_m: float = 0.4
    aperture_m: float = 0.4
    wavelength_nm: float = 800.0
    extinction_zenith: float = 0.35
    excess: float = 1.0


@dataclass(frozen=True)
class DailySpec:
    start_km: float = 50.0
    stop_km: float = 1500.0
    steps: int = 59
    repeaters: tuple[int, ...] = (0, 1, 2, 3)

    def distances(self) -> list[float]:
        if self.steps < 1:
            raise ConfigError("daily.steps: must be >= 1")
        if self.steps == 1:
            return [self.start_km]
        width = (self.stop_km - self.start_km) / (self.steps - 1)
        return [self.start_km + i * width for i in range(self.steps)]


@dataclass(frozen=True)
class ScenarioConfig:
    mode: str = "fiber"
    trust: tuple[TrustLevel, ...] = (TrustLevel.EVE1,)
    detector: str = "het"
    beta: float = 0.95
    modulation_variance: float = 12.0
    eta0: float = 1.0
    wavelength_nm: float = 1490.0
    seed: int = 0
    hardware: HardwareParams = field(default_factory=HardwareParams)
    fiber: FiberPlan = field(default_factory=FiberPlan)
    composition: CompositionParams = field(
        default_factory=lambda: CompositionParams(n_total_rounds=1e7, d_bits=5)
    )
    orbit: OrbitConfig = field(default_factory=OrbitConfig)
    optics: ReceiverOptics = field(default_factory=ReceiverOptics)
    sky: SkyModel = field(default_factory=SkyModel.clear_night)
    transmittance: TransmittanceSpec = field(default_factory=TransmittanceSpec)
    sweep: SweepSpec = field(default_factory=SweepSpec)
    distances: tuple[float, ...] = (25.0, 50.0)
    pe_validation: tuple[PEValidationSpec, ...] = (PEValidationSpec(),)
    daily: DailySpec = field(default_factory=DailySpec)


def _coerce(cls, data: dict[str, Any], path: str):
    """Build a dataclass from a mapping, rejecting unknown keys."""
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected a mapping, got {type(data).__name__}")
    names = {f.name for f in dataclasses.fields(cls)}
    for key in data:
        if key not in names:
            raise ConfigError(f"{path}.{key}: unknown key")
    try:
        return cls(**data)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _parse_trust(value: Any) -> tuple[TrustLevel, ...]:
    if not isinstance(value, (list, tuple)):
        value = [value]
    try:
        return tuple(TrustLevel.parse(v) for v in value)
    except CVQKDError as exc:
        raise ConfigError(f"trust: {exc}") from exc


def _parse_sky(value: Any) -> SkyModel:
    if isinstance(value, str):
        if value not in _SKY_PRESETS:
            raise ConfigError(
                f"sky: unknown preset {value!r} (expected one of {sorted(_SKY_PRESETS)})"
            )
        return _SKY_PRESETS[value]()
    return _coerce(SkyModel, value, "sky")


_TOP_LEVEL_KEYS = {
    "mode",
    "trust",
    "detector",
    "beta",
    "modulation_variance",
    "eta0",
    "wavelength_nm",
    "seed",
    "hardware",
    "fiber",
    "composition",
    "orbit",
    "optics",
    "sky",
    "transmittance",
    "sweep",
    "distances",
    "pe_validation",
    "daily",
}


def config_from_dict(data: dict[str, Any]) -> ScenarioConfig:
    if not isinstance(data, dict):
        raise ConfigError(f"config root: expected a mapping, got {type(data).__name__}")
    for key in data:
        if key not in _TOP_LEVEL_KEYS:
            raise ConfigError(f"{key}: unknown key")

    kwargs: dict[str, Any] = {}
    simple = ("mode", "detector", "beta", "modulation_variance", "eta0",
              "wavelength_nm", "seed")
    for key in simple:
        if key in data:
            kwargs[key] = data[key]
    if "trust" in data:
        kwargs["trust"] = _parse_trust(data["trust"])
    if "hardware" in data:
        kwargs["hardware"] = _coerce(HardwareParams, data["hardware"], "hardware")
    if "fiber" in data:
        kwargs["fiber"] = _coerce(FiberPlan, data["fiber"], "fiber")
    if "composition" in data:
        kwargs["composition"] = _coerce(CompositionParams, data["composition"], "composition")
    if "orbit" in data:
        kwargs["orbit"] = _coerce(OrbitConfig, data["orbit"], "orbit")
    if "optics" in data:
        kwargs["optics"] = _coerce(ReceiverOptics, data["optics"], "optics")
    if "sky" in data:
        kwargs["sky"] = _parse_sky(data["sky"])
    if "transmittance" in data:
        kwargs["transmittance"] = _coerce(TransmittanceSpec, data["transmittance"], "transmittance")
    if "sweep" in data:
        kwargs["sweep"] = _coerce(SweepSpec, data["sweep"], "sweep")
    if "distances" in data:
        value = data["distances"]
        if not isinstance(value, (list, tuple)) or not value:
            raise ConfigError("distances: expected a non-empty list of km values")
        kwargs["distances"] = tuple(float(v) for v in value)
    if "pe_validation" in data:
        value = data["pe_validation"]
        if isinstance(value, dict):
            value = [value]
        if not isinstance(value, (list, tuple)) or not value:
            raise ConfigError("pe_validation: expected a mapping or list of mappings")
        kwargs["pe_validation"] = tuple(
            _coerce(PEValidationSpec, item, f"pe_validation[{i}]")
            for i, item in enumerate(value)
        )
    if "daily" in data:
        raw = dict(data["daily"]) if isinstance(data["daily"], dict) else data["daily"]
        if isinstance(raw, dict) and "repeaters" in raw:
            raw["repeaters"] = tuple(int(v) for v in raw["repeaters"])
        kwargs["daily"] = _coerce(DailySpec, raw, "daily")

    try:
        cfg = ScenarioConfig(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc

    if cfg.mode not in ("fiber", "satellite"):
        raise ConfigError(f"mode: expected 'fiber' or 'satellite', got {cfg.mode!r}")
    if cfg.detector not in ("hom", "het"):
        raise ConfigError(f"detector: expected 'hom' or 'het', got {cfg.detector!r}")
    if not 0.0 < cfg.beta <= 1.0:
        raise ConfigError(f"beta: must be in (0, 1], got {cfg.beta}")
    if cfg.modulation_variance <= 0.0:
        raise ConfigError(f"modulation_variance: must be positive, got {cfg.modulation_variance}")
    if not 0.0 < cfg.eta0 <= 1.0:
        raise ConfigError(f"eta0: must be in (0, 1], got {cfg.eta0}")
    if cfg.transmittance.provider not in ("reference", "table", "builtin"):
        raise ConfigError(
            f"transmittance.provider: expected reference|table|builtin, "
            f"got {cfg.transmittance.provider!r}"
        )
    if cfg.transmittance.provider == "table" and not cfg.transmittance.path:
        raise ConfigError("transmittance.path: required for the table provider")
    return cfg


def load_config(path: str | Path) -> ScenarioConfig:
    try:
        raw = yaml.safe_load(Path(path).read_text())
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid YAML in {path}: {exc}") from exc
    return config_from_dict(raw if raw is not None else {})


def config_to_dict(cfg: ScenarioConfig) -> dict[str, Any]:
    """Plain-dict form; parse(serialize(cfg)) == cfg."""
    out = dataclasses.asdict(cfg)
    out["trust"] = [level.label() for level in cfg.trust]
    out["distances"] = list(cfg.distances)
    out["pe_validation"] = [dataclasses.asdict(p) for p in cfg.pe_validation]
    out["daily"]["repeaters"] = list(cfg.daily.repeaters)
    return out


def dump_config(cfg: ScenarioConfig) -> str:
    return yaml.safe_dump(config_to_dict(cfg), sort_keys=True)
