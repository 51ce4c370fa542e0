"""Composable finite-size CV-QKD rates under six trust levels.

Fibre (DWDM-coexistent) and LEO-downlink channels, a full physical noise
budget, parameter-estimation confidence bounds, and Monte-Carlo validation
of the estimator layer.
"""

from .errors import (
    BelowHorizon,
    ConfigError,
    CVQKDError,
    DegenerateSample,
    DomainError,
    NonPhysical,
    ProfileRange,
    SingularChannel,
)
from .finite_size import (
    ComposableResult,
    CompositionParams,
    FiniteSizeResult,
    PEOutcome,
    aep_penalty,
    composable_rate,
    confidence_factor,
    estimate_from_samples,
    finite_size_rate,
    pe_policy,
    worst_case_bounds,
)
from .gaussian import (
    TOL,
    SymplecticSpectrum,
    TwoModeCM,
    condition_on_heterodyne,
    condition_on_homodyne,
    h_function,
    holevo_bound,
    holevo_bound_reduced,
    symplectic_spectrum,
)
from .noise import (
    FiberPlan,
    HardwareParams,
    LinkNoiseBudget,
    adc_interval_v,
    common_mode_noise,
    compose_budget,
    electronic_noise,
    fiber_scenario,
    fiber_transmittance,
    modulator_noise_from_y,
    modulator_voltage_noise,
    oa_noise,
    quantization_noise,
    raman_backward_power,
    raman_forward_power,
    raman_peak_distance_km,
    raman_photons,
    residual_phase_noise,
    rin_noise,
    to_excess_noise,
)
from .rates import (
    RateInputs,
    RateResult,
    asymptotic_rate,
    mutual_information,
    plob_thermal_bound,
    repeater_chain_rate,
    snr,
)
from .sampling import CoverageReport, SyntheticChannel, coverage_experiment, generate_pairs
from .satellite import (
    BuiltinTransmittance,
    OrbitConfig,
    OrbitalRateResult,
    ReceiverOptics,
    SkyModel,
    TableTransmittance,
    background_photons_downlink,
    background_photons_uplink,
    daily_bits_fiber,
    daily_bits_satellite,
    freespace_transmittance,
    gamma_r,
    orbit_kinematics,
    orbital_rate,
    reference_profile,
    satellite_scenario,
    sector_transmission_time,
)
from .trust import EveElements, ScenarioParams, TrustLevel, eve_elements, eve_photon_number

__version__ = "0.1.0"
