"""Physical noise budget: every setup and channel noise as thermal photons/mode.

Transmitter-side terms (laser intensity noise, modulator drive-voltage error)
and receiver-side terms (electronic, common-mode, quantization, residual
phase) follow the local-local-oscillator layout with a balanced detector and
an ADC.  Channel terms cover spontaneous anti-Stokes Raman scattering from
co-propagating classical DWDM channels and amplified-spontaneous-emission
leakage through the wide-band coupler.  Four-wave mixing and Brillouin
scattering are structurally zero here (out-of-band by construction), and
backward Raman is blocked by the transmitter isolator, so both are reported
but excluded from the channel total.

Everything is referred to mean thermal photon number per spatio-temporal
mode; the composition rule is

    n_total = tau * n_tx + eta_eff * n_ch + n_rx.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .trust import ScenarioParams

PLANCK_H = 6.62607015e-34  # J s
C_LIGHT = 299792458.0  # m / s

_NM = 1e-9
_LN10 = math.log(10.0)


def photon_energy(wavelength_nm: float) -> float:
    """Photon energy h*f in joules for a vacuum wavelength in nm."""
    if wavelength_nm <= 0.0:
        raise DomainError(f"wavelength must be positive, got {wavelength_nm}")
    return PLANCK_H * C_LIGHT / (wavelength_nm * _NM)


@dataclass(frozen=True)
class HardwareParams:
    """Transceiver hardware parameters (defaults: the reference desk setup).

    ``mod_y`` is the dimensionless modulator drive error
    pi * (g du + du_DC) / (2 u_pi); only this combination enters the noise
    bound, so the absolute voltages are not stored.
    """

    eta_eff: float = 0.7
    bandwidth_hz: float = 1e8
    nep_w_sqrthz: float = 6e-12
    linewidth_sig_hz: float = 1.6e3
    linewidth_lo_hz: float = 1.6e3
    p_lo_w: float = 0.1
    clock_hz: float = 5e6
    pulse_dt_s: float = 1e-8
    rin_sig: float = 8e-11
    rin_lo: float = 8e-11
    g_e_ohm: float = 2e4
    mod_y: float = 0.01
    cmrr_db: float = 30.0
    responsivity_ohm: float = 2e4
    adc_range_v: float = 1.0
    v_intr_v2: float = 1e-8
    adc_bits: int = 12

    def __post_init__(self) -> None:
        if self.adc_bits < 1 or self.adc_bits != int(self.adc_bits):
            raise ValueError(f"adc_bits must be a positive integer, got {self.adc_bits}")
        if not 0.0 < self.eta_eff <= 1.0:
            raise ValueError(f"eta_eff must be in (0, 1], got {self.eta_eff}")
        for name in ("bandwidth_hz", "p_lo_w", "clock_hz", "pulse_dt_s",
                     "g_e_ohm", "responsivity_ohm"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")
        # idealized-hardware limits (zero) are legitimate for these
        for name in ("nep_w_sqrthz", "linewidth_sig_hz", "linewidth_lo_hz",
                     "rin_sig", "rin_lo", "adc_range_v", "mod_y", "cmrr_db",
                     "v_intr_v2"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be >= 0")

    @property
    def linewidth_mean_hz(self) -> float:
        return 0.5 * (self.linewidth_sig_hz + self.linewidth_lo_hz)


@dataclass(frozen=True)
class FiberPlan:
    """Fibre link and coexisting classical system.

    The quantum band and the classical band sit in different windows, hence
    the two attenuation coefficients.  ``filter_nm`` is the receiver optical
    filter; it cancels between the Raman power and the photons-per-mode
    conversion, so its value only matters for reported powers.
    """

    length_km: float = 25.0
    alpha_quantum_db: float = 0.22
    alpha_cband_db: float = 0.2
    rho_lambda: float = 4e-9  # 1 / (nm km), worst-case in the classical band
    p_in_per_channel_w: float = 5e-3
    n_channels: int = 1
    filter_nm: float = 8e-4
    eta_wbc: float = 0.9
    xi_wbc: float = 1e-5
    oa_gain: float = 1.0
    n_sp: float = 1.0

    def __post_init__(self) -> None:
        if self.length_km < 0.0:
            raise ValueError("length_km must be >= 0")
        if not 0.0 < self.eta_wbc <= 1.0:
            raise ValueError("eta_wbc must be in (0, 1]")
        if self.n_channels < 0:
            raise ValueError("n_channels must be >= 0")
        if self.oa_gain < 1.0 or self.n_sp < 1.0:
            raise ValueError("oa_gain and n_sp must be >= 1")

    @property
    def p_in_total_w(self) -> float:
        return self.n_channels * self.p_in_per_channel_w


@dataclass(frozen=True)
class LinkNoiseBudget:
    """Per-source thermal photon numbers and their composition.

    ``n_ram_backward`` and ``n_oa`` are informational: blocked or negligible
    by design, they never enter ``n_ch``.
    """

    n_rin: float
    n_vol: float
    n_el: float
    n_cm: float
    n_q: float
    n_lo: float
    n_ram: float
    n_background: float
    tau: float
    eta_eff: float
    n_ram_backward: float = 0.0
    n_oa: float = 0.0

    @property
    def n_tx(self) -> float:
        return self.n_rin + self.n_vol

    @property
    def n_rx(self) -> float:
        return self.n_el + self.n_cm + self.n_q + self.n_lo

    @property
    def n_ch(self) -> float:
        return self.n_ram + self.n_background

    @property
    def n_total(self) -> float:
        return self.tau * self.n_tx + self.eta_eff * self.n_ch + self.n_rx

    def receiver_referred(self) -> dict[str, float]:
        """Contributions of each source to ``n_total``, in detection units."""
        return {
            "rin": self.tau * self.n_rin,
            "vol": self.tau * self.n_vol,
            "raman": self.eta_eff * self.n_ram,
            "background": self.eta_eff * self.n_background,
            "electronic": self.n_el,
            "common_mode": self.n_cm,
            "quantization": self.n_q,
            "phase": self.n_lo,
        }


# ---------------------------------------------------------------------------
# transmitter side


def rin_noise(sigma_x2: float, rin_sig: float, linewidth_sig_hz: float) -> float:
    """Thermal photons from laser power fluctuation.

    n_rin = n_sig * sqrt(rin * linewidth) with n_sig = sigma_x2 / 2.
    """
    if sigma_x2 < 0.0 or rin_sig < 0.0 or linewidth_sig_hz < 0.0:
        raise DomainError("rin_noise arguments must be >= 0")
    return 0.5 * sigma_x2 * math.sqrt(rin_sig * linewidth_sig_hz)


def modulator_noise_from_y(sigma_x2: float, y: float) -> float:
    """Upper bound on modulator drive-error photons for a dimensionless error y.

    n_vol < n_sig * (|y| + y^2/2)^2, from the first-order expansion of the
    nested Mach-Zehnder cosine transfer around the working point.
    """
    y = abs(y)
    return 0.5 * sigma_x2 * (y + 0.5 * y * y) ** 2


def modulator_voltage_noise(
    sigma_x2: float, g_amp: float, du_v: float, du_dc_v: float, u_pi_v: float
) -> float:
    """Voltage-level form of :func:`modulator_noise_from_y`.

    y = pi (g du + du_DC) / (2 u_pi).
    """
    if u_pi_v <= 0.0:
        raise DomainError(f"u_pi must be positive, got {u_pi_v}")
    y = math.pi * (g_amp * du_v + du_dc_v) / (2.0 * u_pi_v)
    return modulator_noise_from_y(sigma_x2, y)


# ---------------------------------------------------------------------------
# receiver side


def electronic_noise(
    nep_w_sqrthz: float,
    bandwidth_hz: float,
    pulse_dt_s: float,
    wavelength_nm: float,
    p_det_w: float,
    v_det: int,
) -> float:
    """Detector dark-current photons, n_el = v_det NEP^2 W dt / (2 h f P_det).

    With an independent local oscillator P_det equals the LO power, so this
    term is independent of the transmission distance.
    """
    if p_det_w <= 0.0:
        raise DomainError(f"detected power must be positive, got {p_det_w}")
    hf = photon_energy(wavelength_nm)
    return v_det * nep_w_sqrthz**2 * bandwidth_hz * pulse_dt_s / (2.0 * hf * p_det_w)


def common_mode_noise(
    sigma_x2: float,
    cmrr_db: float,
    pulse_dt_s: float,
    wavelength_nm: float,
    p_det_w: float,
    rin: float,
    linewidth_hz: float,
    v_det: int,
) -> float:
    """Residual common-mode photons of the balanced detector.

    n_C = v_det / (8 g_C^2) * (h f n_sig / (2 dt P_det) + dt P_det / (h f))
          * rin * linewidth.

    The rejection ratio is taken as a power ratio, g_C = 10^(dB/10); the
    amplitude reading would make this term dominate the whole budget, which
    contradicts the observed decomposition where it is negligible.
    """
    if p_det_w <= 0.0:
        raise DomainError(f"detected power must be positive, got {p_det_w}")
    g_c = 10.0 ** (cmrr_db / 10.0)
    hf = photon_energy(wavelength_nm)
    n_sig = 0.5 * sigma_x2
    bracket = hf * n_sig / (2.0 * pulse_dt_s * p_det_w) + pulse_dt_s * p_det_w / hf
    return v_det / (8.0 * g_c * g_c) * bracket * rin * linewidth_hz


def adc_interval_v(adc_range_v: float, adc_bits: int) -> float:
    """Quantization interval of the ADC, range / 2^bits."""
    if adc_bits < 1:
        raise DomainError(f"adc_bits must be >= 1, got {adc_bits}")
    return adc_range_v / 2.0**adc_bits


def quantization_noise(
    adc_range_v: float,
    adc_bits: int,
    v_intr_v2: float,
    g_e_ohm: float,
    responsivity_ohm: float,
    pulse_dt_s: float,
    wavelength_nm: float,
    p_det_w: float,
    v_det: int,
) -> float:
    """ADC rounding plus intrinsic voltage variance as thermal photons.

    n_Q = (v_det/2) dt / (h f g_e^2 responsivity^2 P_det)
          * (dU^2 / 12 + V_intr).
    """
    if g_e_ohm <= 0.0 or responsivity_ohm <= 0.0 or p_det_w <= 0.0:
        raise DomainError("g_e, responsivity and detected power must be positive")
    du = adc_interval_v(adc_range_v, adc_bits)
    hf = photon_energy(wavelength_nm)
    scale = pulse_dt_s / (hf * g_e_ohm**2 * responsivity_ohm**2 * p_det_w)
    return 0.5 * v_det * scale * (du * du / 12.0 + v_intr_v2)


def residual_phase_noise(
    sigma_x2: float, tau: float, linewidth_mean_hz: float, clock_hz: float
) -> float:
    """Residual phase photons after pilot compensation.

    n_lo = n_sig * 2 pi tau * l_W / clock.  This is the only receiver term
    that grows with tau, which matters for the best-case estimator used in
    parameter estimation.
    """
    if not 0.0 <= tau <= 1.0:
        raise DomainError(f"tau must be in [0, 1], got {tau}")
    if clock_hz <= 0.0:
        raise DomainError(f"clock must be positive, got {clock_hz}")
    return 0.5 * sigma_x2 * 2.0 * math.pi * tau * linewidth_mean_hz / clock_hz


# ---------------------------------------------------------------------------
# channel side


def raman_forward_power(
    p_in_w: float, alpha_db: float, length_km: float, rho_lambda: float, filter_nm: float
) -> float:
    """Forward anti-Stokes Raman power at the fibre output.

    P_f = P_in 10^(-alpha L / 10) L rho filter.
    """
    if length_km < 0.0:
        raise DomainError(f"length must be >= 0, got {length_km}")
    return p_in_w * 10.0 ** (-alpha_db * length_km / 10.0) * length_km * rho_lambda * filter_nm


def raman_backward_power(
    p_in_w: float, alpha_db: float, length_km: float, rho_lambda: float, filter_nm: float
) -> float:
    """Backward anti-Stokes Raman power at the fibre input.

    P_b = 5 P_in rho filter (1 - 10^(-alpha L / 5)) / (alpha ln 10).
    """
    if length_km < 0.0:
        raise DomainError(f"length must be >= 0, got {length_km}")
    if alpha_db <= 0.0:
        raise DomainError(f"alpha must be positive, got {alpha_db}")
    decay = 1.0 - 10.0 ** (-alpha_db * length_km / 5.0)
    return 5.0 * p_in_w * rho_lambda * filter_nm * decay / (alpha_db * _LN10)


def raman_peak_distance_km(alpha_db: float) -> float:
    """Distance maximising the forward Raman power, 10 / (alpha ln 10)."""
    if alpha_db <= 0.0:
        raise DomainError(f"alpha must be positive, got {alpha_db}")
    return 10.0 / (alpha_db * _LN10)


def raman_photons(
    p_ram_f_w: float, eta_wbc: float, filter_nm: float, wavelength_nm: float
) -> float:
    """Raman photons per mode reaching the detector.

    n_ram = (1/2) (c / (h f^3)) P_f eta_wbc / filter; the 1/2 accounts for
    the polarization selectivity of the local oscillator.  Equivalent to
    half the photon rate inside the mode-matched bandwidth c filter / lambda^2.
    """
    if filter_nm <= 0.0:
        raise DomainError(f"filter must be positive, got {filter_nm}")
    hf = photon_energy(wavelength_nm)
    f = C_LIGHT / (wavelength_nm * _NM)
    return 0.5 * C_LIGHT / (hf * f * f) * p_ram_f_w * eta_wbc / (filter_nm * _NM)


def oa_noise(xi_wbc: float, oa_gain: float, n_sp: float) -> float:
    """Amplified-spontaneous-emission photons leaking through the coupler.

    n_oa = xi n_sp (gain - 1); negligible for realistic cross-isolation and
    therefore excluded from the channel total.
    """
    if oa_gain < 1.0 or n_sp < 1.0:
        raise DomainError("oa_gain and n_sp must be >= 1")
    return xi_wbc * n_sp * (oa_gain - 1.0)


def fiber_transmittance(fiber: FiberPlan) -> float:
    """Channel transmittance eta_wbc^2 * 10^(-alpha_q L / 10)."""
    return fiber.eta_wbc**2 * 10.0 ** (-fiber.alpha_quantum_db * fiber.length_km / 10.0)


def fiber_channel_photons(
    fiber: FiberPlan, wavelength_nm: float
) -> tuple[float, float, float]:
    """(n_ram forward, n_ram backward, n_oa) for the coexisting classical system."""
    p_f = raman_forward_power(
        fiber.p_in_total_w,
        fiber.alpha_cband_db,
        fiber.length_km,
        fiber.rho_lambda,
        fiber.filter_nm,
    )
    p_b = raman_backward_power(
        fiber.p_in_total_w,
        fiber.alpha_cband_db,
        fiber.length_km,
        fiber.rho_lambda,
        fiber.filter_nm,
    )
    n_f = raman_photons(p_f, fiber.eta_wbc, fiber.filter_nm, wavelength_nm)
    n_b = raman_photons(p_b, fiber.eta_wbc, fiber.filter_nm, wavelength_nm)
    return n_f, n_b, oa_noise(fiber.xi_wbc, fiber.oa_gain, fiber.n_sp)


# ---------------------------------------------------------------------------
# composition


def compose_budget(
    hw: HardwareParams,
    sigma_x2: float,
    tau: float,
    wavelength_nm: float,
    v_det: int,
    n_ram: float = 0.0,
    n_background: float = 0.0,
    n_ram_backward: float = 0.0,
    n_oa: float = 0.0,
) -> LinkNoiseBudget:
    """Assemble the full budget for a given working point.

    The channel occupations are passed in (fibre Raman or free-space
    background) so the same composition serves both link types.
    """
    p_det = hw.p_lo_w  # independent local oscillator
    return LinkNoiseBudget(
        n_rin=rin_noise(sigma_x2, hw.rin_sig, hw.linewidth_sig_hz),
        n_vol=modulator_noise_from_y(sigma_x2, hw.mod_y),
        n_el=electronic_noise(
            hw.nep_w_sqrthz, hw.bandwidth_hz, hw.pulse_dt_s, wavelength_nm, p_det, v_det
        ),
        n_cm=common_mode_noise(
            sigma_x2,
            hw.cmrr_db,
            hw.pulse_dt_s,
            wavelength_nm,
            p_det,
            hw.rin_sig,
            hw.linewidth_sig_hz,
            v_det,
        ),
        n_q=quantization_noise(
            hw.adc_range_v,
            hw.adc_bits,
            hw.v_intr_v2,
            hw.g_e_ohm,
            hw.responsivity_ohm,
            hw.pulse_dt_s,
            wavelength_nm,
            p_det,
            v_det,
        ),
        n_lo=residual_phase_noise(sigma_x2, tau, hw.linewidth_mean_hz, hw.clock_hz),
        n_ram=n_ram,
        n_background=n_background,
        tau=tau,
        eta_eff=hw.eta_eff,
        n_ram_backward=n_ram_backward,
        n_oa=n_oa,
    )


def to_excess_noise(budget: LinkNoiseBudget) -> tuple[float, float, float]:
    """Convert the budget to excess-noise units referred to Alice's side.

    (xi_tx, xi_ch, xi_rx) = (2 n_tx, 2 eta_eff n_ch / tau, n_rx / tau).
    """
    if budget.tau <= 0.0:
        raise DomainError("excess-noise conversion undefined at tau = 0")
    return (
        2.0 * budget.n_tx,
        2.0 * budget.eta_eff * budget.n_ch / budget.tau,
        budget.n_rx / budget.tau,
    )


def fiber_scenario(
    hw: HardwareParams,
    fiber: FiberPlan,
    sigma_x2: float,
    eta0: float = 1.0,
    detector: str = "het",
    wavelength_nm: float = 1490.0,
) -> tuple[ScenarioParams, LinkNoiseBudget]:
    """Working point and budget for a DWDM-coexistent fibre link."""
    eta_ch = fiber_transmittance(fiber)
    tau = hw.eta_eff * eta_ch
    v_det = 1 if detector == "hom" else 2
    n_ram, n_ram_b, n_oa = fiber_channel_photons(fiber, wavelength_nm)
    budget = compose_budget(
        hw,
        sigma_x2,
        tau,
        wavelength_nm,
        v_det,
        n_ram=n_ram,
        n_ram_backward=n_ram_b,
        n_oa=n_oa,
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
