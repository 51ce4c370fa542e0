"""Asymptotic key rate assembly and benchmark bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .gaussian import TwoModeCM, h_function, holevo_bound, holevo_bound_reduced
from .trust import ScenarioParams, TrustLevel, eve_elements


@dataclass(frozen=True)
class RateInputs:
    scenario: TrustLevel
    params: ScenarioParams
    beta: float = 0.95

    def __post_init__(self) -> None:
        if not 0.0 < self.beta <= 1.0:
            raise ValueError(f"beta must be in (0, 1], got {self.beta}")

    @property
    def detector(self) -> str:
        return self.params.detector


@dataclass(frozen=True)
class RateResult:
    """Per-use figures of one working point.

    ``r_asy`` keeps its sign so that finite-size subtraction stays exact;
    callers clamp for reporting.
    """

    snr: float
    i_ab: float
    chi: float
    r_asy: float
    upsilon: float


def snr(sigma_x2: float, tau: float, n_total: float, v_det: int) -> float:
    """Signal-to-noise ratio tau sigma_x2 / (2 nbar + v_det); 0 at tau = 0."""
    if tau <= 0.0:
        return 0.0
    return tau * sigma_x2 / (2.0 * n_total + v_det)


def mutual_information(snr_value: float, v_det: int) -> float:
    """AWGN capacity (v_det / 2) log2(1 + SNR); heterodyne counts both quadratures."""
    if snr_value < 0.0:
        raise DomainError(f"snr must be >= 0, got {snr_value}")
    return 0.5 * v_det * math.log2(1.0 + snr_value)


def asymptotic_rate(inputs: RateInputs) -> RateResult:
    """Reverse-reconciliation asymptotic rate beta * I_AB - chi."""
    p = inputs.params
    level = TrustLevel.parse(inputs.scenario)
    el = eve_elements(level, p)
    if level == TrustLevel.EVE0:
        chi = holevo_bound_reduced(el.phi, el.theta, el.b, p.detector)
    else:
        v_ee = TwoModeCM.symmetric(el.phi, el.omega, el.psi, -el.psi)
        chi = holevo_bound(v_ee, (el.theta, el.gamma), el.b, p.detector)
    s = snr(p.sigma_x2, p.tau, p.n_total, p.v_det)
    i_ab = mutual_information(s, p.v_det)
    upsilon = p.sigma_z2 / p.tau if p.tau > 0.0 else math.inf
    return RateResult(
        snr=s,
        i_ab=i_ab,
        chi=chi,
        r_asy=inputs.beta * i_ab - chi,
        upsilon=upsilon,
    )


def plob_thermal_bound(tau: float, n_total: float) -> float:
    """Thermal-loss repeaterless upper bound on the secret-key rate.

    Phi(tau, nbar) = -log2[(1 - tau) tau^(nbar / (1 - tau))]
                     - iota(nbar / (1 - tau)),
    iota(x) = (x + 1) log2(x + 1) - x log2 x.  The bound is zero once the
    channel is entanglement breaking, i.e. for environment photon numbers
    nbar / (1 - tau) >= tau / (1 - tau); the closed form reaches zero
    exactly at that threshold, so the clamp is continuous.
    """
    if not 0.0 < tau < 1.0:
        raise DomainError(f"tau must be in (0, 1), got {tau}")
    if n_total < 0.0:
        raise DomainError(f"n_total must be >= 0, got {n_total}")
    if n_total >= tau:  # environment number at or past tau / (1 - tau)
        return 0.0
    lam = n_total / (1.0 - tau)
    phi = -math.log2(1.0 - tau) - lam * math.log2(tau)
    if lam > 0.0:
        phi -= (lam + 1.0) * math.log2(lam + 1.0) - lam * math.log2(lam)
    return max(phi, 0.0)


def repeater_chain_rate(eta_fib: float, n_rep: int) -> float:
    """Key rate of a fibre link cut by n_rep ideal repeaters.

    R = -log2(1 - eta^(1 / (n_rep + 1))); n_rep = 0 is the repeaterless bound.
    """
    if not 0.0 < eta_fib < 1.0:
        raise DomainError(f"eta_fib must be in (0, 1), got {eta_fib}")
    if n_rep < 0 or n_rep != int(n_rep):
        raise DomainError(f"n_rep must be a non-negative integer, got {n_rep}")
    return -math.log2(1.0 - eta_fib ** (1.0 / (n_rep + 1.0)))


def thermal_entropy_photons(n_mean: float) -> float:
    """Von-Neumann entropy of a thermal state with mean photon number n_mean."""
    return h_function(2.0 * n_mean + 1.0)
