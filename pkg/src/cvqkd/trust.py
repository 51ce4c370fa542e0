"""Eavesdropper covariance elements for the six trust levels.

Level 0 is the passive line-of-sight eavesdropper (pure beam-splitter tap, no
thermal injection attributed to her); levels 1-5 progressively hand the
channel, the receiver leakage, the receiver noise, and finally the
transmitter leakage and noise to the eavesdropper.  Each level fixes the
mean photon number of her two-mode squeezed state, the beam-splitter
transmittance through which it enters, and the resulting elements
(omega, phi, psi, theta, gamma) of her covariance blocks.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError, SingularChannel

#: Denominators 1 - (transmittance) smaller than this mean a lossless link,
#: for which an untrusted-loss scenario is undefined.
_SINGULAR_TOL = 1e-12


class TrustLevel(enum.IntEnum):
    """Trust scenarios ordered from most favourable to fully untrusted."""

    EVE0 = 0
    EVE1 = 1
    EVE2 = 2
    EVE3 = 3
    EVE4 = 4
    EVE5 = 5

    @classmethod
    def parse(cls, value: "TrustLevel | int | str") -> "TrustLevel":
        if isinstance(value, cls):
            return value
        if isinstance(value, int):
            return cls(value)
        text = str(value).strip().lower().replace(" ", "").replace("(", "").replace(")", "")
        if text.startswith("eve"):
            text = text[3:]
        try:
            return cls(int(text))
        except ValueError as exc:
            raise DomainError(f"unknown trust level {value!r}") from exc

    def label(self) -> str:
        return f"Eve{int(self)}"


@dataclass(frozen=True)
class ScenarioParams:
    """Physical working point of one protocol run.

    sigma_x2    modulation variance of Alice's classical Gaussian data
    eta_ch      channel transmittance
    eta_eff     receiver detection efficiency
    eta0        transmittance of Alice's variable attenuator
    n_tx/n_ch/n_rx  mean thermal photons added by the transmitter, the
                channel (referred to the channel output) and the receiver
    detector    'hom' or 'het'
    """

    sigma_x2: float
    eta_ch: float
    eta_eff: float = 0.7
    eta0: float = 1.0
    n_tx: float = 0.0
    n_ch: float = 0.0
    n_rx: float = 0.0
    detector: str = "het"

    def __post_init__(self) -> None:
        if self.sigma_x2 < 0.0:
            raise ValueError(f"sigma_x2 must be >= 0, got {self.sigma_x2}")
        for name in ("eta_ch", "eta_eff", "eta0"):
            value = getattr(self, name)
            if not 0.0 < value <= 1.0:
                raise ValueError(f"{name} must be in (0, 1], got {value}")
        for name in ("n_tx", "n_ch", "n_rx"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be >= 0, got {getattr(self, name)}")
        if self.detector not in ("hom", "het"):
            raise ValueError(f"detector must be 'hom' or 'het', got {self.detector!r}")

    @property
    def mu(self) -> float:
        return self.sigma_x2 + 1.0

    @property
    def mu0(self) -> float:
        # eta0 = sigma_x2 / (mu0 - 1) inverted, so the invariant holds by
        # construction.
        return 1.0 + self.sigma_x2 / self.eta0

    @property
    def v_det(self) -> int:
        return 1 if self.detector == "hom" else 2

    @property
    def tau(self) -> float:
        return self.eta_eff * self.eta_ch

    @property
    def tau0(self) -> float:
        return self.tau * self.eta0

    @property
    def tau_alice(self) -> float:
        """Leakage transmittance eta0 * eta_ch seen by an untrusted Alice."""
        return self.eta0 * self.eta_ch

    @property
    def n_total(self) -> float:
        return self.tau * self.n_tx + self.eta_eff * self.n_ch + self.n_rx

    @property
    def sigma_z2(self) -> float:
        return 2.0 * self.n_total + self.v_det

    @property
    def b_out(self) -> float:
        """Output variance before detection, tau sigma_x2 + 2 nbar + 1."""
        return self.tau * self.sigma_x2 + 2.0 * self.n_total + 1.0


@dataclass(frozen=True)
class EveElements:
    """Covariance elements of the eavesdropper's modes for one scenario.

    For level 0 only (b, theta, phi) are meaningful; psi and gamma are set
    to zero because the purifying mode is absent.
    """

    omega: float
    phi: float
    psi: float
    theta: float
    gamma: float
    b: float


def eve_photon_number(
    level: TrustLevel, p: ScenarioParams
) -> tuple[float, float]:
    """Mean photons in Eve's modes and the transmittance they enter through.

    Level 0 shares level 1's environment photon number (the channel thermal
    occupation is physical even when not attributed to Eve).
    """
    level = TrustLevel.parse(level)
    if level in (TrustLevel.EVE0, TrustLevel.EVE1):
        denom = 1.0 - p.eta_ch
        if denom <= _SINGULAR_TOL:
            raise SingularChannel("eta_ch = 1 leaves no channel port for Eve")
        return p.n_ch / denom, denom
    if level == TrustLevel.EVE2:
        denom = 1.0 - p.tau
        if denom <= _SINGULAR_TOL:
            raise SingularChannel("tau = 1 leaves no leakage port for Eve")
        return p.eta_eff * p.n_ch / denom, denom
    if level == TrustLevel.EVE3:
        denom = 1.0 - p.tau
        if denom <= _SINGULAR_TOL:
            raise SingularChannel("tau = 1 leaves no leakage port for Eve")
        return (p.eta_eff * p.n_ch + p.n_rx) / denom, denom
    if level == TrustLevel.EVE4:
        denom = 1.0 - p.tau_alice
        if denom <= _SINGULAR_TOL:
            raise SingularChannel("eta0 * eta_ch = 1 leaves no leakage port for Eve")
        return (p.n_ch + p.eta_ch * p.n_tx) / denom, denom
    denom = 1.0 - p.tau0
    if denom <= _SINGULAR_TOL:
        raise SingularChannel("tau0 = 1 leaves no leakage port for Eve")
    return p.n_total / denom, denom


def eve_elements(level: TrustLevel, p: ScenarioParams) -> EveElements:
    """Covariance elements (omega, phi, psi, theta, gamma, b) for one level."""
    level = TrustLevel.parse(level)
    n_eve, _ = eve_photon_number(level, p)
    omega = 2.0 * n_eve + 1.0
    b = p.b_out
    omega2m1 = omega * omega - 1.0

    if level in (TrustLevel.EVE0, TrustLevel.EVE1):
        eta = p.eta_ch
        hot = p.mu + 2.0 * p.n_tx
        phi = eta * omega + (1.0 - eta) * hot
        theta = math.sqrt(p.tau * (1.0 - eta)) * (omega - hot)
        if level == TrustLevel.EVE0:
            return EveElements(omega, phi, 0.0, theta, 0.0, b)
        psi = math.sqrt(eta * omega2m1)
        gamma = math.sqrt(p.eta_eff * (1.0 - eta) * omega2m1)
        return EveElements(omega, phi, psi, theta, gamma, b)

    if level in (TrustLevel.EVE2, TrustLevel.EVE3):
        tau = p.tau
        hot = p.mu + 2.0 * p.n_tx
        phi = tau * omega + (1.0 - tau) * hot
        psi = math.sqrt(tau * omega2m1)
        gamma = math.sqrt((1.0 - tau) * omega2m1)
        theta = math.sqrt(tau * (1.0 - tau)) * (omega - hot)
        return EveElements(omega, phi, psi, theta, gamma, b)

    if level == TrustLevel.EVE4:
        tau_a = p.tau_alice
        phi = tau_a * omega + (1.0 - tau_a) * p.mu0
        psi = math.sqrt(tau_a * omega2m1)
        gamma = math.sqrt(p.eta_eff * (1.0 - tau_a) * omega2m1)
        theta = math.sqrt(p.tau0 * (1.0 - tau_a)) * (omega - p.mu0)
        return EveElements(omega, phi, psi, theta, gamma, b)

    tau0 = p.tau0
    phi = tau0 * omega + (1.0 - tau0) * p.mu0
    psi = math.sqrt(tau0 * omega2m1)
    gamma = math.sqrt((1.0 - tau0) * omega2m1)
    theta = math.sqrt(tau0 * (1.0 - tau0)) * (omega - p.mu0)
    return EveElements(omega, phi, psi, theta, gamma, b)
