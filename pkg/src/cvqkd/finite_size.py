"""Parameter estimation and the composable finite-size key rate.

The chain is: estimators for the transmittance and total thermal photons,
their worst/best-case confidence edges, a per-trust-level policy that
re-attributes the estimated noise to the untrusted set, the asymptotic rate
at the pessimised point, and finally the leftover-hash / AEP assembly

    R_com >= p_ec [ n R_asy_pe - sqrt(n) Delta_aep + log2(eps_h^2 eps_cor) ] / N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import erfcinv

from .errors import DegenerateSample, DomainError
from .noise import LinkNoiseBudget
from .rates import RateInputs, RateResult, asymptotic_rate
from .trust import ScenarioParams, TrustLevel

_TAU_FLOOR = 1e-15


@dataclass(frozen=True)
class CompositionParams:
    """Composable security parameters.

    ``pe_fraction`` is the fraction of rounds disclosed for estimation; the
    estimator sample count is that times 1 (homodyne) or 2 (heterodyne).
    ``d_bits`` is the digitisation depth of each key symbol.
    """

    n_total_rounds: float = 1e7
    pe_fraction: float = 0.1
    d_bits: int = 5
    p_ec: float = 0.9
    eps_cor: float = 1e-10
    eps_s: float = 1e-10
    eps_h: float = 1e-10
    eps_pe: float = 1e-10

    def __post_init__(self) -> None:
        if not 0.0 < self.pe_fraction < 1.0:
            raise ValueError(f"pe_fraction must be in (0, 1), got {self.pe_fraction}")
        if self.n_total_rounds < 2.0:
            raise ValueError("n_total_rounds must be at least 2")
        if self.d_bits < 1:
            raise ValueError(f"d_bits must be >= 1, got {self.d_bits}")
        if not 0.0 < self.p_ec <= 1.0:
            raise ValueError(f"p_ec must be in (0, 1], got {self.p_ec}")
        for name in ("eps_cor", "eps_s", "eps_h", "eps_pe"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(f"{name} must be in (0, 1), got {value}")

    @property
    def m_rounds(self) -> float:
        return self.pe_fraction * self.n_total_rounds

    @property
    def n_key_rounds(self) -> float:
        return self.n_total_rounds - self.m_rounds

    def m_pe(self, v_det: int) -> float:
        return v_det * self.m_rounds


@dataclass(frozen=True)
class PEOutcome:
    """Confidence edges of the estimated channel.

    tau_low <= tau <= tau_high and n_high >= n_total on the analytic path.
    ``n_rx_best`` is filled by the policy step when the receiver noise is
    trusted (it needs the budget decomposition, not just the estimates).
    """

    tau_low: float
    tau_high: float
    n_high: float
    m_pe: float
    n_rx_best: float | None = None


@dataclass(frozen=True)
class ComposableResult:
    r_com: float
    epsilon: float


@dataclass(frozen=True)
class FiniteSizeResult:
    """Full pipeline output for one working point and trust level."""

    rate: RateResult
    rate_pe: RateResult
    r_com: float
    epsilon: float
    bounds: PEOutcome

    @property
    def r_asy(self) -> float:
        return self.rate.r_asy

    @property
    def r_asy_pe(self) -> float:
        return self.rate_pe.r_asy

    @property
    def r_com_clamped(self) -> float:
        return max(self.r_com, 0.0)


def confidence_factor(eps_pe: float) -> float:
    """Number of confidence sigmas for an estimation error budget eps_pe.

    sqrt(2) erfinv(1 - 2 eps) above 1e-17 (computed through erfcinv for
    accuracy), else the divergence-free tail form sqrt(2 ln(1 / eps)).
    """
    if not 0.0 < eps_pe <= 0.5:
        raise DomainError(f"eps_pe must be in (0, 0.5], got {eps_pe}")
    if eps_pe > 1e-17:
        return math.sqrt(2.0) * float(erfcinv(2.0 * eps_pe))
    return math.sqrt(2.0 * math.log(1.0 / eps_pe))


def estimate_from_samples(x, y, v_det: int) -> tuple[float, float]:
    """Point estimators from disclosed pairs.

    tau_hat = (sum xy / sum x^2)^2 and
    n_hat = -v_det/2 + (1 / 2 m) sum (y - sqrt(tau_hat) x)^2.
    n_hat may come out slightly negative from sampling noise; callers clamp
    only where a rate is assembled.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < 2 or x.size != y.size:
        raise DegenerateSample(f"need >= 2 paired samples, got {x.size} and {y.size}")
    sxx = float(np.dot(x, x))
    if sxx == 0.0:
        raise DegenerateSample("zero signal power in the disclosed sample")
    slope = float(np.dot(x, y)) / sxx
    tau_hat = slope * slope
    resid = y - slope * x
    n_hat = -0.5 * v_det + float(np.dot(resid, resid)) / (2.0 * x.size)
    return tau_hat, n_hat


def worst_case_bounds(
    tau: float,
    sigma_x2: float,
    n_total: float,
    v_det: int,
    m_pe: float,
    w: float,
) -> PEOutcome:
    """Confidence edges around (tau, n_total) at w sigmas.

    tau' = tau - 2w sqrt((2 tau^2 + tau sigma_z^2 / sigma_x^2) / m_pe),
    tau'' its mirror image (clamped to [0, 1]), and
    n'' = n + w (2n + v_det) / sqrt(2 m_pe).
    """
    if m_pe < 1.0:
        raise DomainError(f"m_pe must be >= 1, got {m_pe}")
    if sigma_x2 <= 0.0:
        raise DomainError(f"sigma_x2 must be positive, got {sigma_x2}")
    sigma_z2 = 2.0 * n_total + v_det
    half = 2.0 * w * math.sqrt((2.0 * tau * tau + tau * sigma_z2 / sigma_x2) / m_pe)
    n_high = n_total + w * (2.0 * n_total + v_det) / math.sqrt(2.0 * m_pe)
    return PEOutcome(
        tau_low=max(tau - half, 0.0),
        tau_high=min(tau + half, 1.0),
        n_high=n_high,
        m_pe=m_pe,
    )


def pe_policy(
    level: TrustLevel,
    params: ScenarioParams,
    budget: LinkNoiseBudget,
    bounds: PEOutcome,
) -> tuple[ScenarioParams, PEOutcome]:
    """Pessimised working point handed to the rate engine.

    The estimated total n'' is attributed as generously to the untrusted set
    as the trusted model allows: the trusted transmitter contribution is
    evaluated at tau', and the trusted receiver contribution at its best
    case, where only the phase term depends on tau (linearly) and is taken
    at tau''.  Negative untrusted remainders clamp to zero.
    """
    level = TrustLevel.parse(level)
    tau_low = max(bounds.tau_low, _TAU_FLOOR)
    eta_ch_low = min(tau_low / params.eta_eff, 1.0)
    n_high = max(bounds.n_high, 0.0)

    if level == TrustLevel.EVE5:
        pe_params = replace(
            params, eta_ch=eta_ch_low, n_tx=0.0, n_rx=0.0,
            n_ch=n_high / params.eta_eff,
        )
        return pe_params, bounds

    if level == TrustLevel.EVE3:
        untrusted = max(n_high - tau_low * params.n_tx, 0.0)
        pe_params = replace(
            params, eta_ch=eta_ch_low, n_rx=0.0,
            n_ch=untrusted / params.eta_eff,
        )
        return pe_params, bounds

    # Trusted receiver noise (levels 0, 1, 2, 4): best case through tau''.
    if params.tau > 0.0:
        n_lo_best = budget.n_lo * bounds.tau_high / params.tau
    else:
        n_lo_best = 0.0
    n_rx_best = budget.n_el + budget.n_cm + budget.n_q + n_lo_best
    n_ch_high = max(n_high - tau_low * params.n_tx - n_rx_best, 0.0) / params.eta_eff
    pe_params = replace(
        params, eta_ch=eta_ch_low, n_ch=n_ch_high, n_rx=n_rx_best,
    )
    return pe_params, replace(bounds, n_rx_best=n_rx_best)


def aep_penalty(d_bits: int, eps_s: float) -> float:
    """Finite-size entropy penalty from the asymptotic equipartition property.

    Delta_aep = 4 log2(2^(d/2) + 2) sqrt(log2(2 / eps_s^2)).
    """
    if d_bits < 1:
        raise DomainError(f"d_bits must be >= 1, got {d_bits}")
    if not 0.0 < eps_s < 1.0:
        raise DomainError(f"eps_s must be in (0, 1), got {eps_s}")
    return 4.0 * math.log2(2.0 ** (d_bits / 2.0) + 2.0) * math.sqrt(
        math.log2(2.0 / eps_s**2)
    )


def composable_rate(r_asy_pe: float, comp: CompositionParams) -> ComposableResult:
    """Lower bound on the composable rate and the total epsilon security.

    The bound may be negative; reporting clamps, internal consumers keep the
    sign.  epsilon = eps_cor + eps_s + eps_h + 2 p_ec eps_pe.
    """
    n = comp.n_key_rounds
    if n < 1.0:
        raise DomainError("no key rounds left after parameter estimation")
    delta = aep_penalty(comp.d_bits, comp.eps_s)
    tail = math.log2(comp.eps_h**2 * comp.eps_cor)
    r_com = comp.p_ec * (n * r_asy_pe - math.sqrt(n) * delta + tail) / comp.n_total_rounds
    epsilon = comp.eps_cor + comp.eps_s + comp.eps_h + 2.0 * comp.p_ec * comp.eps_pe
    return ComposableResult(r_com=r_com, epsilon=epsilon)


def finite_size_rate(
    level: TrustLevel,
    params: ScenarioParams,
    budget: LinkNoiseBudget,
    comp: CompositionParams,
    beta: float = 0.95,
) -> FiniteSizeResult:
    """Full pipeline: bounds, policy, pessimised rate, composable assembly.

    The confidence edges are evaluated analytically from the true working
    point, which is how the rate curves are produced; sample-driven
    estimation lives in :mod:`cvqkd.sampling`.
    """
    level = TrustLevel.parse(level)
    w = confidence_factor(comp.eps_pe)
    bounds = worst_case_bounds(
        params.tau, params.sigma_x2, params.n_total, params.v_det,
        comp.m_pe(params.v_det), w,
    )
    pe_params, bounds = pe_policy(level, params, budget, bounds)
    rate = asymptotic_rate(RateInputs(level, params, beta))
    rate_pe = asymptotic_rate(RateInputs(level, pe_params, beta))
    com = composable_rate(rate_pe.r_asy, comp)
    return FiniteSizeResult(
        rate=rate,
        rate_pe=rate_pe,
        r_com=com.r_com,
        epsilon=com.epsilon,
        bounds=bounds,
    )
