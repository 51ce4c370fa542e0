"""Monte-Carlo validation of the parameter-estimation layer.

Synthetic channel rounds follow y = sqrt(tau) x + z with Gaussian x of
variance sigma_x2 and Gaussian z of variance 2 nbar + v_det.  Heterodyne is
modelled as two independent quadrature samples per round, matching the
sample-count convention of the estimators.

Streams come from numpy's PCG64 via ``default_rng((seed, trial_index))``, so
every trial replays deterministically and trials are independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .finite_size import confidence_factor, estimate_from_samples, worst_case_bounds


@dataclass(frozen=True)
class SyntheticChannel:
    tau: float
    n_total: float
    sigma_x2: float
    v_det: int = 2
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.tau <= 1.0:
            raise ValueError(f"tau must be in [0, 1], got {self.tau}")
        if self.n_total < 0.0 or self.sigma_x2 < 0.0:
            raise ValueError("n_total and sigma_x2 must be >= 0")
        if self.v_det not in (1, 2):
            raise ValueError(f"v_det must be 1 or 2, got {self.v_det}")

    @property
    def sigma_z2(self) -> float:
        return 2.0 * self.n_total + self.v_det


@dataclass(frozen=True)
class CoverageReport:
    """Observed confidence-bound violation rates over repeated trials."""

    trials: int
    m_pe: float
    eps_pe: float
    w: float
    tau_violations: int
    n_violations: int
    joint_violations: int
    mean_tau_hat: float
    mean_n_hat: float
    mean_tau_gap: float

    @property
    def tau_rate(self) -> float:
        return self.tau_violations / self.trials

    @property
    def n_rate(self) -> float:
        return self.n_violations / self.trials

    @property
    def joint_rate(self) -> float:
        return self.joint_violations / self.trials


def generate_pairs(
    ch: SyntheticChannel, count: int, rng: np.random.Generator | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Draw `count` i.i.d. samples of (x, y) from the synthetic channel."""
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    if rng is None:
        rng = np.random.default_rng(ch.seed)
    x = rng.normal(0.0, math.sqrt(ch.sigma_x2), size=count)
    z = rng.normal(0.0, math.sqrt(ch.sigma_z2), size=count)
    return x, math.sqrt(ch.tau) * x + z


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent per-trial stream derived from (seed, trial index)."""
    return np.random.default_rng((seed, trial))


def coverage_experiment(
    ch: SyntheticChannel, m_pe: int, eps_pe: float, trials: int
) -> CoverageReport:
    """Empirical coverage of the worst-case confidence bounds.

    Each trial discloses m_pe samples, rebuilds the bounds from the
    *estimated* point, and records whether the true tau fell below tau' or
    the true nbar exceeded n''.  The joint failure frequency should stay
    near 2 eps_pe (each bound is a one-sided w-sigma edge).
    """
    if trials < 100:
        raise DomainError(f"trials must be >= 100, got {trials}")
    w = confidence_factor(eps_pe)
    tau_bad = 0
    n_bad = 0
    joint_bad = 0
    sum_tau_hat = 0.0
    sum_n_hat = 0.0
    sum_gap = 0.0
    for trial in range(trials):
        rng = trial_rng(ch.seed, trial)
        x, y = generate_pairs(ch, m_pe, rng)
        tau_hat, n_hat = estimate_from_samples(x, y, ch.v_det)
        bounds = worst_case_bounds(
            tau_hat, ch.sigma_x2, max(n_hat, 0.0), ch.v_det, m_pe, w
        )
        tau_viol = ch.tau < bounds.tau_low
        n_viol = ch.n_total > bounds.n_high
        tau_bad += tau_viol
        n_bad += n_viol
        joint_bad += tau_viol or n_viol
        sum_tau_hat += tau_hat
        sum_n_hat += n_hat
        sum_gap += tau_hat - bounds.tau_low
    return CoverageReport(
        trials=trials,
        m_pe=m_pe,
        eps_pe=eps_pe,
        w=w,
        tau_violations=tau_bad,
        n_violations=n_bad,
        joint_violations=joint_bad,
        mean_tau_hat=sum_tau_hat / trials,
        mean_n_hat=sum_n_hat / trials,
        mean_tau_gap=sum_gap / trials,
    )
