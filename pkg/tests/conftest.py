"""Shared test helpers: dense symplectic oracle and random physical states."""

from __future__ import annotations

import numpy as np
import pytest

from cvqkd import TwoModeCM

# symplectic form in (q1, p1, q2, p2) ordering
OMEGA = np.array(
    [
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]
)


def symplectic_oracle(matrix: np.ndarray) -> tuple[float, float]:
    """Symplectic eigenvalues from the |eig(i Omega V)| route, (nu1, nu2)."""
    eigs = np.sort(np.abs(np.real(np.linalg.eigvals(1j * OMEGA @ matrix))))
    nu2 = 0.5 * (eigs[0] + eigs[1])
    nu1 = 0.5 * (eigs[2] + eigs[3])
    return nu1, nu2


def random_physical_cm(rng: np.random.Generator) -> TwoModeCM:
    """Rejection-sample a physical quadrature-diagonal two-mode CM."""
    while True:
        a = rng.uniform(1.0, 12.0)
        b = rng.uniform(1.0, 12.0)
        cap = np.sqrt(a * b)
        c_q = rng.uniform(-cap, cap)
        c_p = rng.uniform(-cap, cap)
        cm = TwoModeCM.symmetric(a, b, c_q, c_p)
        nu1, nu2 = symplectic_oracle(cm.as_matrix())
        if nu2 >= 1.0 + 1e-6:
            return cm


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260810)
