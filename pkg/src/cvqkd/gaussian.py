"""Two-mode Gaussian covariance matrices, symplectic spectra and Holevo bounds.

All variances are expressed in shot-noise units (vacuum quadrature variance
equals 1).  A two-mode state is stored in the quadrature-diagonal block form

    V = [[A, C], [C^T, B]],  A = diag(a_q, a_p),  B = diag(b_q, b_p),
                             C = diag(c_q, c_p),

which covers every matrix appearing in the rate pipeline (identity and Z
correlation blocks) and, unlike the scalar ``a I`` / ``b I`` special case, is
closed under conditioning on a homodyne outcome.  For this form the
symplectic invariants have the closed expressions

    Delta = a_q a_p + b_q b_p + 2 c_q c_p
    det V = (a_q b_q - c_q^2)(a_p b_p - c_p^2)

and the symplectic eigenvalues are nu_pm = sqrt((Delta +- sqrt(Delta^2 -
4 det V)) / 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonPhysical

#: Absolute tolerance separating float round-off from genuine physicality
#: violations.  Values worse than this raise instead of being clamped.
TOL = 1e-9

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class TwoModeCM:
    """Two-mode covariance matrix with quadrature-diagonal 2x2 blocks."""

    a_q: float
    a_p: float
    b_q: float
    b_p: float
    c_q: float
    c_p: float

    @classmethod
    def symmetric(cls, a: float, b: float, c_q: float, c_p: float) -> "TwoModeCM":
        """Build the common symmetric form diag blocks ``a I`` and ``b I``."""
        return cls(a, a, b, b, c_q, c_p)

    @property
    def delta(self) -> float:
        return self.a_q * self.a_p + self.b_q * self.b_p + 2.0 * self.c_q * self.c_p

    @property
    def det(self) -> float:
        return (self.a_q * self.b_q - self.c_q**2) * (self.a_p * self.b_p - self.c_p**2)

    def as_matrix(self) -> np.ndarray:
        """Dense 4x4 matrix in (q1, p1, q2, p2) ordering."""
        return np.array(
            [
                [self.a_q, 0.0, self.c_q, 0.0],
                [0.0, self.a_p, 0.0, self.c_p],
                [self.c_q, 0.0, self.b_q, 0.0],
                [0.0, self.c_p, 0.0, self.b_p],
            ]
        )


@dataclass(frozen=True)
class SymplecticSpectrum:
    """Ordered pair of symplectic eigenvalues, ``nu1 >= nu2 >= 1``."""

    nu1: float
    nu2: float


def symplectic_spectrum(cm: TwoModeCM) -> SymplecticSpectrum:
    """Closed-form symplectic eigenvalues of a quadrature-diagonal two-mode CM.

    Eigenvalues short of 1 by less than :data:`TOL` are clamped to 1; larger
    deficits raise :class:`NonPhysical`, as do a negative determinant or a
    negative inner radical beyond tolerance.
    """
    delta = cm.delta
    detv = cm.det
    if detv < -TOL:
        raise NonPhysical(f"negative covariance determinant {detv}")
    inner = delta * delta - 4.0 * detv
    if inner < 0.0:
        if inner < -TOL * max(1.0, delta * delta):
            raise NonPhysical(f"complex symplectic spectrum (radical {inner})")
        inner = 0.0
    root = math.sqrt(inner)
    nu1 = math.sqrt((delta + root) / 2.0)
    # nu1 * nu2 = sqrt(det V); dividing avoids cancellation in (delta - root).
    nu2 = math.sqrt(max(detv, 0.0)) / nu1 if nu1 > 0.0 else 0.0

    def _clamp(nu: float) -> float:
        if nu < 1.0:
            if nu < 1.0 - TOL:
                raise NonPhysical(f"symplectic eigenvalue {nu} < 1")
            return 1.0
        return nu

    nu1 = _clamp(nu1)
    nu2 = _clamp(nu2)
    if not (math.isfinite(nu1) and math.isfinite(nu2)):
        raise NonPhysical("non-finite symplectic eigenvalue")
    return SymplecticSpectrum(nu1, nu2)


def h_function(nu: float) -> float:
    """Von-Neumann entropy (bits) of a thermal symplectic eigenvalue.

    H(nu) = ((nu+1)/2) log2((nu+1)/2) - ((nu-1)/2) log2((nu-1)/2), with the
    limit value 0 at nu = 1.  Evaluated through x = nu - 1 and ``log1p`` so
    the first term stays accurate near the pure-state point.
    """
    if nu < 1.0 - TOL:
        raise DomainError(f"h_function requires nu >= 1, got {nu}")
    x = nu - 1.0
    if x <= 0.0:
        return 0.0
    head = (x + 2.0) / 2.0 * math.log1p(x / 2.0) / _LN2
    tail = (x / 2.0) * (math.log(x / 2.0) / _LN2)
    return head - tail


def condition_on_homodyne(
    v: TwoModeCM, cross: tuple[float, float], b: float
) -> TwoModeCM:
    """Condition a two-mode CM on a homodyne outcome of the correlated mode.

    ``cross = (theta, gamma)`` is the correlation block (theta I, gamma Z)
    between the measured mode (variance ``b``) and the two retained modes.
    Homodyne projects onto the q quadrature, so only q entries are reduced:

        V' = V - (1/b) C^T Pi C,  Pi = diag(1, 0).
    """
    if b <= 0.0:
        raise DomainError(f"output variance must be positive, got {b}")
    theta, gamma = cross
    out = TwoModeCM(
        a_q=v.a_q - theta * theta / b,
        a_p=v.a_p,
        b_q=v.b_q - gamma * gamma / b,
        b_p=v.b_p,
        c_q=v.c_q - theta * gamma / b,
        c_p=v.c_p,
    )
    symplectic_spectrum(out)  # raises NonPhysical on a bad result
    return out


def condition_on_heterodyne(
    v: TwoModeCM, cross: tuple[float, float], b: float
) -> TwoModeCM:
    """Heterodyne counterpart of :func:`condition_on_homodyne`.

    Both quadratures are measured against an extra vacuum unit:

        V' = V - (1/(b+1)) C^T C.
    """
    if b <= 0.0:
        raise DomainError(f"output variance must be positive, got {b}")
    theta, gamma = cross
    d = b + 1.0
    out = TwoModeCM(
        a_q=v.a_q - theta * theta / d,
        a_p=v.a_p - theta * theta / d,
        b_q=v.b_q - gamma * gamma / d,
        b_p=v.b_p - gamma * gamma / d,
        c_q=v.c_q - theta * gamma / d,
        c_p=v.c_p + theta * gamma / d,
    )
    symplectic_spectrum(out)
    return out


def holevo_bound(
    v_ee: TwoModeCM, cross: tuple[float, float], b: float, detector: str
) -> float:
    """Holevo information (bits/use) of the eavesdropper on the detected output.

    chi = H(nu1) + H(nu2) - H(nu3) - H(nu4) with {nu1, nu2} the spectrum of
    the unconditional matrix and {nu3, nu4} of the matrix conditioned on the
    homodyne or heterodyne outcome.  Values negative by less than
    :data:`TOL` are clamped to zero.
    """
    if detector == "hom":
        cond = condition_on_homodyne(v_ee, cross, b)
    elif detector == "het":
        cond = condition_on_heterodyne(v_ee, cross, b)
    else:
        raise DomainError(f"detector must be 'hom' or 'het', got {detector!r}")
    s_u = symplectic_spectrum(v_ee)
    s_c = symplectic_spectrum(cond)
    chi = (
        h_function(s_u.nu1)
        + h_function(s_u.nu2)
        - h_function(s_c.nu1)
        - h_function(s_c.nu2)
    )
    if chi < 0.0:
        if chi < -TOL:
            raise NonPhysical(f"negative Holevo bound {chi}")
        chi = 0.0
    return chi


def holevo_bound_reduced(phi: float, theta: float, b: float, detector: str) -> float:
    """Holevo bound when the eavesdropper keeps a single mode of variance phi.

    Used by the passive line-of-sight trust level, whose correlation with the
    output is theta I.  The conditional spectra are sqrt(phi (phi - theta^2/b))
    for homodyne and phi - theta^2/(b+1) for heterodyne.
    """
    if b <= 0.0:
        raise DomainError(f"output variance must be positive, got {b}")
    if detector == "hom":
        vq = phi - theta * theta / b
        if vq <= 0.0:
            raise NonPhysical("conditional variance collapsed below zero")
        nu_c = math.sqrt(vq * phi)
    elif detector == "het":
        nu_c = phi - theta * theta / (b + 1.0)
    else:
        raise DomainError(f"detector must be 'hom' or 'het', got {detector!r}")
    if nu_c < 1.0:
        if nu_c < 1.0 - TOL:
            raise NonPhysical(f"conditional eigenvalue {nu_c} < 1")
        nu_c = 1.0
    chi = h_function(phi) - h_function(nu_c)
    if chi < 0.0:
        if chi < -TOL:
            raise NonPhysical(f"negative Holevo bound {chi}")
        chi = 0.0
    return chi
