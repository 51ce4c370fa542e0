"""Eavesdropper elements and photon numbers for the six trust levels."""

import math

import pytest

from cvqkd import (
    RateInputs,
    ScenarioParams,
    SingularChannel,
    TrustLevel,
    TwoModeCM,
    asymptotic_rate,
    eve_elements,
    eve_photon_number,
    symplectic_spectrum,
)


def params(**kw):
    base = dict(sigma_x2=10.0, eta_ch=0.5, eta_eff=0.7, eta0=1.0,
                n_tx=0.0, n_ch=0.0, n_rx=0.0, detector="het")
    base.update(kw)
    return ScenarioParams(**base)


class TestTrustLevelParsing:
    @pytest.mark.parametrize("raw,expected", [
        ("Eve0", TrustLevel.EVE0),
        ("eve3", TrustLevel.EVE3),
        ("Eve (5)", TrustLevel.EVE5),
        (2, TrustLevel.EVE2),
        (TrustLevel.EVE4, TrustLevel.EVE4),
    ])
    def test_parse(self, raw, expected):
        assert TrustLevel.parse(raw) is expected

    def test_label(self):
        assert TrustLevel.EVE3.label() == "Eve3"


class TestEvePhotonNumber:
    def test_pure_loss_channel(self):
        n, leak = eve_photon_number(TrustLevel.EVE1, params(n_ch=0.0))
        assert n == 0.0
        assert leak == pytest.approx(0.5)

    def test_eve5_direct_substitution(self):
        # nbar = 0.05 total with tau0 = 0.5 gives 0.1 photons through 0.5
        p = params(eta_ch=0.5 / 0.7, n_rx=0.05)
        assert p.tau0 == pytest.approx(0.5)
        n, leak = eve_photon_number(TrustLevel.EVE5, p)
        assert n == pytest.approx(0.1)
        assert leak == pytest.approx(0.5)

    def test_eve3_hand_checked(self):
        p = params(eta_ch=0.5, eta_eff=0.7, n_ch=0.02, n_rx=0.01)
        n, leak = eve_photon_number(TrustLevel.EVE3, p)
        assert n == pytest.approx((0.7 * 0.02 + 0.01) / (1.0 - 0.35), rel=1e-12)
        assert leak == pytest.approx(0.65)
        # the b consistency check the estimate must satisfy
        assert eve_elements(TrustLevel.EVE3, p).b == pytest.approx(
            p.tau * p.sigma_x2 + 2.0 * p.n_total + 1.0
        )

    def test_eve4_composition(self):
        p = params(n_tx=0.003, n_ch=0.01, eta0=0.8)
        n, leak = eve_photon_number(TrustLevel.EVE4, p)
        assert n == pytest.approx((0.01 + 0.5 * 0.003) / (1.0 - 0.8 * 0.5), rel=1e-12)
        assert leak == pytest.approx(1.0 - 0.4)

    def test_lossless_channel_is_singular(self):
        p = params(eta_ch=1.0)
        with pytest.raises(SingularChannel):
            eve_photon_number(TrustLevel.EVE1, p)
        with pytest.raises(SingularChannel):
            eve_photon_number(TrustLevel.EVE4, p)
        # tau = 0.7 < 1 keeps the receiver-leak levels regular
        assert eve_photon_number(TrustLevel.EVE2, p)[1] == pytest.approx(0.3)


class TestEveElements:
    def test_eve1_matched_variance_cancels_theta(self):
        # channel thermal variance equal to the transmitted one: no cross term
        p = params(n_tx=0.002)
        hot = p.mu + 2.0 * p.n_tx
        n_e = (hot - 1.0) / 2.0
        p = params(n_tx=0.002, n_ch=n_e * (1.0 - p.eta_ch))
        el = eve_elements(TrustLevel.EVE1, p)
        assert el.omega == pytest.approx(hot, rel=1e-12)
        assert el.theta == pytest.approx(0.0, abs=1e-12)

    def test_eve5_direct_substitution(self):
        p = params(eta_ch=0.5 / 0.7)  # tau0 = 0.5, no noise: omega = 1
        el = eve_elements(TrustLevel.EVE5, p)
        assert el.omega == 1.0
        assert el.psi == 0.0
        assert el.gamma == 0.0
        assert el.phi == pytest.approx(0.5 + 0.5 * 11.0)
        assert el.theta == pytest.approx(0.5 * (1.0 - 11.0))

    def test_eve2_substitution_oracle(self):
        p = params(eta_ch=0.5, eta_eff=0.7, n_ch=0.02, n_tx=0.001)
        el = eve_elements(TrustLevel.EVE2, p)
        tau = 0.35
        omega = 2.0 * (0.7 * 0.02 / 0.65) + 1.0
        hot = 11.0 + 0.002
        assert el.omega == pytest.approx(omega, rel=1e-12)
        assert el.phi == pytest.approx(tau * omega + 0.65 * hot, rel=1e-12)
        assert el.psi == pytest.approx(math.sqrt(tau * (omega**2 - 1.0)), rel=1e-12)
        assert el.gamma == pytest.approx(math.sqrt(0.65 * (omega**2 - 1.0)), rel=1e-12)
        assert el.theta == pytest.approx(math.sqrt(tau * 0.65) * (omega - hot), rel=1e-12)
        # more capable Eve must not have a smaller Holevo bound than Eve1
        r1 = asymptotic_rate(RateInputs(TrustLevel.EVE1, p))
        r2 = asymptotic_rate(RateInputs(TrustLevel.EVE2, p))
        assert r2.chi >= r1.chi - 1e-12

    def test_eve4_uses_alice_leak_transmittance(self):
        p = params(eta0=0.8, n_ch=0.01, n_tx=0.002)
        el = eve_elements(TrustLevel.EVE4, p)
        tau_a = 0.8 * 0.5
        omega = el.omega
        assert el.phi == pytest.approx(tau_a * omega + (1.0 - tau_a) * p.mu0, rel=1e-12)
        assert el.theta == pytest.approx(
            math.sqrt(p.tau0 * (1.0 - tau_a)) * (omega - p.mu0), rel=1e-12
        )

    def test_eve0_reduced_elements_match_eve1(self):
        p = params(n_ch=0.01, n_tx=0.001, n_rx=0.002)
        el0 = eve_elements(TrustLevel.EVE0, p)
        el1 = eve_elements(TrustLevel.EVE1, p)
        assert (el0.b, el0.theta, el0.phi) == (el1.b, el1.theta, el1.phi)
        assert el0.psi == 0.0 and el0.gamma == 0.0

    def test_eve5_reduces_to_eve1_for_trusted_free_setup(self):
        # no setup noise, no setup loss: the two attack pictures coincide
        p = ScenarioParams(sigma_x2=10.0, eta_ch=0.4, eta_eff=1.0, eta0=1.0,
                           n_ch=0.015, detector="het")
        el1 = eve_elements(TrustLevel.EVE1, p)
        el5 = eve_elements(TrustLevel.EVE5, p)
        for field in ("omega", "phi", "psi", "theta", "gamma", "b"):
            assert getattr(el5, field) == pytest.approx(getattr(el1, field), rel=1e-12)

    def test_b_is_output_variance(self):
        p = params(n_tx=0.002, n_ch=0.01, n_rx=0.003)
        for level in TrustLevel:
            el = eve_elements(level, p)
            assert el.b == pytest.approx(p.tau * p.sigma_x2 + 2.0 * p.n_total + 1.0)

    def test_all_matrices_physical(self, rng):
        for _ in range(200):
            p = ScenarioParams(
                sigma_x2=rng.uniform(1.0, 30.0),
                eta_ch=rng.uniform(0.05, 0.95),
                eta_eff=rng.uniform(0.4, 0.95),
                eta0=rng.uniform(0.5, 1.0),
                n_tx=rng.uniform(0.0, 0.01),
                n_ch=rng.uniform(0.0, 0.05),
                n_rx=rng.uniform(0.0, 0.05),
            )
            for level in (TrustLevel.EVE1, TrustLevel.EVE2, TrustLevel.EVE3,
                          TrustLevel.EVE4, TrustLevel.EVE5):
                el = eve_elements(level, p)
                v = TwoModeCM.symmetric(el.phi, el.omega, el.psi, -el.psi)
                s = symplectic_spectrum(v)
                assert s.nu2 >= 1.0
