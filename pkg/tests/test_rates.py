"""SNR, mutual information, asymptotic rate, PLOB and repeater benchmarks."""

import math

import pytest

from cvqkd import (
    DomainError,
    FiberPlan,
    HardwareParams,
    RateInputs,
    ScenarioParams,
    TrustLevel,
    asymptotic_rate,
    fiber_scenario,
    mutual_information,
    plob_thermal_bound,
    repeater_chain_rate,
    snr,
)


class TestSnrAndCapacity:
    def test_zero_signal(self):
        assert snr(0.0, 0.5, 0.05, 2) == 0.0

    def test_shot_noise_limited_hom(self):
        assert snr(10.0, 1.0, 0.0, 1) == pytest.approx(10.0)

    def test_reference_point(self):
        assert snr(10.0, 0.5, 0.05, 2) == pytest.approx(2.380952380952381, rel=1e-12)

    def test_zero_tau_returns_zero(self):
        assert snr(10.0, 0.0, 0.1, 2) == 0.0

    def test_capacity_zero(self):
        assert mutual_information(0.0, 1) == 0.0

    def test_capacity_hom(self):
        assert mutual_information(3.0, 1) == pytest.approx(1.0)

    def test_capacity_het_counts_both_quadratures(self):
        assert mutual_information(3.0, 2) == pytest.approx(2.0)


class TestAsymptoticRate:
    def _near_identity(self):
        return ScenarioParams(sigma_x2=10.0, eta_ch=1.0 - 1e-9, eta_eff=1.0,
                              detector="het")

    def test_identity_channel_keeps_capacity(self):
        inputs = RateInputs(TrustLevel.EVE1, self._near_identity(), beta=1.0)
        result = asymptotic_rate(inputs)
        assert result.chi == pytest.approx(0.0, abs=1e-6)
        assert result.r_asy == pytest.approx(result.i_ab, abs=1e-6)

    def test_trust_monotonicity_eve1_vs_eve5(self):
        params, _ = fiber_scenario(HardwareParams(), FiberPlan(length_km=10.0), 12.0)
        r1 = asymptotic_rate(RateInputs(TrustLevel.EVE1, params))
        r5 = asymptotic_rate(RateInputs(TrustLevel.EVE5, params))
        assert r1.r_asy >= r5.r_asy

    def test_monotone_in_beta(self):
        params, _ = fiber_scenario(HardwareParams(), FiberPlan(length_km=10.0), 12.0)
        low = asymptotic_rate(RateInputs(TrustLevel.EVE1, params, beta=0.9))
        high = asymptotic_rate(RateInputs(TrustLevel.EVE1, params, beta=0.99))
        assert high.r_asy > low.r_asy

    def test_monotone_in_channel_noise(self):
        def rate(n_ch):
            p = ScenarioParams(sigma_x2=12.0, eta_ch=0.4, eta_eff=0.7, n_ch=n_ch)
            return asymptotic_rate(RateInputs(TrustLevel.EVE1, p)).r_asy

        rates = [rate(n) for n in (0.0, 0.005, 0.01, 0.02, 0.04)]
        assert all(a > b for a, b in zip(rates, rates[1:]))

    def test_upsilon_equivalent_noise(self):
        params, _ = fiber_scenario(HardwareParams(), FiberPlan(length_km=10.0), 12.0)
        result = asymptotic_rate(RateInputs(TrustLevel.EVE1, params))
        assert result.upsilon == pytest.approx(params.sigma_z2 / params.tau, rel=1e-12)
        assert result.snr == pytest.approx(params.sigma_x2 / result.upsilon, rel=1e-12)

    def test_negative_rate_preserved(self):
        params, _ = fiber_scenario(HardwareParams(), FiberPlan(length_km=60.0), 12.0)
        result = asymptotic_rate(RateInputs(TrustLevel.EVE5, params))
        assert result.r_asy < 0.0


class TestPlobBound:
    def test_pure_loss(self):
        assert plob_thermal_bound(0.5, 0.0) == pytest.approx(1.0, rel=1e-12)
        for tau in (0.1, 0.3, 0.9):
            assert plob_thermal_bound(tau, 0.0) == pytest.approx(
                -math.log2(1.0 - tau), rel=1e-12
            )

    def test_thermal_reference_value(self):
        assert plob_thermal_bound(0.5, 0.1) == pytest.approx(
            0.41997309402197493, rel=1e-12
        )

    def test_entanglement_breaking_clamps_to_zero(self):
        assert plob_thermal_bound(0.5, 5.0) == 0.0

    def test_domain(self):
        for tau in (0.0, 1.0, -0.1, 1.5):
            with pytest.raises(DomainError):
                plob_thermal_bound(tau, 0.1)


class TestRepeaterChain:
    def test_repeaterless_half(self):
        assert repeater_chain_rate(0.5, 0) == pytest.approx(1.0, rel=1e-12)

    def test_one_repeater_square_root(self):
        assert repeater_chain_rate(0.25, 1) == pytest.approx(1.0, rel=1e-12)

    def test_500km_three_repeaters(self):
        eta = 10.0 ** (-0.02 * 500.0)
        assert repeater_chain_rate(eta, 3) == pytest.approx(
            4.5694310169431757e-3, rel=1e-12
        )

    def test_increasing_in_repeaters(self):
        eta = 10.0 ** (-0.02 * 200.0)
        rates = [repeater_chain_rate(eta, n) for n in range(5)]
        assert all(a < b for a, b in zip(rates, rates[1:]))

    def test_domain(self):
        with pytest.raises(DomainError):
            repeater_chain_rate(1.0, 0)
        with pytest.raises(DomainError):
            repeater_chain_rate(0.5, -1)
