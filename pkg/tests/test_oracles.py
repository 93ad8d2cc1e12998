import numpy as np
import pytest
from scipy import special

from loopspec import oracles
from loopspec.errors import ConvergenceError, NoBoundStateError, PreconditionError


class TestIdealRing:
    def test_half_flux_value(self):
        assert oracles.ideal_ring(2.0 * np.pi, 0, 0.5) == 0.25

    def test_zero(self):
        assert oracles.ideal_ring(2.0 * np.pi, 0, 0.0) == 0.0

    def test_reflection_symmetry(self):
        for n, phi in [(0, 0.2), (1, 0.37), (2, 0.9)]:
            assert oracles.ideal_ring(5.0, n, phi) == oracles.ideal_ring(5.0, -n, -phi)

    def test_slope_matches_ring_current_scale(self):
        # d/dphi at n=0, phi=0.2, L=2pi equals 0.4
        d = 1e-6
        slope = (
            oracles.ideal_ring(2 * np.pi, 0, 0.2 + d)
            - oracles.ideal_ring(2 * np.pi, 0, 0.2 - d)
        ) / (2 * d)
        assert abs(slope - 0.4) < 1e-9


class TestMuCircle:
    def test_zero_field_ladder(self):
        assert oracles.mu_circle(1.0, 0.0, 1) == -0.25
        assert oracles.mu_circle(1.0, 0.0, 2) == 0.75
        assert oracles.mu_circle(1.0, 0.0, 3) == 0.75

    def test_half_flux_degeneracy(self):
        assert oracles.mu_circle(1.0, 1.0, 1) == 0.0
        assert oracles.mu_circle(1.0, 1.0, 2) == 0.0

    def test_flux_quantum_periodicity(self):
        for b in (0.0, 0.3, 1.7):
            for j in (1, 2, 5):
                assert abs(
                    oracles.mu_circle(1.0, b, j) - oracles.mu_circle(1.0, b + 2.0, j)
                ) < 1e-12


class TestBessel:
    def test_wronskian_grid(self):
        for m in range(11):
            for x in (0.05, 0.3, 1.0, 2.5, 7.0, 10.0, 17.0, 30.0, 60.0):
                pair = oracles.bessel_ik(m, x)
                assert abs(pair.wronskian_defect) < 1e-12
                assert pair.i_value > 0.0 and pair.k_value > 0.0

    def test_against_scipy(self):
        for m in (0, 1, 3, 7, 10):
            for x in (0.05, 1.0, 10.0, 50.0, 100.0):
                pair = oracles.bessel_ik(m, x)
                assert pair.i_value == pytest.approx(special.iv(m, x), rel=1e-12)
                assert pair.k_value == pytest.approx(special.kv(m, x), rel=1e-12)

    def test_small_argument_behavior(self):
        assert oracles.bessel_ik(0, 1e-4).i_value == pytest.approx(1.0, abs=1e-6)
        # K_0(x) ~ -ln(x/2) - gamma_E: slope of K_0 against ln x is -1
        xs = np.array([1e-4, 2e-4, 4e-4])
        ks = [oracles.bessel_ik(0, x).k_value for x in xs]
        slope = np.polyfit(np.log(xs), ks, 1)[0]
        assert abs(slope + 1.0) < 1e-3

    def test_large_argument_product(self):
        pair = oracles.bessel_ik(2, 50.0)
        assert pair.i_value * pair.k_value == pytest.approx(1.0 / 100.0, rel=0.01)

    def test_range_checks(self):
        with pytest.raises(PreconditionError):
            oracles.bessel_ik(11, 1.0)
        with pytest.raises(PreconditionError):
            oracles.bessel_ik(0, 0.0)
        with pytest.raises(PreconditionError):
            oracles.bessel_ik(0, 101.0)


class TestCircleDeltaRing:
    def test_ground_state_scale(self):
        val = oracles.circle_delta_2d(1.0, 5.0, 0)
        # leading order -(beta^2/4 + 1/4); agreement within ~10% here
        assert abs(val - (-6.5)) < 0.1 * 6.5
        # frozen from the matching equation, verified against an
        # independent conservative radial finite-difference solve
        assert val == pytest.approx(-6.5580108234, abs=1e-9)

    def test_strong_coupling_trend(self):
        shifted = [
            oracles.circle_delta_2d(1.0, beta, 0) + beta**2 / 4.0
            for beta in (20.0, 40.0, 80.0)
        ]
        diffs = np.abs(np.array(shifted) + 0.25)
        assert np.all(np.diff(diffs) < 0.0)  # monotone toward -1/4

    def test_sector_ordering(self):
        vals = [oracles.circle_delta_2d(1.0, 5.0, m) for m in (0, 1, 2)]
        assert vals[0] < vals[1] < vals[2] < 0.0

    def test_no_bound_state_reported(self):
        with pytest.raises(NoBoundStateError):
            oracles.circle_delta_2d(1.0, 5.0, 3)

    def test_level_union_with_degeneracies(self):
        levels = oracles.circle_delta_2d_levels(1.0, 5.0, 5)
        assert levels[0] == oracles.circle_delta_2d(1.0, 5.0, 0)
        assert levels[1] == levels[2] == oracles.circle_delta_2d(1.0, 5.0, 1)
        assert levels[3] == levels[4] == oracles.circle_delta_2d(1.0, 5.0, 2)
        with pytest.raises(NoBoundStateError):
            oracles.circle_delta_2d_levels(1.0, 5.0, 8)
