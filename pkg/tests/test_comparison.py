import warnings

import numpy as np
import pytest

from loopspec import comparison, oracles
from loopspec.errors import CrossingWarning, PreconditionError

TWO_PI = 2.0 * np.pi


class TestAssembly:
    def test_circle_zero_field_is_diagonal(self, circle_curve):
        h = comparison.ring_hamiltonian(circle_curve, 0.0, 16)
        k = np.arange(-16, 17)
        assert np.max(np.abs(np.diag(h) - (k**2 - 0.25))) < 1e-12
        off = h - np.diag(np.diag(h))
        assert np.max(np.abs(off)) < 1e-12

    def test_circle_half_flux_kinetic(self, circle_curve):
        h = comparison.ring_hamiltonian(circle_curve, 1.0, 16)
        k = np.arange(-16, 17)
        assert np.max(np.abs(np.diag(h) - ((k - 0.5) ** 2 - 0.25))) < 1e-12

    def test_hermitian(self, ellipse_curve):
        h = comparison.ring_hamiltonian(ellipse_curve, 0.7, 64)
        assert np.max(np.abs(h - h.conj().T)) < 1e-14

    def test_aliasing_guard(self, circle_curve):
        with pytest.raises(PreconditionError):
            comparison.ring_hamiltonian(circle_curve, 0.0, 512)


class TestMuSpectrum:
    def test_circle_closed_form_all_fields(self, circle_curve):
        for b in (0.0, 0.37, 1.0, 2.0):
            spec = comparison.mu_spectrum(circle_curve, b, n_modes=128, n_eigs=9)
            exact = [oracles.mu_circle(1.0, b, j) for j in range(1, 10)]
            assert np.max(np.abs(spec.eigenvalues - exact)) < 1e-10
            assert spec.converged

    def test_degenerate_pair_at_half_flux(self, circle_curve):
        spec = comparison.mu_spectrum(circle_curve, 1.0, n_eigs=2)
        assert abs(spec.eigenvalues[0]) < 1e-12
        assert abs(spec.eigenvalues[1]) < 1e-12

    def test_two_resolutions_agree(self, wiggly_curve):
        a = comparison.mu_spectrum(wiggly_curve, 0.3, n_modes=64, n_eigs=6)
        b = comparison.mu_spectrum(wiggly_curve, 0.3, n_modes=128, n_eigs=6)
        assert np.max(np.abs(a.eigenvalues - b.eigenvalues)) < 1e-8
        assert a.converged and b.converged

    def test_rayleigh_residuals(self, ellipse_curve):
        spec = comparison.mu_spectrum(ellipse_curve, 0.7, n_eigs=8)
        assert spec.residual_max < 1e-8

    def test_lower_bound_invariant(self, ellipse_curve, wiggly_curve):
        for curve in (ellipse_curve, wiggly_curve):
            spec = comparison.mu_spectrum(curve, 0.9, n_eigs=1)
            assert spec.eigenvalues[0] >= -0.25 * curve.gamma_max**2 - 1e-12

    def test_flux_periodicity_and_parity(self, ellipse_curve):
        area = ellipse_curve.area
        base = comparison.mu_spectrum(ellipse_curve, 0.7, n_eigs=8).eigenvalues
        shifted = comparison.mu_spectrum(
            ellipse_curve, 0.7 + TWO_PI / area, n_eigs=8
        ).eigenvalues
        mirrored = comparison.mu_spectrum(ellipse_curve, -0.7, n_eigs=8).eigenvalues
        assert np.max(np.abs(base - shifted)) < 1e-10
        assert np.max(np.abs(base - mirrored)) < 1e-10

    def test_continuity_over_fine_grid(self, ellipse_curve):
        b_grid = np.linspace(0.2, 0.4, 21)
        mus = np.array(
            [comparison.mu_spectrum(ellipse_curve, b, n_eigs=3).eigenvalues for b in b_grid]
        )
        steps = np.abs(np.diff(mus, axis=0))
        slope = np.max(steps) / (b_grid[1] - b_grid[0])
        # no jumps: every step consistent with the global slope scale
        assert np.max(steps) <= 2.0 * slope * (b_grid[1] - b_grid[0]) + 1e-12


class TestPersistentCurrent:
    def test_circle_linear_in_flux(self, circle_curve):
        # mu_1(phi) = phi^2 - 1/4 on the k = 0 branch: I_1 = -2 phi (2pi/L)^2
        area = circle_curve.area
        b = 0.2 * TWO_PI / area
        current = comparison.persistent_current(circle_curve, 1, b)
        assert abs(current - (-0.4)) < 1e-5

    def test_symmetric_minimum(self, circle_curve):
        assert abs(comparison.persistent_current(circle_curve, 1, 0.0)) < 1e-6

    def test_ellipse_against_polynomial_fit(self, ellipse_curve):
        area = ellipse_curve.area
        b0 = 0.25 * TWO_PI / area
        dphi = 0.01
        phis = np.array([-2, -1, 0, 1, 2]) * dphi
        mus = [
            comparison.mu_spectrum(
                ellipse_curve, b0 + TWO_PI * p / area, n_eigs=1
            ).eigenvalues[0]
            for p in phis
        ]
        slope = np.polyval(np.polyder(np.polyfit(phis, mus, 4)), 0.0)
        current = comparison.persistent_current(ellipse_curve, 1, b0)
        assert abs(current + slope) < 1e-4

    def test_kink_warning_at_crossing(self, circle_curve):
        with pytest.warns(CrossingWarning):
            comparison.persistent_current(circle_curve, 1, 1.0)

    def test_no_warning_away_from_crossing(self, circle_curve):
        with warnings.catch_warnings():
            warnings.simplefilter("error", CrossingWarning)
            comparison.persistent_current(circle_curve, 1, 0.4)


class TestSweep:
    def test_circle_sawtooth_parabolas(self, circle_curve):
        area = circle_curve.area
        phis = np.linspace(0.0, 1.0, 21)
        result = comparison.sweep(circle_curve, phis * TWO_PI / area, n_eigs=1)
        k = np.round(phis)
        expected = (k - phis) ** 2 - 0.25
        assert np.max(np.abs(result.mu[:, 0] - expected)) < 1e-10
        assert result.converged.all()

    def test_field_parity_rows(self, ellipse_curve):
        result = comparison.sweep(ellipse_curve, [0.6, -0.6], n_eigs=4)
        assert np.max(np.abs(result.mu[0] - result.mu[1])) < 1e-10

    def test_nonconstancy_witness(self, ellipse_curve):
        area = ellipse_curve.area
        phis = np.linspace(0.0, 1.0, 21)
        result = comparison.sweep(ellipse_curve, phis * TWO_PI / area, n_eigs=1)
        assert result.mu[:, 0].max() - result.mu[:, 0].min() > 1e-3


class TestFiniteDifferenceOracle:
    def test_matches_spectral_at_second_order(self, ellipse_curve):
        spec = comparison.mu_spectrum(ellipse_curve, 0.7, n_eigs=6).eigenvalues
        coarse = comparison.fd_mu_spectrum(ellipse_curve, 0.7, 2048, 6)
        fine = comparison.fd_mu_spectrum(ellipse_curve, 0.7, 4096, 6)
        e1 = np.max(np.abs(coarse - spec))
        e2 = np.max(np.abs(fine - spec))
        assert 3.0 < e1 / e2 < 5.0  # clean O(h^2)
        assert e2 < 1e-4
