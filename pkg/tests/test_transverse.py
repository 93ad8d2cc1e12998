import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loopspec import transverse
from loopspec.errors import PreconditionError

ULP_TOL = 1e-12  # enclosures collapse below float resolution once tanh saturates


class TestZetaPlus:
    def test_wide_well_limit(self):
        # a -> infinity reproduces the whole-line delta level -beta^2/4
        r = transverse.zeta_plus(50.0, 2.0)
        assert abs(r.zeta + 1.0) < 1e-10

    def test_enclosure_and_value(self):
        r = transverse.zeta_plus(1.0, 10.0)
        lo, hi = r.paper_bounds
        assert lo == -25.0 and abs(hi - (-25.0 + 200.0 * np.exp(-5.0))) < 1e-12
        assert lo < r.zeta < hi
        assert r.zeta == pytest.approx(-24.9954, abs=1e-3)

    def test_matches_fd_oracle(self):
        r = transverse.zeta_plus(1.0, 10.0, oracle_mesh=None)
        e1 = transverse.transverse_fd_oracle(1.0, 10.0, 0.0, "+", 801)[0] - r.zeta
        e2 = transverse.transverse_fd_oracle(1.0, 10.0, 0.0, "+", 1601)[0] - r.zeta
        assert 3.0 < e1 / e2 < 5.0  # demonstrated O(h^2), converging to the root

    def test_refuses_small_coupling(self):
        with pytest.raises(PreconditionError):
            transverse.zeta_plus(1.0, 2.0)

    def test_single_bound_state_witness(self):
        r = transverse.zeta_plus(1.0, 10.0)
        assert r.second_eigenvalue is not None
        assert r.second_eigenvalue >= -1e-8


class TestZetaMinus:
    def test_enclosure(self):
        r = transverse.zeta_minus(1.0, 10.0, 1.0)
        lo, hi = r.paper_bounds
        assert hi == -25.0
        assert abs(lo - (-25.0 - (2205.0 / 16.0) * 100.0 * np.exp(-5.0))) < 1e-10
        assert lo < r.zeta < hi

    def test_neumann_wide_well_limit(self):
        r = transverse.zeta_minus(50.0, 2.0, 0.0)
        assert abs(r.zeta + 1.0) < 1e-10

    def test_robin_reduction_at_zero_curvature_bound(self):
        # gamma_plus = 0 must reduce the matching condition to
        # 2 kappa tanh(kappa a) = beta
        r = transverse.zeta_minus(1.0, 10.0, 0.0, oracle_mesh=None)
        assert abs(2.0 * r.kappa * np.tanh(r.kappa * 1.0) - 10.0) < 1e-9

    def test_matches_fd_oracle_two_meshes(self):
        r = transverse.zeta_minus(1.0, 10.0, 1.0, oracle_mesh=None)
        e1 = transverse.transverse_fd_oracle(1.0, 10.0, 1.0, "-", 801)[0] - r.zeta
        e2 = transverse.transverse_fd_oracle(1.0, 10.0, 1.0, "-", 1601)[0] - r.zeta
        assert 3.0 < e1 / e2 < 5.0

    def test_refusals(self):
        with pytest.raises(PreconditionError):
            transverse.zeta_minus(0.5, 10.0, 1.0)  # a*beta = 5 <= 8
        with pytest.raises(PreconditionError):
            transverse.zeta_minus(2.0, 10.0, 4.0)  # beta <= 8*gamma_plus/3


class TestFdOracle:
    def test_dirichlet_ground_without_delta(self):
        val, _ = transverse.transverse_fd_oracle(1.0, 0.0, 0.0, "+", 801)
        assert abs(val - np.pi**2 / 4.0) < 1e-4

    def test_neumann_constant_mode(self):
        val, _ = transverse.transverse_fd_oracle(1.0, 0.0, 0.0, "-", 801)
        assert abs(val) < 1e-6

    def test_mesh_validation(self):
        with pytest.raises(PreconditionError):
            transverse.transverse_fd_oracle(1.0, 10.0, 0.0, "+", 800)
        with pytest.raises(PreconditionError):
            transverse.transverse_fd_oracle(1.0, 10.0, 0.0, "+", 101)


class TestGridProperties:
    def test_enclosures_and_ordering_on_grid(self):
        for gamma_plus in (0.5, 1.0):
            for a in (0.5, 1.0, 2.0):
                for beta in (10.0, 20.0, 40.0):
                    zp = None
                    if beta * a > 8.0 / 3.0:
                        zp = transverse.zeta_plus(a, beta, oracle_mesh=None)
                        lo, hi = zp.paper_bounds
                        assert lo - ULP_TOL * beta**2 < zp.zeta < hi + ULP_TOL * beta**2
                    if a * beta > 8.0 and beta > 8.0 * gamma_plus / 3.0:
                        zm = transverse.zeta_minus(a, beta, gamma_plus, oracle_mesh=None)
                        lo, hi = zm.paper_bounds
                        assert lo - ULP_TOL * beta**2 < zm.zeta < hi + ULP_TOL * beta**2
                        if zp is not None:
                            base = -0.25 * beta**2
                            assert zm.zeta <= base + ULP_TOL * beta**2
                            assert zp.zeta >= base - ULP_TOL * beta**2

    def test_dirichlet_level_decreases_with_width(self):
        zs = [transverse.zeta_plus(a, 10.0, oracle_mesh=None).zeta for a in (0.5, 1.0, 2.0)]
        assert zs[0] > zs[1] > zs[2]


@settings(max_examples=25, deadline=None)
@given(
    a=st.floats(min_value=0.3, max_value=3.0),
    beta=st.floats(min_value=9.0, max_value=60.0),
    gamma_plus=st.floats(min_value=0.0, max_value=2.0),
)
def test_matching_roots_stay_enclosed(a, beta, gamma_plus):
    if beta * a > 8.0 / 3.0:
        zp = transverse.zeta_plus(a, beta, oracle_mesh=None)
        lo, hi = zp.paper_bounds
        assert lo - ULP_TOL * beta**2 < zp.zeta < hi + ULP_TOL * beta**2
    if a * beta > 8.0 and beta > 8.0 * gamma_plus / 3.0:
        zm = transverse.zeta_minus(a, beta, gamma_plus, oracle_mesh=None)
        assert zm.zeta < -0.25 * beta**2 + ULP_TOL * beta**2
