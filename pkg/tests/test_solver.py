import math
import time

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domainwall import (
    Grid,
    InvalidParameter,
    InvalidWindow,
    UnsupportedProfile,
    build_witten_pair,
    constant_mass,
    dirac_spectrum_in_gap,
    eig_low,
    energy_estimate_check,
    glue_walls,
    make_single_wall,
    shooting_oracle,
    zero_mode,
)
from domainwall.solver import StaggeredDirac, richardson

SQRT3 = math.sqrt(3.0)
# kappa = 2 tanh x: Witten partner -d^2 + 4 - 6 sech^2 has levels 0 and 3,
# so the gap spectrum is {-sqrt 3, 0, sqrt 3}
PT_SPECTRUM = np.array([-SQRT3, 0.0, SQRT3])


@pytest.fixture(scope="module")
def tanh2():
    return make_single_wall("tanh", 2.0)


class TestGrid:
    def test_nodes_symmetric_with_zero(self):
        g = Grid(20.0, 4001)
        assert g.spacing == pytest.approx(0.01)
        assert g.nodes[2000] == 0.0
        assert g.nodes[0] == -20.0 and g.nodes[-1] == 20.0
        assert g.refined(2).points == 16001

    @pytest.mark.parametrize("L, N", [(0.0, 11), (5.0, 10), (5.0, 1)])
    def test_rejects_bad_grids(self, L, N):
        with pytest.raises(InvalidParameter):
            Grid(L, N)

    @settings(max_examples=30, deadline=None)
    @given(st.floats(0.1, 50), st.integers(1, 2000))
    def test_midpoint_exactly_zero(self, L, m):
        g = Grid(L, 2 * m + 1)
        assert g.nodes[m] == 0.0
        assert np.allclose(g.nodes, -g.nodes[::-1], atol=0)

    def test_around_reaches_past_walls(self, mollifier):
        p = glue_walls(mollifier, 3, 4.0)
        g = Grid.around(p, 0.01, 20.0)
        assert g.half_length >= 8.0 + 1.0 + 20.0
        assert g.spacing <= 0.01 + 1e-15


class TestEigLow:
    def test_free_dirichlet_laplacian(self):
        n, h = 999, 0.02
        vals, vecs = eig_low(np.full(n, 2 / h**2), np.full(n - 1, -1 / h**2), 3)
        k = np.arange(1, 4)
        exact = 2 * (1 - np.cos(k * np.pi / (n + 1))) / h**2
        assert np.allclose(vals, exact, rtol=1e-10)
        assert np.allclose(np.linalg.norm(vecs, axis=0), 1.0)

    def test_matches_dense_solver(self):
        rng = np.random.default_rng(3)
        d, e = rng.normal(size=60), rng.normal(size=59)
        T = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
        assert np.allclose(eig_low(d, e, 5)[0], np.linalg.eigvalsh(T)[:5], atol=1e-12)

    def test_rejects_bad_shapes(self):
        with pytest.raises(InvalidParameter):
            eig_low(np.ones(4), np.ones(4), 1)
        with pytest.raises(InvalidParameter):
            eig_low(np.ones(4), np.ones(3), 5)


class TestWittenPair:
    def test_partner_levels(self, tanh2):
        w = build_witten_pair(tanh2, Grid(20.0, 4001))
        minus, plus = w.lowest(2)
        assert minus[0] >= -1e-4 and abs(minus[0]) <= 1e-4
        assert minus[1] == pytest.approx(3.0, abs=1e-4)
        assert plus[0] == pytest.approx(3.0, abs=1e-4)

    def test_nonnegative(self, mollifier):
        p = glue_walls(mollifier, 3, 3.0)
        minus, plus = build_witten_pair(p, Grid.around(p)).lowest(1)
        assert minus[0] >= -1e-4 and plus[0] >= -1e-4

    def test_constant_mass_floor(self):
        minus, plus = build_witten_pair(constant_mass(1.0), Grid(20.0, 4001)).lowest(1)
        assert minus[0] >= 1.0 and plus[0] >= 1.0

    def test_sgn_unsupported(self):
        with pytest.raises(UnsupportedProfile):
            build_witten_pair(make_single_wall("sgn"), Grid(10.0, 101))

    def test_squared_staggered_operator_is_witten(self, tanh2):
        # T^2 restricted to the node entries is a Witten Laplacian: same low levels
        op = StaggeredDirac(tanh2, Grid(12.0, 601))
        T = op.matrix().toarray()
        ev = np.linalg.eigvalsh(T @ T)
        assert ev[0] == pytest.approx(0.0, abs=1e-10)
        assert np.sum(np.abs(ev - 3.0) < 3e-3) == 2


class TestStaggered:
    def test_index_matches_wall_count_parity(self, mollifier):
        for n in range(1, 6):
            p = glue_walls(mollifier, n, 2.0)
            op = StaggeredDirac(p, Grid.around(p, 0.05))
            assert abs(op.index) == n % 2

    def test_kernel_vector(self, tanh2):
        op = StaggeredDirac(tanh2, Grid(20.0, 401))
        v = op.kernel_vector()
        assert np.linalg.norm(op.matvec(v)) <= 1e-12
        assert StaggeredDirac(glue_walls(make_single_wall("tanh"), 2, 2.0), Grid(20.0, 401)).kernel_vector() is None

    def test_sample_round_trip(self, tanh_wall):
        g = Grid(20.0, 2001)
        op = StaggeredDirac(tanh_wall, g)
        z = zero_mode(tanh_wall)
        back = op.to_spinor(op.sample(z))
        assert np.max(np.abs(back[:, 1:-1] - z(g.nodes)[:, 1:-1])) <= 1e-4


class TestDirectSpectrum:
    def test_poschl_teller_levels(self, tanh2):
        r = dirac_spectrum_in_gap(tanh2, Grid(20.0, 4001), refinements=2)
        assert r.count == 3
        assert np.max(np.abs(r.eigenvalues - PT_SPECTRUM)) <= 1e-10
        assert r.zero_count == 1

    def test_second_order_convergence(self, tanh2):
        errs = []
        for N in (2001, 4001, 8001):
            E = dirac_spectrum_in_gap(tanh2, Grid(20.0, N)).eigenvalues
            errs.append(abs(E[-1] - SQRT3))
        assert errs[1] / errs[0] == pytest.approx(0.25, abs=0.01)
        assert errs[2] / errs[1] == pytest.approx(0.25, abs=0.01)

    def test_domain_doubling(self, tanh2):
        a = dirac_spectrum_in_gap(tanh2, Grid(20.0, 4001), refinements=2).eigenvalues
        b = dirac_spectrum_in_gap(tanh2, Grid(40.0, 8001), refinements=2).eigenvalues
        assert np.max(np.abs(a - b)) < 1e-9

    def test_two_wall_doubling(self, mollifier):
        p = glue_walls(mollifier, 2, 3.0)
        g = Grid.around(p)
        a = dirac_spectrum_in_gap(p, g, refinements=2).eigenvalues
        b = dirac_spectrum_in_gap(p, Grid(2 * g.half_length, 2 * g.points - 1), refinements=2).eigenvalues
        assert np.max(np.abs(a - b)) < 1e-9

    def test_residuals_and_normalization(self, mollifier):
        p = glue_walls(mollifier, 3, 3.0)
        r = dirac_spectrum_in_gap(p, Grid.around(p))
        assert np.all(r.residuals <= 1e-12)
        for f in r.eigenfunctions:
            assert r.grid.spacing * np.sum(np.abs(f) ** 2) == pytest.approx(1.0, abs=1e-12)

    def test_constant_mass_has_empty_gap(self):
        assert dirac_spectrum_in_gap(constant_mass(1.0), Grid(20.0, 2001)).count == 0

    def test_sgn_walls_direct_and_shooting_agree(self):
        p = glue_walls(make_single_wall("sgn"), 2, 2.0)
        r = dirac_spectrum_in_gap(p, Grid.around(p), refinements=2)
        s = shooting_oracle(p)
        assert r.count == 2 == len(s)
        assert np.max(np.abs(r.eigenvalues - s)) <= 1e-6

    @settings(max_examples=10, deadline=None)
    @given(st.integers(1, 4), st.floats(1.5, 4.0))
    def test_spectrum_symmetric(self, n, d):
        p = glue_walls(make_single_wall("mollifier"), n, d)
        E = dirac_spectrum_in_gap(p, Grid.around(p, 0.02)).eigenvalues
        assert np.allclose(E, -E[::-1], atol=1e-14, rtol=0)
        assert np.sum(np.abs(E) < 1e-100) == n % 2

    def test_refinements_validated(self, tanh2):
        with pytest.raises(InvalidParameter):
            dirac_spectrum_in_gap(tanh2, Grid(5.0, 101), refinements=-1)


def test_richardson_removes_h2_and_h4():
    h = np.array([0.1, 0.05, 0.025])
    vals = 2.0 + 3 * h**2 - 7 * h**4
    assert richardson(list(vals)) == pytest.approx(2.0, abs=1e-13)


class TestShooting:
    def test_poschl_teller(self, tanh2):
        assert np.max(np.abs(shooting_oracle(tanh2) - PT_SPECTRUM)) <= 1e-8

    def test_tanh_pair_near_leading_order(self):
        # 2 (1/4) cosh(2)^-2 = 0.0353254; next order is O(e^-8)
        p = glue_walls(make_single_wall("tanh"), 2, 2.0)
        s = shooting_oracle(p)
        assert len(s) == 2
        assert np.max(np.abs(np.abs(s) - 0.035325412426582235)) <= math.exp(-8.0)

    def test_window_validation(self, tanh2):
        with pytest.raises(InvalidWindow):
            shooting_oracle(tanh2, (-2.5, 0.5))
        with pytest.raises(InvalidWindow):
            shooting_oracle(tanh2, (0.5, -0.5))


class TestEnergyEstimate:
    def test_constant_mass_ratio_at_least_mass(self):
        r = energy_estimate_check(constant_mass(1.0), K=0.5, trials=20, grid=Grid(20.0, 2001))
        assert r.min_ratio >= 1.0 - 1e-3
        assert r.passed

    def test_seeded_reproducible(self, mollifier):
        p = glue_walls(mollifier, 2, 3.0)
        from domainwall import shifted_modes

        m = shifted_modes(mollifier, 2, 3.0)
        a = energy_estimate_check(p, m, 0.5, 10, seed=7)
        b = energy_estimate_check(p, m, 0.5, 10, seed=7)
        assert np.array_equal(a.ratios, b.ratios)

    def test_rejects_bad_window(self, tanh2):
        with pytest.raises(InvalidParameter):
            energy_estimate_check(tanh2, K=3.0)


def test_single_wall_runtime(tanh_wall):
    t0 = time.perf_counter()
    dirac_spectrum_in_gap(tanh_wall, Grid(20.0, 4001))
    assert time.perf_counter() - t0 <= 5.0
