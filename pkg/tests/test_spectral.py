"""Momentum-space decomposition: dispersion, eigenvectors, quadrature, kernels."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import FIGURE_STATE, TEST_STATES, ZERO_LOCALIZATION_STATE
from triwalk import (
    QuadratureGrid,
    QubitState,
    SingularMomentumError,
    coin_matrix,
    dispersion,
    eigensystem,
    evolve_line,
    fourier_operator,
    j_kernel,
    k_kernel,
    limit_amplitude,
    oscillatory_kernels,
    oscillatory_remainder,
    remainder_matrix,
    stationary_component_integral,
    wavefunction,
)

GRID = QuadratureGrid(4096)


class TestDispersion:
    def test_at_pi(self):
        point = dispersion(math.pi)
        assert point.cos_theta == pytest.approx(-1.0 / 3.0, abs=1e-15)
        assert point.sin_theta == pytest.approx(2.0 * math.sqrt(2.0) / 3.0, abs=1e-15)

    def test_at_zero(self):
        point = dispersion(0.0)
        assert point.cos_theta == -1.0
        assert point.sin_theta == 0.0
        assert point.theta == pytest.approx(math.pi, abs=1e-15)

    @given(st.floats(min_value=-10.0, max_value=10.0))
    def test_point_lies_on_unit_circle(self, k):
        point = dispersion(k)
        assert point.cos_theta**2 + point.sin_theta**2 == pytest.approx(
            1.0, abs=1e-12
        )
        assert point.sin_theta >= 0.0
        assert 0.0 < point.theta <= math.pi

    @given(st.floats(min_value=-3.0, max_value=3.0))
    def test_periodicity(self, k):
        a = dispersion(k)
        b = dispersion(k + 2.0 * math.pi)
        assert a.cos_theta == pytest.approx(b.cos_theta, abs=1e-12)
        assert a.theta == pytest.approx(b.theta, abs=1e-12)


class TestFourierOperator:
    def test_momentum_zero_is_coin(self):
        assert np.allclose(fourier_operator(0.0), coin_matrix(), atol=1e-15)

    @given(st.floats(min_value=-math.pi, max_value=math.pi))
    def test_unitary(self, k):
        u = fourier_operator(k)
        assert np.allclose(u @ u.conj().T, np.eye(3), atol=1e-14)

    def test_eigenphases_match_numeric_solver(self):
        # numpy's general eigensolver serves as an independent oracle here.
        k = math.pi / 2.0
        numeric = np.sort(np.angle(np.linalg.eigvals(fourier_operator(k))))
        point = dispersion(k)
        closed = np.sort([0.0, point.theta, -point.theta])
        assert np.allclose(numeric, closed, atol=1e-12)


class TestEigenSystem:
    def test_rejects_singular_momentum(self):
        for k in (0.0, 2.0 * math.pi, -4.0 * math.pi):
            with pytest.raises(SingularMomentumError):
                eigensystem(k)

    def test_phases_are_zero_and_dispersion_pair(self):
        system = eigensystem(1.3)
        theta = dispersion(1.3).theta
        assert system.phases == (0.0, theta, -theta)

    def test_matches_numeric_eigenvector(self):
        k = math.pi / 2.0
        system = eigensystem(k)
        values, vecs = np.linalg.eig(fourier_operator(k))
        idx = int(np.argmin(np.abs(values - 1.0)))
        numeric = vecs[:, idx]
        mine = system.vectors[0].as_array()
        # Agreement up to a global phase.
        assert abs(np.vdot(numeric, mine)) == pytest.approx(1.0, abs=1e-10)

    def test_orthonormal_and_eigen_residual_over_grid(self):
        worst_gram = 0.0
        worst_residual = 0.0
        for k in QuadratureGrid(1024).nodes():
            system = eigensystem(k)
            v = np.array([vec.as_array() for vec in system.vectors])
            gram = v.conj() @ v.T
            worst_gram = max(worst_gram, np.max(np.abs(gram - np.eye(3))))
            u = fourier_operator(k)
            for phase, vec in zip(system.phases, v):
                residual = np.max(np.abs(u @ vec - np.exp(1j * phase) * vec))
                worst_residual = max(worst_residual, residual)
        assert worst_gram < 1e-12
        assert worst_residual < 1e-12

    def test_stationary_vector_smooth_through_pi(self):
        # k = pi is a removable singularity of the component formula; the
        # half-angle evaluation must sail through without precision loss.
        near = eigensystem(math.pi - 1e-9).vectors[0].as_array()
        at = eigensystem(math.pi).vectors[0].as_array()
        assert np.allclose(near, at, atol=1e-7)
        assert np.linalg.norm(at) == pytest.approx(1.0, abs=1e-14)


class TestQuadratureGrid:
    def test_rejects_odd_or_tiny(self):
        with pytest.raises(ValueError):
            QuadratureGrid(511)
        with pytest.raises(ValueError):
            QuadratureGrid(0)

    def test_nodes_are_interior_midpoints(self):
        grid = QuadratureGrid(8)
        nodes = grid.nodes()
        assert len(nodes) == 8
        assert nodes[0] == pytest.approx(-math.pi + math.pi / 8.0)
        spacing = np.diff(nodes)
        assert np.allclose(spacing, 2.0 * math.pi / 8.0, atol=1e-15)
        assert np.all(np.abs(nodes) > 1e-12)
        assert np.all(np.abs(nodes) < math.pi)


class TestWavefunction:
    def test_time_zero_recovers_point_mass(self):
        psi = wavefunction(0, 0, FIGURE_STATE, GRID)
        assert np.allclose(psi.as_array(), FIGURE_STATE.as_array(), atol=1e-13)
        assert np.max(np.abs(wavefunction(5, 0, FIGURE_STATE, GRID).as_array())) < 1e-13

    def test_matches_direct_evolution(self):
        for q in TEST_STATES[:5]:
            direct = evolve_line(q, 9)
            for n in (-9, -4, 0, 3, 9):
                psi = wavefunction(n, 9, q, GRID)
                assert np.allclose(
                    psi.as_array(), direct.amplitude(n).as_array(), atol=1e-12
                )

    def test_matches_direct_evolution_long_run(self):
        direct = evolve_line(FIGURE_STATE, 200)
        for n in (-150, -37, 0, 1, 42, 199):
            psi = wavefunction(n, 200, FIGURE_STATE)
            assert np.allclose(
                psi.as_array(), direct.amplitude(n).as_array(), atol=1e-12
            )

    def test_rejects_small_grid_and_negative_time(self):
        with pytest.raises(ValueError):
            wavefunction(0, 1, FIGURE_STATE, QuadratureGrid(128))
        with pytest.raises(ValueError):
            wavefunction(0, -1, FIGURE_STATE, GRID)


class TestStationaryIntegral:
    def test_middle_component_value(self):
        value = stationary_component_integral(0, 2, FIGURE_STATE, GRID)
        assert abs(value) ** 2 == pytest.approx(0.0336735, abs=1e-6)

    def test_matches_closed_form(self):
        for q in (FIGURE_STATE, TEST_STATES[7], TEST_STATES[10]):
            for n in range(-10, 11):
                for l in (1, 2, 3):
                    integral = stationary_component_integral(n, l, q, GRID)
                    closed = limit_amplitude(n, l, q)
                    assert integral == pytest.approx(closed, abs=1e-8)

    def test_vanishes_for_zero_localization_state(self):
        for n in range(-5, 6):
            for l in (1, 2, 3):
                value = stationary_component_integral(
                    n, l, ZERO_LOCALIZATION_STATE, GRID
                )
                assert abs(value) < 1e-8

    def test_rejects_bad_chirality(self):
        with pytest.raises(ValueError):
            stationary_component_integral(0, 4, FIGURE_STATE, GRID)


class TestOscillatoryKernels:
    def test_time_free_value_at_origin(self):
        assert j_kernel(0, 0) == pytest.approx(1.0 / (2.0 * math.sqrt(6.0)), abs=1e-12)

    def test_k_kernel_vanishes_at_time_zero(self):
        # sin(theta * 0) = 0 pointwise.
        assert k_kernel(0, 0) == 0.0
        assert k_kernel(3, 0) == 0.0

    def test_j_kernel_bounded_by_quarter(self):
        # |integrand| <= 1/(5 + cos k) <= 1/4.
        for n, t in ((0, 0), (1, 7), (5, 33), (0, 1000)):
            assert abs(j_kernel(n, t)) <= 0.25

    def test_j_kernel_decays(self):
        values = [abs(j_kernel(0, t)) for t in (10, 100, 1000)]
        assert values[2] < values[1] < values[0]

    def test_k_difference_decays_from_early_times(self):
        early = abs(k_kernel(0, 10) - k_kernel(1, 10))
        late = abs(k_kernel(0, 1000) - k_kernel(1, 1000))
        assert late < early

    def test_kernels_pair(self):
        pair = oscillatory_kernels(2, 5, GRID)
        assert pair.j_value == j_kernel(2, 5, GRID)
        assert pair.k_value == k_kernel(2, 5, GRID)

    def test_grid_independence(self):
        coarse = j_kernel(0, 50, QuadratureGrid(4096))
        fine = j_kernel(0, 50, QuadratureGrid(16384))
        assert coarse == pytest.approx(fine, abs=1e-12)


class TestRemainder:
    def test_structural_identities(self):
        m = remainder_matrix(3, 17, GRID).entries
        assert m[1, 1] == pytest.approx(4.0 * j_kernel(3, 17, GRID), abs=1e-15)
        assert m[0, 2] == pytest.approx(-2.0 * j_kernel(4, 17, GRID), abs=1e-15)
        assert m[2, 0] == pytest.approx(-2.0 * j_kernel(2, 17, GRID), abs=1e-15)
        assert np.max(np.abs(m.imag)) == 0.0

    def test_reconstructs_wavefunction(self):
        for q in (FIGURE_STATE, TEST_STATES[8]):
            for t in (0, 1, 5, 12):
                for n in range(-t - 2, t + 3):
                    psi = wavefunction(n, t, q, GRID).as_array()
                    stationary = np.array(
                        [limit_amplitude(n, l, q) for l in (1, 2, 3)]
                    )
                    moving = oscillatory_remainder(n, t, q, GRID).as_array()
                    assert np.allclose(psi, stationary + moving, atol=1e-12)

    def test_remainder_decays_at_origin(self):
        early = np.linalg.norm(
            oscillatory_remainder(0, 10, FIGURE_STATE).as_array()
        )
        late = np.linalg.norm(
            oscillatory_remainder(0, 1000, FIGURE_STATE).as_array()
        )
        assert late < early / 3.0

    def test_time_zero_remainder_completes_point_mass(self):
        # At t = 0 the stationary part plus the remainder must equal the
        # initial condition: q at the origin, zero elsewhere.
        q = QubitState(1.0, 0.0, 0.0)
        stationary = np.array([limit_amplitude(0, l, q) for l in (1, 2, 3)])
        moving = oscillatory_remainder(0, 0, q, GRID).as_array()
        assert np.allclose(stationary + moving, q.as_array(), atol=1e-12)
        off_site = np.array(
            [limit_amplitude(4, l, q) for l in (1, 2, 3)]
        ) + oscillatory_remainder(4, 0, q, GRID).as_array()
        assert np.max(np.abs(off_site)) < 1e-12
