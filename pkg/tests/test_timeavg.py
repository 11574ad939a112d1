"""Cesaro time averages on cycles and the infinite-size closed forms."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given

from conftest import (
    FIGURE_STATE,
    TEST_STATES,
    ZERO_LOCALIZATION_STATE,
    qubit_states,
)
from triwalk import (
    QubitState,
    cycle_time_average,
    distribution,
    eigenvalue_groups,
    fourier_operator,
    infinite_time_average_component,
    infinite_time_average_total,
    initial_cycle_state,
    limit_component,
    momentum_blocks,
    step_cycle,
)

SQRT6 = math.sqrt(6.0)


class TestMomentumBlocks:
    def test_block_count_and_momenta(self):
        blocks = momentum_blocks(7)
        assert [b.mode for b in blocks] == list(range(-3, 4))
        for b in blocks:
            assert b.momentum == pytest.approx(2.0 * math.pi * b.mode / 7.0)

    def test_rejects_even_cycle(self):
        with pytest.raises(ValueError):
            momentum_blocks(8)

    def test_projectors_resolve_identity_and_operator(self):
        for block in momentum_blocks(9):
            total = sum(p for _, p in block.pairs)
            assert np.allclose(total, np.eye(3), atol=1e-13)
            rebuilt = sum(np.exp(1j * phase) * p for phase, p in block.pairs)
            assert np.allclose(rebuilt, block.operator, atol=1e-13)
            for _, p in block.pairs:
                assert np.allclose(p @ p, p, atol=1e-13)

    def test_mode_zero_pairs_are_rank_one_and_two(self):
        block = next(b for b in momentum_blocks(5) if b.mode == 0)
        phases = [phase for phase, _ in block.pairs]
        assert phases == [0.0, math.pi]
        ranks = [round(float(np.trace(p).real)) for _, p in block.pairs]
        assert ranks == [1, 2]
        # The mode-0 operator is the bare coin; its spectral form is
        # 2 P - I with P projecting on the uniform vector.
        p_stationary = block.pairs[0][1]
        assert np.allclose(
            2.0 * p_stationary - np.eye(3), fourier_operator(0.0), atol=1e-13
        )


class TestEigenvalueGroups:
    def test_group_structure(self):
        n_sites = 9
        groups = eigenvalue_groups(n_sites, FIGURE_STATE)
        assert len(groups) == n_sites + 1
        stationary = [g for g in groups if g.phase < 1e-9]
        assert len(stationary) == 1
        assert len(stationary[0].members) == n_sites
        flipped = [g for g in groups if abs(g.phase - math.pi) < 1e-9]
        assert sorted(flipped[0].members) == [(0, 2), (0, 3)]
        for g in groups:
            if g is stationary[0] or g is flipped[0]:
                continue
            modes = sorted(m for m, _ in g.members)
            assert modes[0] == -modes[1]

    def test_phases_sorted_and_distinct(self):
        groups = eigenvalue_groups(7, FIGURE_STATE)
        phases = [g.phase for g in groups]
        assert phases == sorted(phases)
        assert min(np.diff(phases)) > 1e-6


class TestCycleTimeAverage:
    def test_matches_brute_force_on_periodic_cycle(self):
        # On three sites every eigenphase is a multiple of pi/3, so the walk
        # is exactly periodic with period 6; a running average over whole
        # periods is the true Cesaro limit, not an approximation of it.
        q = QubitState(0.5, 0.5, 0.5 + 0.5j)
        state = initial_cycle_state(q, 3)
        steps = 600
        acc = 0.0
        for _ in range(steps):
            acc += distribution(state).total(0)
            state = step_cycle(state)
        brute = acc / steps
        assert cycle_time_average(3, q) == pytest.approx(brute, abs=1e-12)

    def test_against_figure_value(self):
        average = cycle_time_average(101, FIGURE_STATE)
        assert average == pytest.approx(0.2020410, abs=0.02)

    def test_zero_localization_state_scales_away(self):
        # The limit average is exactly zero; on a finite ring only the
        # O(1/N) residue survives.
        assert infinite_time_average_total(ZERO_LOCALIZATION_STATE) == 0.0
        assert cycle_time_average(101, ZERO_LOCALIZATION_STATE) < 0.02

    def test_averages_sum_to_one_over_sites(self):
        n_sites = 9
        total = sum(
            cycle_time_average(n_sites, FIGURE_STATE, site)
            for site in range(n_sites)
        )
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_gap_shrinks_like_one_over_n(self):
        limit = infinite_time_average_total(FIGURE_STATE)
        gaps = [
            abs(cycle_time_average(n, FIGURE_STATE) - limit)
            for n in (51, 101, 201)
        ]
        assert gaps[0] > gaps[1] > gaps[2]
        for n, gap in zip((51, 101, 201), gaps):
            assert n * gap < 5.0

    @given(qubit_states())
    def test_bounded(self, q):
        value = cycle_time_average(11, q)
        assert 0.0 <= value <= 1.0


class TestInfiniteAverage:
    def test_side_component_value(self):
        expected = (25.0 - 10.0 * SQRT6) / 6.0
        assert infinite_time_average_component(1, FIGURE_STATE) == pytest.approx(
            expected, abs=1e-12
        )
        assert infinite_time_average_component(1, FIGURE_STATE) == pytest.approx(
            0.0841838, abs=1e-7
        )

    def test_stayer_free_states_share_one_value(self):
        # Every state with vanishing middle amplitude lands on exactly
        # 2(5 - 2 sqrt 6), the dashed-line level of the origin trace.
        level = 2.0 * (5.0 - 2.0 * SQRT6)
        stayer_free = [
            FIGURE_STATE,
            QubitState(1.0, 0.0, 0.0),
            QubitState(0.6, 0.0, 0.8j),
            QubitState(1j / math.sqrt(2.0), 0.0, -1.0 / math.sqrt(2.0)),
        ]
        for q in stayer_free:
            assert infinite_time_average_total(q) == pytest.approx(level, abs=1e-14)

    def test_supremum_is_reached_by_uniform_state(self):
        # The closed form is (5 - 2 sqrt 6) (1 + q* M q) with M having top
        # eigenvalue 2 along (1, 1, 1); no state can exceed 3(5 - 2 sqrt 6).
        bound = 3.0 * (5.0 - 2.0 * SQRT6)
        uniform = QubitState(
            1.0 / math.sqrt(3.0), 1.0 / math.sqrt(3.0), 1.0 / math.sqrt(3.0)
        )
        assert infinite_time_average_total(uniform) == pytest.approx(bound, abs=1e-14)
        for q in TEST_STATES:
            assert infinite_time_average_total(q) <= bound + 1e-12

    def test_middle_component_vanishes_for_zero_sum_states(self):
        q = QubitState(1.0 / math.sqrt(2.0), 0.0, -1.0 / math.sqrt(2.0))
        assert infinite_time_average_component(2, q) == 0.0

    def test_rejects_bad_chirality(self):
        with pytest.raises(ValueError):
            infinite_time_average_component(4, FIGURE_STATE)

    @given(qubit_states())
    def test_total_is_sum_of_components(self, q):
        total = infinite_time_average_total(q)
        parts = sum(infinite_time_average_component(l, q) for l in (1, 2, 3))
        assert total == pytest.approx(parts, abs=1e-13)

    def test_equals_stationary_limit_at_origin(self):
        # The infinite-cycle time average at the starting site coincides with
        # the localized limit probability there, component by component.
        for q in TEST_STATES:
            for l in (1, 2, 3):
                assert infinite_time_average_component(l, q) == pytest.approx(
                    limit_component(0, l, q), abs=1e-14
                )
