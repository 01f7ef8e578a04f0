import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import seeds
from timeless.embedding import (CompositeScenario, CompositeTooLargeError, DegenerateTickError,
                                DiscreteClock, build_history_vector, build_universe_density,
                                discrete_delta_S, discrete_reduced_state,
                                relative_state_at_tick, scenario_from_density, tick_probabilities)
from timeless.evolution import EvolutionWindow, evolve, time_average
from timeless.indicators import delta_S
from timeless.qstate import DensityMatrix, PureState, WeightError, linear_entropy, pure_density
from timeless.sampling import random_density, random_pure, random_spectrum
from timeless.spectra import EnergySpectrum

QUBIT = EnergySpectrum([0.0, 1.0])
PSI_02 = PureState([np.sqrt(0.2), np.sqrt(0.8)])


def pure_scenario(psi, spec, N, T):
    return CompositeScenario([1.0], (psi,), spec, DiscreteClock(N, T))


class TestClock:
    def test_midpoint_ticks(self):
        np.testing.assert_allclose(DiscreteClock(4, np.pi).ticks, np.pi * np.array([1, 3, 5, 7]) / 8)

    def test_invalid(self):
        with pytest.raises(ValueError):
            DiscreteClock(0, 1.0)
        with pytest.raises(ValueError):
            DiscreteClock(2.5, 1.0)


class TestHistoryVector:
    def test_single_tick_is_product(self):
        v = build_history_vector(PSI_02, QUBIT, DiscreteClock(1, 2.0)).amplitudes
        # one tick at t = 1: only global-relative phases between levels
        np.testing.assert_allclose(np.abs(v), np.abs(PSI_02.amplitudes), atol=1e-15)

    def test_eigenstate_factorizes(self):
        v = build_history_vector(PureState([0, 1]), QUBIT, DiscreteClock(5, 3.0)).amplitudes
        block = v.reshape(2, 5)
        assert np.all(block[0] == 0)
        np.testing.assert_allclose(np.abs(block[1]), 1 / np.sqrt(5), atol=1e-15)

    def test_tick_phase(self):
        v = build_history_vector(PureState([1 / np.sqrt(2), 1 / np.sqrt(2)]), QUBIT,
                                 DiscreteClock(4, np.pi)).amplitudes
        # amplitude on |1> (x) |2> at flat index 1*4 + 2, t_2 = 5 pi / 8
        assert v[6] == pytest.approx(np.exp(-1j * 5 * np.pi / 8) / np.sqrt(2) / 2, abs=1e-15)

    def test_conditional_vector_is_evolved(self, rng):
        spec = random_spectrum(rng, 3)
        psi = random_pure(rng, 3)
        clock = DiscreteClock(6, 2.0)
        block = build_history_vector(psi, spec, clock).amplitudes.reshape(3, 6)
        for k, t in enumerate(clock.ticks):
            cond = block[:, k] / np.linalg.norm(block[:, k])
            expected = np.exp(-1j * spec.levels * t) * psi.amplitudes
            np.testing.assert_allclose(cond, expected, atol=1e-14)

    def test_cap(self):
        with pytest.raises(CompositeTooLargeError):
            build_history_vector(PSI_02, QUBIT, DiscreteClock(2049, 1.0))
        with pytest.raises(CompositeTooLargeError):
            build_history_vector(PSI_02, QUBIT, DiscreteClock(20, 1.0), max_dim=32)


class TestUniverse:
    def test_single_tick_rank_one(self):
        rho = build_universe_density(pure_scenario(PSI_02, QUBIT, 1, 1.0))
        assert np.linalg.matrix_rank(rho.matrix) == 1
        assert linear_entropy(rho) <= 1e-15

    def test_stationary_mixture_is_separable(self):
        s = CompositeScenario([0.5, 0.5], (PureState([1, 0]), PureState([0, 1])), QUBIT,
                              DiscreteClock(8, 5.0))
        rho = build_universe_density(s)
        assert discrete_delta_S(rho, 2, 8) == pytest.approx(0.0, abs=1e-15)
        # separable: sum_n p_n |n><n| (x) |chi_n><chi_n| with chi_n the tick phases of level n
        ticks = DiscreteClock(8, 5.0).ticks
        expected = sum(0.5 * np.kron(np.diag(np.eye(2)[n]), np.outer(chi, chi.conj()))
                       for n, chi in enumerate(np.exp(-1j * np.outer([0.0, 1.0], ticks)) / np.sqrt(8)))
        np.testing.assert_allclose(rho.matrix, expected, atol=1e-15)

    def test_pure_global_state(self):
        rho = build_universe_density(pure_scenario(PSI_02, QUBIT, 256, 2.4))
        assert linear_entropy(rho) <= 1e-12
        assert rho.dim == 512
        assert DensityMatrix(rho.matrix).report.valid

    def test_bad_weights(self):
        with pytest.raises(WeightError):
            CompositeScenario([0.7, 0.7], (PSI_02, PSI_02), QUBIT, DiscreteClock(2, 1.0))

    def test_deterministic(self):
        s = scenario_from_density(random_density(np.random.default_rng(5), 3),
                                  random_spectrum(np.random.default_rng(6), 3), DiscreteClock(16, 2.0))
        a, b = build_universe_density(s).matrix, build_universe_density(s).matrix
        assert a.tobytes() == b.tobytes()


class TestRelativeStates:
    def test_single_tick(self):
        s = CompositeScenario([0.3, 0.7], (PureState([1, 0]), PureState([0, 1])), QUBIT,
                              DiscreteClock(1, 2.0))
        rel = relative_state_at_tick(build_universe_density(s), 0, 2, 1)
        np.testing.assert_allclose(rel.matrix, np.diag([0.3, 0.7]), atol=1e-15)

    def test_eigenstate_constant(self):
        rho = build_universe_density(pure_scenario(PureState([0, 1]), QUBIT, 5, 3.0))
        for k in range(5):
            np.testing.assert_allclose(relative_state_at_tick(rho, k, 2, 5).matrix, np.diag([0, 1]),
                                       atol=1e-15)

    @given(seeds, st.integers(1, 4), st.integers(1, 24), st.floats(0.0, 10.0))
    def test_match_evolve(self, seed, d, N, T):
        rng = np.random.default_rng(seed)
        sigma, spec = random_density(rng, d, int(rng.integers(1, d + 1))), random_spectrum(rng, d)
        clock = DiscreteClock(N, T)
        rho = build_universe_density(scenario_from_density(sigma, spec, clock))
        np.testing.assert_allclose(tick_probabilities(rho, d, N), 1 / N, atol=1e-14)
        s_global = linear_entropy(rho)
        for k, t in enumerate(clock.ticks):
            rel = relative_state_at_tick(rho, k, d, N)
            np.testing.assert_allclose(rel.matrix, evolve(sigma, spec, t).matrix, atol=1e-12)
            assert abs(linear_entropy(rel) - s_global) <= 5e-12

    def test_out_of_range(self):
        rho = build_universe_density(pure_scenario(PSI_02, QUBIT, 4, 1.0))
        with pytest.raises(IndexError):
            relative_state_at_tick(rho, 4, 2, 4)

    def test_empty_tick(self):
        rho = DensityMatrix(np.diag([1.0, 0.0, 0.0, 0.0]))
        with pytest.raises(DegenerateTickError):
            relative_state_at_tick(rho, 1, 2, 2)


class TestReducedState:
    def test_single_tick(self):
        rho = build_universe_density(pure_scenario(PSI_02, QUBIT, 1, 2.0))
        np.testing.assert_allclose(discrete_reduced_state(rho, 2, 1).matrix,
                                   evolve(pure_density(PSI_02), QUBIT, 1.0).matrix, atol=1e-15)

    def test_diagonal_scenario(self):
        s = CompositeScenario([0.25, 0.75], (PureState([1, 0]), PureState([0, 1])), QUBIT,
                              DiscreteClock(32, 9.0))
        np.testing.assert_allclose(discrete_reduced_state(build_universe_density(s), 2, 32).matrix,
                                   np.diag([0.25, 0.75]), atol=1e-15)

    def test_dirichlet_sum(self):
        # midpoint tick average of exp(i t) over [0, 2.4]: exp(i x) sin(x) / (N sin(x / N))
        sigma = pure_density(PSI_02)
        x = 1.2
        for N in (16, 256):
            rho = build_universe_density(pure_scenario(PSI_02, QUBIT, N, 2 * x))
            expected = 0.4 * np.exp(1j * x) * np.sin(x) / (N * np.sin(x / N))
            assert discrete_reduced_state(rho, 2, N).matrix[0, 1] == pytest.approx(expected, abs=1e-14)
        assert abs(time_average(sigma, QUBIT, EvolutionWindow(2 * x)).matrix[0, 1]) == pytest.approx(
            0.4 * np.sin(x) / x, abs=1e-15)

    def test_convergence_to_sinc(self):
        sigma = DensityMatrix([[0.2, 0.25], [0.25, 0.8]])
        exact = time_average(sigma, QUBIT, EvolutionWindow(2.4)).matrix
        errs = []
        for N in (128, 256):
            s = scenario_from_density(sigma, QUBIT, DiscreteClock(N, 2.4))
            red = discrete_reduced_state(build_universe_density(s), 2, N).matrix
            assert abs(red[0, 1]) == pytest.approx(0.194175, abs=1e-4)
            errs.append(np.max(np.abs(red - exact)))
        assert 3 <= errs[0] / errs[1] <= 5


class TestDiscreteDeltaS:
    def test_single_tick(self):
        rho = build_universe_density(pure_scenario(PSI_02, QUBIT, 1, 2.4))
        assert discrete_delta_S(rho, 2, 1) == pytest.approx(0.0, abs=1e-15)

    def test_pure_qubit_close_to_analytic(self):
        analytic = delta_S(pure_density(PSI_02), QUBIT, EvolutionWindow.from_x(1.2, 1.0))
        # 2 * 0.16 * (1 - sinc(1.2)^2), mpmath
        assert analytic == pytest.approx(0.126956253828750, abs=1e-14)
        rho = build_universe_density(pure_scenario(PSI_02, QUBIT, 256, 2.4))
        assert abs(discrete_delta_S(rho, 2, 256) - analytic) <= 2e-4

    @settings(max_examples=25)
    @given(seeds, st.integers(1, 4), st.floats(0.1, 6.0))
    def test_oracle_envelope(self, seed, d, T):
        rng = np.random.default_rng(seed)
        sigma, spec = random_density(rng, d, int(rng.integers(1, d + 1))), random_spectrum(rng, d)
        analytic = delta_S(sigma, spec, EvolutionWindow(T))
        gap = np.max(np.abs(spec.gaps)) if d > 1 else 0.0
        for N in (16, 64):
            rho = build_universe_density(scenario_from_density(sigma, spec, DiscreteClock(N, T)))
            disc = discrete_delta_S(rho, d, N)
            assert disc >= -1e-12
            # each kernel value is sinc(theta) scaled by u / sin(u), u = theta / N, so
            # | |k_N|^2 - |k|^2 | <= (u / sin u)^2 - 1 at the largest phase, times weights <= 1
            u = gap * T / 2 / N
            bound = (u / np.sin(u)) ** 2 - 1 if u > 0 else 0.0
            assert abs(disc - analytic) <= bound + 1e-12
