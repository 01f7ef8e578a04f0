"""Explicit system + clock composite built on a discrete clock.

Each pure history is ``(1/sqrt(N)) sum_k U(t_k)|phi_0> (x) |k>`` with midpoint
ticks ``t_k = (k + 1/2) T / N``.  Every quantity here is obtained from raw
operations on the composite matrix, so it serves as an oracle for the
closed forms in :mod:`timeless.evolution` and :mod:`timeless.indicators`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .jacobi import jacobi_diagonalize
from .qstate import (DEFAULT_TOL, DensityMatrix, DimensionError, PureState,
                     WeightError, linear_entropy, partial_trace_over_clock)
from .spectra import EnergySpectrum

MAX_COMPOSITE_DIM = 4096


class CompositeTooLargeError(ValueError):
    """Composite dimension d * N exceeds the configured cap."""


class DegenerateTickError(ValueError):
    """Clock tick carries zero probability in the composite state."""


@dataclass(frozen=True)
class DiscreteClock:
    N: int
    T: float

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"tick count must be a positive integer, got {self.N!r}")
        if not (np.isfinite(self.T) and self.T >= 0):
            raise ValueError(f"T must be finite and >= 0, got {self.T!r}")

    @property
    def ticks(self) -> np.ndarray:
        return (np.arange(self.N) + 0.5) * (self.T / self.N)


@dataclass(frozen=True, eq=False)
class CompositeScenario:
    weights: np.ndarray
    initial_states: tuple[PureState, ...]
    spec: EnergySpectrum
    clock: DiscreteClock
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).reshape(-1)
        states = tuple(s if isinstance(s, PureState) else PureState(s)
                       for s in self.initial_states)
        if w.size != len(states) or w.size == 0:
            raise WeightError(f"{w.size} weights for {len(states)} initial states")
        if np.any(w < -self.tol) or abs(w.sum() - 1.0) > self.tol:
            raise WeightError(f"weights must be nonnegative and sum to 1 (sum = {w.sum()!r})")
        for s in states:
            self.spec.check_dim(s.dim)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "initial_states", states)

    @property
    def dim(self) -> int:
        return self.spec.dim

    @property
    def composite_dim(self) -> int:
        return self.spec.dim * self.clock.N

    def initial_mixture(self) -> DensityMatrix:
        m = sum(p * np.outer(s.amplitudes, s.amplitudes.conj())
                for p, s in zip(self.weights, self.initial_states))
        return DensityMatrix(m, self.tol)


def _check_cap(composite_dim: int, max_dim: int) -> None:
    if composite_dim > max_dim:
        raise CompositeTooLargeError(
            f"composite dimension {composite_dim} exceeds the cap of {max_dim}")


def build_history_vector(phi0: PureState, spec: EnergySpectrum, clock: DiscreteClock,
                         max_dim: int = MAX_COMPOSITE_DIM) -> PureState:
    if not isinstance(phi0, PureState):
        phi0 = PureState(phi0)
    spec.check_dim(phi0.dim)
    _check_cap(spec.dim * clock.N, max_dim)
    # amplitude[n, k] = c_n exp(-i E_n t_k / hbar) / sqrt(N)
    phases = np.exp(-1j * np.outer(spec.levels, clock.ticks) / spec.hbar)
    amps = phi0.amplitudes[:, None] * phases / np.sqrt(clock.N)
    return PureState(amps.reshape(-1), phi0.tol)


def build_universe_density(scenario: CompositeScenario,
                           max_dim: int = MAX_COMPOSITE_DIM) -> DensityMatrix:
    """``sum_j p_j |Psi_j><Psi_j|`` over the scenario's histories."""
    _check_cap(scenario.composite_dim, max_dim)
    dim = scenario.composite_dim
    rho = np.zeros((dim, dim), dtype=complex)
    # fixed summation order keeps the result bitwise reproducible
    for p, phi in zip(scenario.weights, scenario.initial_states):
        if p == 0:
            continue
        v = build_history_vector(phi, scenario.spec, scenario.clock, max_dim).amplitudes
        rho += p * np.outer(v, v.conj())
    return DensityMatrix._trusted(rho, scenario.tol)


def _blocks(rho_u: DensityMatrix, d: int, N: int) -> np.ndarray:
    if d < 1 or N < 1 or rho_u.dim != d * N:
        raise DimensionError(f"composite dim {rho_u.dim} != {d} (system) x {N} (clock)")
    return rho_u.matrix.reshape(d, N, d, N)


def relative_state_at_tick(rho_u: DensityMatrix, k: int, d: int, N: int,
                           tol: float = 1e-14) -> DensityMatrix:
    """System state conditioned on the clock reading tick ``k``."""
    if not 0 <= k < N:
        raise IndexError(f"tick {k} outside 0..{N - 1}")
    block = _blocks(rho_u, d, N)[:, k, :, k]
    prob = float(np.trace(block).real)
    if prob <= tol:
        raise DegenerateTickError(f"tick {k} has conditional probability {prob!r}")
    return DensityMatrix(block / prob, rho_u.tol)


def tick_probabilities(rho_u: DensityMatrix, d: int, N: int) -> np.ndarray:
    return np.real(np.einsum("akak->k", _blocks(rho_u, d, N)))


def discrete_reduced_state(rho_u: DensityMatrix, d: int, N: int) -> DensityMatrix:
    return partial_trace_over_clock(rho_u, d, N)


def discrete_delta_S(rho_u: DensityMatrix, d: int, N: int) -> float:
    """``S_L[Tr_C rho_U] - S_L[rho_U]`` from the raw composite."""
    return linear_entropy(discrete_reduced_state(rho_u, d, N)) - linear_entropy(rho_u)


def scenario_from_density(sigma0, spec: EnergySpectrum, clock: DiscreteClock,
                          tol: float = DEFAULT_TOL) -> CompositeScenario:
    """Scenario whose seeds are the eigenvectors of ``sigma0`` (mutually orthogonal)."""
    m = np.asarray(sigma0.matrix if isinstance(sigma0, DensityMatrix) else sigma0, dtype=complex)
    w, v = jacobi_diagonalize(m)
    w = np.clip(w, 0.0, None)
    keep = w > 0
    w = w[keep] / w[keep].sum()
    seeds: Sequence[PureState] = [PureState.normalized(v[:, i], tol)
                                  for i in np.flatnonzero(keep)]
    return CompositeScenario(w, tuple(seeds), spec, clock, tol)
