"""Energy spectra, degeneracy groups, energy projectors and the dephasing channel.

States handed to this module are expressed in the energy eigenbasis of the
system Hamiltonian, which is ``diag(levels)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .jacobi import ConvergenceError, SymmetryError, jacobi_diagonalize
from .qstate import (DensityMatrix, DimensionError, as_density,
                     distribution_linear_entropy, linear_entropy)

__all__ = [
    "ConvergenceError", "SymmetryError", "ZeroProbabilityError", "EnergySpectrum",
    "LevelGroup", "LevelGroups", "EnergyDistribution", "group_levels", "projector",
    "energy_distribution", "dephase", "collapsed_state",
    "measurement_entropy_decomposition", "energy_dispersion", "quantum_dispersion",
    "jacobi_diagonalize", "spectrum_from_hamiltonian",
]

DEFAULT_GROUP_TOL = 1e-9


class ZeroProbabilityError(ValueError):
    """Requested measurement branch has (numerically) zero probability."""


@dataclass(frozen=True, eq=False)
class EnergySpectrum:
    levels: np.ndarray
    hbar: float = 1.0
    group_tol: float = DEFAULT_GROUP_TOL

    def __post_init__(self):
        e = np.array(self.levels, dtype=float).reshape(-1)
        if e.size == 0 or not np.all(np.isfinite(e)):
            raise ValueError("levels must be a non-empty vector of finite reals")
        if not self.hbar > 0:
            raise ValueError(f"hbar must be positive, got {self.hbar!r}")
        if not self.group_tol > 0:
            raise ValueError(f"group_tol must be positive, got {self.group_tol!r}")
        e.setflags(write=False)
        object.__setattr__(self, "levels", e)

    @property
    def dim(self) -> int:
        return self.levels.size

    @property
    def hamiltonian(self) -> np.ndarray:
        return np.diag(self.levels).astype(complex)

    @property
    def gaps(self) -> np.ndarray:
        """Matrix of ``E_n - E_m``."""
        return self.levels[:, None] - self.levels[None, :]

    @property
    def omega(self) -> np.ndarray:
        """Transition frequencies ``|E_n - E_m| / hbar``, zeroed within a group."""
        w = np.abs(self.gaps) / self.hbar
        w[self.same_energy] = 0.0
        return w

    @cached_property
    def groups(self) -> "LevelGroups":
        return group_levels(self)

    @cached_property
    def same_energy(self) -> np.ndarray:
        """Boolean mask, True where levels n and m share a degeneracy group."""
        label = np.empty(self.dim, dtype=int)
        for i, g in enumerate(self.groups.groups):
            label[list(g.indices)] = i
        mask = label[:, None] == label[None, :]
        mask.setflags(write=False)
        return mask

    def check_dim(self, d: int) -> None:
        if d != self.dim:
            raise DimensionError(f"state dimension {d} != spectrum dimension {self.dim}")


@dataclass(frozen=True)
class LevelGroup:
    energy: float
    indices: tuple[int, ...]


@dataclass(frozen=True)
class LevelGroups:
    groups: tuple[LevelGroup, ...]
    dim: int
    tol: float

    @property
    def energies(self) -> list[float]:
        return [g.energy for g in self.groups]

    def find(self, energy: float) -> LevelGroup:
        for g in self.groups:
            if abs(g.energy - energy) <= self.tol:
                return g
        raise KeyError(f"no energy level group at E = {energy!r}")


def group_levels(spec: EnergySpectrum) -> LevelGroups:
    """Single-linkage grouping of sorted levels with threshold ``group_tol``.

    The representative energy of a group is its smallest member.
    """
    order = np.argsort(spec.levels, kind="stable")
    groups: list[list[int]] = []
    for idx in order:
        if groups and spec.levels[idx] - spec.levels[groups[-1][-1]] <= spec.group_tol:
            groups[-1].append(int(idx))
        else:
            groups.append([int(idx)])
    return LevelGroups(
        tuple(LevelGroup(float(spec.levels[g[0]]), tuple(sorted(g))) for g in groups),
        spec.dim, spec.group_tol)


def projector(groups: LevelGroups, energy: float) -> np.ndarray:
    """Projector onto the eigenspace of ``energy``; raises KeyError if unknown."""
    g = groups.find(energy)
    p = np.zeros((groups.dim, groups.dim), dtype=complex)
    p[g.indices, g.indices] = 1.0
    return p


@dataclass(frozen=True)
class EnergyDistribution:
    entries: tuple[tuple[float, float], ...]

    @property
    def energies(self) -> np.ndarray:
        return np.array([e for e, _ in self.entries])

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([p for _, p in self.entries])

    def as_dict(self) -> dict[float, float]:
        return dict(self.entries)

    @property
    def linear_entropy(self) -> float:
        return distribution_linear_entropy(self.probabilities)


def energy_distribution(sigma, spec: EnergySpectrum) -> EnergyDistribution:
    rho = as_density(sigma)
    spec.check_dim(rho.dim)
    diag = np.real(np.diag(rho.matrix))
    return EnergyDistribution(tuple(
        (g.energy, float(np.sum(diag[list(g.indices)]))) for g in spec.groups.groups))


def dephase(sigma, spec: EnergySpectrum) -> DensityMatrix:
    """Non-selective energy measurement ``sum_E P_E sigma P_E``."""
    rho = as_density(sigma)
    spec.check_dim(rho.dim)
    return DensityMatrix._trusted(np.where(spec.same_energy, rho.matrix, 0.0), rho.tol)


def collapsed_state(sigma, spec: EnergySpectrum, energy: float, tol: float = 1e-12):
    """Post-measurement state for outcome ``energy`` and its probability."""
    rho = as_density(sigma)
    spec.check_dim(rho.dim)
    p_e = projector(spec.groups, energy)
    block = p_e @ rho.matrix @ p_e
    prob = float(np.trace(block).real)
    if prob <= tol:
        raise ZeroProbabilityError(f"outcome E = {energy!r} has probability {prob!r}")
    return DensityMatrix._trusted(block / prob, rho.tol), prob


def measurement_entropy_decomposition(sigma, spec: EnergySpectrum, tol: float = 1e-12):
    """Split ``S_L`` of the dephased state into spread and conditional parts.

    Returns ``(total, spread, conditional)`` where ``total = S_L[dephase(sigma)]``,
    ``spread = 1 - sum p_E^2`` and ``conditional = sum p_E^2 S_L[sigma|E]``.
    """
    rho = as_density(sigma)
    total = linear_entropy(dephase(rho, spec))
    dist = energy_distribution(rho, spec)
    conditional = 0.0
    for energy, prob in dist.entries:
        if prob <= tol:
            continue
        state, _ = collapsed_state(rho, spec, energy, tol)
        conditional += prob * prob * linear_entropy(state)
    return total, dist.linear_entropy, conditional


def energy_dispersion(sigma, spec: EnergySpectrum) -> float:
    """Energy variance ``<H^2> - <H>^2``."""
    rho = as_density(sigma)
    spec.check_dim(rho.dim)
    pops = np.real(np.diag(rho.matrix))
    mean = float(pops @ spec.levels)
    return max(float(pops @ spec.levels ** 2) - mean * mean, 0.0)


def quantum_dispersion(sigma, spec: EnergySpectrum) -> float:
    """``-Tr([H, sigma]^2) = sum_nm |sigma_nm|^2 (E_n - E_m)^2``."""
    rho = as_density(sigma)
    spec.check_dim(rho.dim)
    return float(np.sum(np.abs(rho.matrix) ** 2 * spec.gaps ** 2))


def spectrum_from_hamiltonian(h, hbar: float = 1.0, group_tol: float = DEFAULT_GROUP_TOL):
    """Diagonalize a dense Hermitian Hamiltonian.

    Returns ``(spectrum, V)``; a state ``rho`` in the original basis becomes
    ``V^H rho V`` in the working eigenbasis.
    """
    w, v = jacobi_diagonalize(h)
    return EnergySpectrum(w, hbar, group_tol), v
