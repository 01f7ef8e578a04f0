"""Conditional evolution in the energy eigenbasis and its time average.

Everything is computed entrywise from phases: sigma_nm(t) picks up
exp(-i (E_n - E_m) t / hbar), and the average over [0, T] multiplies each
element by exp(-i theta_nm) sinc(theta_nm) with theta_nm = (E_n - E_m) T / (2 hbar).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qstate import DensityMatrix, as_density
from .spectra import EnergySpectrum

SINC_SERIES_CUTOFF = 1e-4


def sinc(theta):
    """Unnormalized sinc, ``sin(x)/x``, with a series branch near zero."""
    x = np.asarray(theta, dtype=float)
    small = np.abs(x) < SINC_SERIES_CUTOFF
    safe = np.where(small, 1.0, x)
    x2 = x * x
    out = np.where(small, 1.0 - x2 / 6.0 + x2 * x2 / 120.0, np.sin(safe) / safe)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class EvolutionWindow:
    """Clock interval [0, T]."""

    T: float
    hbar: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.T) and self.T >= 0):
            raise ValueError(f"T must be finite and >= 0, got {self.T!r}")
        if not self.hbar > 0:
            raise ValueError(f"hbar must be positive, got {self.hbar!r}")

    @classmethod
    def from_x(cls, x: float, epsilon: float, hbar: float = 1.0) -> "EvolutionWindow":
        """Window with ``epsilon * T / (2 hbar) == x`` for a qubit splitting ``epsilon``."""
        if epsilon == 0:
            raise ValueError("x is undefined for a degenerate qubit")
        return cls(2.0 * hbar * x / abs(epsilon), hbar)

    def x(self, epsilon: float) -> float:
        return abs(epsilon) * self.T / (2.0 * self.hbar)

    def phases(self, spec: EnergySpectrum) -> np.ndarray:
        """``(E_n - E_m) T / (2 hbar)`` for every level pair."""
        if self.hbar != spec.hbar:
            raise ValueError(f"window hbar {self.hbar!r} != spectrum hbar {spec.hbar!r}")
        return spec.gaps * self.T / (2.0 * self.hbar)


def phase_factors(spec: EnergySpectrum, t: float) -> np.ndarray:
    f = np.exp(-1j * spec.gaps * (t / spec.hbar))
    f[spec.same_energy] = 1.0
    return f


def evolve(sigma0, spec: EnergySpectrum, t: float) -> DensityMatrix:
    """Relative state at clock time ``t``."""
    rho = as_density(sigma0)
    spec.check_dim(rho.dim)
    return DensityMatrix._trusted(rho.matrix * phase_factors(spec, t), rho.tol)


def averaging_kernel(spec: EnergySpectrum, window: EvolutionWindow) -> np.ndarray:
    """Elementwise multiplier mapping sigma(0) to its average over [0, T]."""
    theta = window.phases(spec)
    k = np.exp(-1j * theta) * sinc(theta)
    k[spec.same_energy] = 1.0
    return k


def time_average(sigma0, spec: EnergySpectrum, window: EvolutionWindow) -> DensityMatrix:
    """Average of ``evolve(sigma0, t)`` over ``t`` in ``[0, T]`` in closed form."""
    rho = as_density(sigma0)
    spec.check_dim(rho.dim)
    return DensityMatrix._trusted(rho.matrix * averaging_kernel(spec, window), rho.tol)


def von_neumann_rhs(sigma, spec: EnergySpectrum) -> np.ndarray:
    """``[H, sigma] / (i hbar)``."""
    rho = as_density(sigma)
    spec.check_dim(rho.dim)
    h = spec.hamiltonian
    return (h @ rho.matrix - rho.matrix @ h) / (1j * spec.hbar)


def von_neumann_residual(sigma0, spec: EnergySpectrum, t: float, dt: float) -> float:
    """Frobenius norm of central-difference d(sigma)/dt minus the commutator term."""
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    rho = as_density(sigma0)
    fwd = evolve(rho, spec, t + dt).matrix
    bwd = evolve(rho, spec, t - dt).matrix
    deriv = (fwd - bwd) / (2.0 * dt)
    return float(np.linalg.norm(deriv - von_neumann_rhs(evolve(rho, spec, t), spec)))
