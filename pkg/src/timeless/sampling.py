"""Random states and spectra for property checks and randomized verification."""

from __future__ import annotations

import numpy as np

from .qstate import DensityMatrix, PureState
from .spectra import EnergySpectrum


def random_pure(rng: np.random.Generator, d: int) -> PureState:
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return PureState.normalized(v)


def random_density(rng: np.random.Generator, d: int, rank: int | None = None) -> DensityMatrix:
    """Random mixed state ``G G^H / Tr(G G^H)`` with ``G`` complex Gaussian (d x rank)."""
    rank = d if rank is None else rank
    g = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    m = g @ g.conj().T
    m = 0.5 * (m + m.conj().T)
    return DensityMatrix(m / np.trace(m).real)


def random_spectrum(rng: np.random.Generator, d: int, degenerate: bool = True,
                    hbar: float = 1.0) -> EnergySpectrum:
    """Levels drawn from a few integer-spaced values, so degeneracies are common.

    Distinct levels are at least 0.25 apart, far above the grouping tolerance.
    """
    if degenerate:
        n_distinct = int(rng.integers(1, d + 1))
        values = np.sort(rng.choice(np.arange(-8, 9), size=n_distinct, replace=False)) * 0.25
        levels = rng.choice(values, size=d)
    else:
        levels = np.sort(rng.choice(np.arange(-16, 17), size=d, replace=False)) * 0.25
    return EnergySpectrum(levels, hbar)
