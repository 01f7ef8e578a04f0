"""Dense density matrices, pure states, linear entropy, mixing and partial trace.

Composite (system + clock) matrices use system-major ordering: the basis
vector |n> (x) |k> sits at flat index ``n * N + k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .jacobi import jacobi_diagonalize

DEFAULT_TOL = 1e-9
JACOBI_MAX_DIM = 64


class DimensionError(ValueError):
    """Shapes or dimensions do not fit together."""


class ValidationError(ValueError):
    """A matrix failed density-matrix validation."""


class NormalizationError(ValueError):
    """A state vector is not normalized."""


class WeightError(ValueError):
    """Mixing weights are not a probability vector."""


@dataclass(frozen=True)
class ValidationReport:
    hermiticity: float
    trace: float
    min_eigenvalue: float
    tol: float

    @property
    def valid(self) -> bool:
        return (self.hermiticity <= self.tol and self.trace <= self.tol
                and self.min_eigenvalue >= -self.tol)

    def describe(self) -> str:
        return (f"hermiticity residual {self.hermiticity:.3e}, trace residual "
                f"{self.trace:.3e}, min eigenvalue {self.min_eigenvalue:.3e} (tol {self.tol:g})")


def _square(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DimensionError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError("matrix has non-finite entries")
    return a


def hermitian_eigvalsh(m: np.ndarray) -> np.ndarray:
    """Eigenvalues of the Hermitian part of ``m`` (Jacobi up to 64x64, LAPACK above)."""
    h = 0.5 * (m + m.conj().T)
    if h.shape[0] <= JACOBI_MAX_DIM:
        return jacobi_diagonalize(h)[0]
    return np.linalg.eigvalsh(h)


def validate_density(m, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Check Hermiticity, unit trace and positivity of ``m``."""
    a = _square(m)
    herm = float(np.max(np.abs(a - a.conj().T)))
    trace = float(abs(np.trace(a) - 1.0))
    min_eig = float(hermitian_eigvalsh(a)[0])
    return ValidationReport(herm, trace, min_eig, tol)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated, immutable density matrix.

    Construction raises :class:`ValidationError` unless the matrix is
    Hermitian, has unit trace and is positive semidefinite within ``tol``.
    """

    matrix: np.ndarray
    tol: float = DEFAULT_TOL
    report: ValidationReport | None = field(default=None, repr=False)

    def __post_init__(self):
        a = _square(self.matrix).copy()
        report = validate_density(a, self.tol)
        if not report.valid:
            raise ValidationError(f"not a valid density matrix: {report.describe()}")
        a.setflags(write=False)
        object.__setattr__(self, "matrix", a)
        object.__setattr__(self, "report", report)

    @classmethod
    def _trusted(cls, matrix: np.ndarray, tol: float = DEFAULT_TOL) -> "DensityMatrix":
        # PSD by construction (convex sums of projectors, unitary conjugation,
        # partial traces); skips the eigenvalue check.
        a = np.array(matrix, dtype=complex)
        a.setflags(write=False)
        obj = object.__new__(cls)
        object.__setattr__(obj, "matrix", a)
        object.__setattr__(obj, "tol", tol)
        object.__setattr__(obj, "report", None)
        return obj

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def purity(self) -> float:
        return float(np.sum(np.abs(self.matrix) ** 2))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


def as_density(state, tol: float = DEFAULT_TOL) -> DensityMatrix:
    if isinstance(state, DensityMatrix):
        return state
    return DensityMatrix(np.asarray(state, dtype=complex), tol)


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        psi = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if psi.size == 0:
            raise DimensionError("empty state vector")
        norm = float(np.vdot(psi, psi).real)
        if abs(norm - 1.0) > self.tol:
            raise NormalizationError(f"state norm^2 is {norm!r}, expected 1")
        psi.setflags(write=False)
        object.__setattr__(self, "amplitudes", psi)

    @classmethod
    def normalized(cls, amplitudes, tol: float = DEFAULT_TOL) -> "PureState":
        psi = np.asarray(amplitudes, dtype=complex).reshape(-1)
        return cls(psi / np.linalg.norm(psi), tol)

    @property
    def dim(self) -> int:
        return self.amplitudes.size


def linear_entropy(state) -> float:
    """``1 - Tr rho^2``, computed as ``1 - sum |rho_ij|^2``."""
    rho = as_density(state)
    return 1.0 - rho.purity


def distribution_linear_entropy(probabilities) -> float:
    p = np.asarray(probabilities, dtype=float)
    return 1.0 - float(np.sum(p * p))


def pure_density(psi: PureState) -> DensityMatrix:
    if not isinstance(psi, PureState):
        psi = PureState(psi)
    a = psi.amplitudes
    return DensityMatrix._trusted(np.outer(a, a.conj()), psi.tol)


def mix_states(states: Sequence, weights, tol: float = DEFAULT_TOL) -> DensityMatrix:
    """Convex combination ``sum_i w_i rho_i``."""
    rhos = [as_density(s) for s in states]
    w = np.asarray(weights, dtype=float).reshape(-1)
    if len(rhos) == 0 or w.size != len(rhos):
        raise WeightError(f"{w.size} weights for {len(rhos)} states")
    if np.any(w < -tol) or abs(w.sum() - 1.0) > tol:
        raise WeightError(f"weights must be nonnegative and sum to 1 (sum = {w.sum()!r})")
    dims = {r.dim for r in rhos}
    if len(dims) != 1:
        raise DimensionError(f"states have different dimensions {sorted(dims)}")
    out = np.zeros_like(rhos[0].matrix)
    for wi, r in zip(w, rhos):
        out += wi * r.matrix
    return DensityMatrix._trusted(out, tol)


def partial_trace_over_clock(rho_u, sys_dim: int, clock_dim: int) -> DensityMatrix:
    """Trace out the clock factor of a system-major composite state."""
    rho = rho_u if isinstance(rho_u, DensityMatrix) else as_density(rho_u)
    if sys_dim < 1 or clock_dim < 1 or rho.dim != sys_dim * clock_dim:
        raise DimensionError(
            f"composite dim {rho.dim} != {sys_dim} (system) x {clock_dim} (clock)")
    r = rho.matrix.reshape(sys_dim, clock_dim, sys_dim, clock_dim)
    return DensityMatrix._trusted(np.einsum("akbk->ab", r), rho.tol)
