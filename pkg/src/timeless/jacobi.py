"""Cyclic Jacobi eigensolver for small dense Hermitian matrices.

Each rotation first removes the phase of the pivot element and then applies
a real Givens rotation, so the update is a 2x2 unitary acting on rows and
columns (p, q).
"""

from __future__ import annotations

import math

import numpy as np

MAX_SWEEPS = 50


class SymmetryError(ValueError):
    """Input to the eigensolver is not Hermitian."""


class ConvergenceError(RuntimeError):
    """Jacobi sweeps did not reduce the off-diagonal part below tolerance."""


def _off_norm(rows) -> float:
    total = 0.0
    for i, row in enumerate(rows):
        for j, z in enumerate(row):
            if i != j:
                total += z.real * z.real + z.imag * z.imag
    return math.sqrt(total)


def _rotate(a, v, p, q, n):
    """Zero a[p][q] in place: A <- U^H A U, V <- V U.

    U is the identity except on (p, q), where it is [[c, s e], [-s e*, c]]
    with e the phase of a[p][q].
    """
    apq = a[p][q]
    mag = abs(apq)
    if mag <= 1e-300:
        return
    phase = apq / mag
    theta = (a[q][q].real - a[p][p].real) / (2.0 * mag)
    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
    c = 1.0 / math.sqrt(t * t + 1.0)
    sp = t * c * phase
    spc = sp.conjugate()
    for row in a:
        x, y = row[p], row[q]
        row[p] = c * x - spc * y
        row[q] = sp * x + c * y
    rp, rq = a[p], a[q]
    for j in range(n):
        x, y = rp[j], rq[j]
        rp[j] = c * x - sp * y
        rq[j] = spc * x + c * y
    rp[q] = rq[p] = 0j
    rp[p] = complex(rp[p].real)
    rq[q] = complex(rq[q].real)
    for row in v:
        x, y = row[p], row[q]
        row[p] = c * x - spc * y
        row[q] = sp * x + c * y


def jacobi_diagonalize(h, hermitian_tol: float = 1e-10, off_tol: float = 1e-12,
                       max_sweeps: int = MAX_SWEEPS):
    """Diagonalize a Hermitian matrix with cyclic Jacobi rotations.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues ascending and
    eigenvectors as the columns of a unitary matrix, so that
    ``h == V @ diag(w) @ V.conj().T``.

    Sweeps stop once the Frobenius norm of the off-diagonal part is at most
    ``off_tol * ||h||_F``.  ``hermitian_tol`` is relative to ``max(1, ||h||_F)``.
    """
    a = np.array(h, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    norm = float(np.linalg.norm(a))
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    asym = float(np.max(np.abs(a - a.conj().T))) if n else 0.0
    if asym > hermitian_tol * max(1.0, norm):
        raise SymmetryError(f"matrix is not Hermitian (max |h - h^H| = {asym:.3e})")
    a = 0.5 * (a + a.conj().T)
    target = off_tol * norm
    # plain Python lists: far cheaper than numpy indexing at these sizes
    rows = a.tolist()
    vecs = np.eye(n, dtype=complex).tolist()
    for _ in range(max_sweeps):
        if _off_norm(rows) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(rows, vecs, p, q, n)
    else:
        if _off_norm(rows) > target:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")

    a = np.array(rows, dtype=complex).reshape(n, n)
    v = np.array(vecs, dtype=complex).reshape(n, n)
    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]
