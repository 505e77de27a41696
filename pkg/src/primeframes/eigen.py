"""Cyclic Jacobi eigensolver for complex Hermitian matrices."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EigenConvergenceError


@dataclass
class EighResult:
    eigenvalues: np.ndarray  # ascending
    eigenvectors: np.ndarray  # columns, matching eigenvalues
    sweeps: int
    off_norm: float


def off_diagonal_norm(A: np.ndarray) -> float:
    off = A - np.diag(np.diag(A))
    return float(np.linalg.norm(off))


def jacobi_eigh(A, rel_tol: float = 1e-12, max_sweeps: int = 60, vectors: bool = True) -> EighResult:
    """Diagonalize a Hermitian matrix by cyclic row-by-row Jacobi rotations.

    Stops once the off-diagonal Frobenius mass is at most ``rel_tol * ||A||_F``.
    Each 2x2 pivot block [[a, b], [conj(b), d]] is first made real by a phase
    on column j, then annihilated by a plane rotation.
    """
    A = np.array(A, dtype=np.complex128)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("matrix must be square")
    if not np.allclose(A, A.conj().T, rtol=0, atol=1e-12 * max(1.0, np.abs(A).max(initial=0.0))):
        raise ValueError("matrix is not Hermitian")
    A = (A + A.conj().T) / 2
    V = np.eye(n, dtype=np.complex128) if vectors else None
    threshold = rel_tol * float(np.linalg.norm(A))
    skip = 1e-20 * float(np.linalg.norm(A)) / max(n, 1)
    off = off_diagonal_norm(A)
    sweeps = 0
    while off > threshold:
        if sweeps >= max_sweeps:
            raise EigenConvergenceError(
                f"Jacobi did not converge after {sweeps} sweeps: off-diagonal norm {off:.3e} > {threshold:.3e}",
                sweeps=sweeps, off_norm=off, threshold=threshold,
            )
        sweeps += 1
        for i in range(n - 1):
            for j in range(i + 1, n):
                b = A[i, j]
                mag = abs(b)
                if mag <= skip:
                    continue
                phase = b / mag
                a, d = A[i, i].real, A[j, j].real
                theta = (d - a) / (2.0 * mag)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # U = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                U = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                cols = A[:, [i, j]] @ U
                A[:, i], A[:, j] = cols[:, 0], cols[:, 1]
                rows = U.conj().T @ A[[i, j], :]
                A[i, :], A[j, :] = rows[0], rows[1]
                A[i, j] = A[j, i] = 0.0
                A[i, i] = a - t * mag
                A[j, j] = d + t * mag
                if V is not None:
                    vc = V[:, [i, j]] @ U
                    V[:, i], V[:, j] = vc[:, 0], vc[:, 1]
        off = off_diagonal_norm(A)
    w = np.diag(A).real.copy()
    order = np.argsort(w, kind="stable")
    return EighResult(
        eigenvalues=w[order],
        eigenvectors=V[:, order] if V is not None else np.empty((n, 0)),
        sweeps=sweeps,
        off_norm=off,
    )
