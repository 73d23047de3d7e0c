from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from qlap.constants import DEFAULT_SWEEP_LIMIT, DEFAULT_TOL

LOG = logging.getLogger(__name__)


class ConvergenceError(RuntimeError):
    def __init__(self, *, off_norm: float, sweeps: int) -> None:
        self.off_norm = off_norm
        self.sweeps = sweeps
        super().__init__(
            f"Jacobi iteration did not converge after {sweeps} sweeps "
            f"(off-diagonal mass {off_norm:.3e})"
        )


@dataclass(frozen=True)
class SpectralResult:
    eigenvalues: tuple[float, ...]
    # Column k is the unit eigenvector for eigenvalues[k].
    eigenvectors: tuple[tuple[float, ...], ...]
    residual: float
    off_norm: float
    sweeps: int
    tol: float

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    @property
    def values(self) -> np.ndarray:
        return np.array(self.eigenvalues, dtype=float)

    @property
    def vectors(self) -> np.ndarray:
        """n x n matrix whose columns are the eigenvectors."""
        return np.array(self.eigenvectors, dtype=float).T

    def eigenvector(self, k: int) -> np.ndarray:
        return np.array(self.eigenvectors[k], dtype=float)


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diagonal(a))
    return float(np.sqrt(np.sum(off * off)))


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    apq = a[p, q]
    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
    # Smaller root of t^2 + 2 t theta - 1 = 0; overflow of theta^2 gives t = 0.
    with np.errstate(over="ignore"):
        t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c

    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - s * col_q
    a[:, q] = s * col_p + c * col_q
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p - s * row_q
    a[q, :] = s * row_p + c * row_q
    a[p, q] = 0.0
    a[q, p] = 0.0

    vp = v[:, p].copy()
    vq = v[:, q].copy()
    v[:, p] = c * vp - s * vq
    v[:, q] = s * vp + c * vq


def eigen_decompose(
    lap: np.ndarray, tol: float = DEFAULT_TOL, *, sweep_limit: int = DEFAULT_SWEEP_LIMIT
) -> SpectralResult:
    """
    Full spectrum of a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps visit (p, q) in row-major order and stop once the Frobenius norm
    of the off-diagonal part drops below `tol`.
    """

    if tol <= 0:
        raise ValueError("tol must be > 0")
    original = np.asarray(lap, dtype=float)
    if original.ndim != 2 or original.shape[0] != original.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {original.shape}")
    if not np.array_equal(original, original.T):
        raise ValueError("matrix is not symmetric")

    n = original.shape[0]
    a = original.copy()
    v = np.eye(n)
    sweeps = 0
    off = _off_norm(a)
    while off >= tol:
        if sweeps >= sweep_limit:
            raise ConvergenceError(off_norm=off, sweeps=sweeps)
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] != 0.0:
                    _rotate(a, v, p, q)
        off = _off_norm(a)
        LOG.debug("jacobi sweep %d: off-diagonal mass %.3e", sweeps, off)

    diag = np.diagonal(a).copy()
    order = np.argsort(diag, kind="stable")
    values = diag[order]
    vectors = v[:, order]
    for k in range(n):
        col = vectors[:, k]
        pivot = int(np.argmax(np.abs(col) > 1e-12))
        if col[pivot] < 0:
            vectors[:, k] = -col

    residual = 0.0
    for k in range(n):
        r = original @ vectors[:, k] - values[k] * vectors[:, k]
        residual = max(residual, float(np.linalg.norm(r)))

    return SpectralResult(
        eigenvalues=tuple(float(x) for x in values),
        eigenvectors=tuple(tuple(float(x) for x in vectors[:, k]) for k in range(n)),
        residual=residual,
        off_norm=off,
        sweeps=sweeps,
        tol=tol,
    )


def lambda1(result: SpectralResult) -> float:
    """Second-smallest eigenvalue; the graph is assumed connected."""

    if result.n < 2:
        raise ValueError("lambda_1 needs at least two vertices")
    value = result.eigenvalues[1]
    if value < 10 * result.tol:
        LOG.warning(
            "lambda_1 = %.3e is within 10*tol of zero; is the graph connected?", value
        )
    return value
