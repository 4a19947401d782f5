"""Complex dense SVD, truncated pseudoinverse, and the coefficient solve.

The SVD is a one-sided Jacobi: right rotations orthogonalize the columns of
the (tall) working matrix, after which column norms are the singular values.
Jacobi is slower than bidiagonalization but simple, accurate to high relative
precision, and easy to make bit-for-bit deterministic (fixed sweep order,
fixed phase convention).
"""

import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ConvergenceFailure, RankOutOfRange, RankDeficiencyWarning
from .synthesis import LpSystem

REL_RANK_TOL = 1e-10  # singular values below this fraction of sigma_1 count as zero
_SWEEP_TOL = 1e-14    # off-diagonal convergence threshold, relative
_PHASE_EPS = 1e-12    # magnitude below which a vector entry counts as zero


class SolveMode(Enum):
    PLAIN_LEAST_SQUARES = "plain_least_squares"
    TRUNCATED_SVD = "truncated_svd"


@dataclass(frozen=True)
class SvdResult:
    """Thin SVD A = U diag(sigma) V^H with sigma sorted non-increasing."""

    U: np.ndarray
    sigma: np.ndarray
    V: np.ndarray


@dataclass(frozen=True)
class CoefficientVector:
    """Prediction-polynomial coefficients (c_1, ..., c_{m-1}); constant term is 1."""

    c: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.c, dtype=complex)
        if c.ndim != 1 or c.size < 1:
            raise ValueError("coefficient vector must be 1-D and nonempty")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficient vector contains non-finite entries")
        object.__setattr__(self, "c", c)


def svd(A: np.ndarray) -> SvdResult:
    """Thin singular value decomposition by one-sided Jacobi rotations.

    Deterministic: fixed cyclic sweep order and a phase convention that makes
    the first nonzero entry of each V column real non-negative.

    Raises
    ------
    ConvergenceFailure
        If the sweep budget (100 * min(dims)) is exhausted.
    """
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.size == 0:
        raise ValueError("svd expects a nonempty 2-D matrix")
    if not np.all(np.isfinite(A)):
        raise ValueError("svd input contains non-finite entries")

    if A.shape[0] >= A.shape[1]:
        U, s, V = _jacobi_svd_tall(A)
    else:
        # A = U S V^H  <=>  A^H = V S U^H: run on the tall conjugate transpose.
        V, s, U = _jacobi_svd_tall(A.conj().T)

    U, V = _fix_phases(U, V)
    return SvdResult(U=U, sigma=s, V=V)


def _jacobi_svd_tall(A: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    rows, n = A.shape
    W = A.copy()
    V = np.eye(n, dtype=complex)
    budget = 100 * min(rows, n)

    for _ in range(budget):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                app = np.real(np.vdot(W[:, p], W[:, p]))
                aqq = np.real(np.vdot(W[:, q], W[:, q]))
                apq = np.vdot(W[:, p], W[:, q])
                mag = abs(apq)
                if mag <= _SWEEP_TOL * np.sqrt(app * aqq) or mag == 0.0:
                    continue
                rotated = True
                phase = apq / mag
                # Diagonalize [[app, mag], [mag, aqq]] with a real rotation,
                # absorbing the phase into column q.
                tau = (aqq - app) / (2.0 * mag)
                t = np.sign(tau) if tau != 0 else 1.0
                t = t / (abs(tau) + np.hypot(1.0, tau))
                cs = 1.0 / np.hypot(1.0, t)
                sn = t * cs
                wq = np.conj(phase) * W[:, q]
                W[:, p], W[:, q] = cs * W[:, p] - sn * wq, sn * W[:, p] + cs * wq
                vq = np.conj(phase) * V[:, q]
                V[:, p], V[:, q] = cs * V[:, p] - sn * vq, sn * V[:, p] + cs * vq
        if not rotated:
            break
    else:
        raise ConvergenceFailure(f"one-sided Jacobi SVD did not converge in {budget} sweeps")

    sigma = np.linalg.norm(W, axis=0)
    order = np.argsort(-sigma, kind="stable")
    sigma = sigma[order]
    W = W[:, order]
    V = V[:, order]

    U = np.empty_like(W)
    tiny = max(sigma[0], 1.0) * np.finfo(float).eps * rows
    for j in range(n):
        if sigma[j] > tiny:
            U[:, j] = W[:, j] / sigma[j]
        else:
            sigma[j] = sigma[j] if sigma[j] > 0 else 0.0
            U[:, j] = _orthonormal_fill(U[:, :j], rows)
    return U, sigma, V


def _orthonormal_fill(existing: np.ndarray, rows: int) -> np.ndarray:
    # Deterministic completion: first coordinate vector with a significant
    # component outside span(existing), Gram-Schmidt orthogonalized.
    for i in range(rows):
        e = np.zeros(rows, dtype=complex)
        e[i] = 1.0
        if existing.shape[1]:
            e -= existing @ (existing.conj().T @ e)
        norm = np.linalg.norm(e)
        if norm > 0.5:
            return e / norm
    raise ConvergenceFailure("failed to complete orthonormal basis")


def _fix_phases(U: np.ndarray, V: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    U = U.copy()
    V = V.copy()
    for j in range(V.shape[1]):
        col = V[:, j]
        idx = np.flatnonzero(np.abs(col) > _PHASE_EPS)
        if idx.size == 0:
            continue
        alpha = np.conj(col[idx[0]] / abs(col[idx[0]]))
        V[:, j] *= alpha
        U[:, j] *= alpha
    return U, V


def truncated_pseudoinverse(A: np.ndarray, rank: int) -> np.ndarray:
    """Pseudoinverse keeping only the `rank` largest singular values.

    Kept singular values below REL_RANK_TOL * sigma_1 are still zeroed, since
    dividing by a numerically zero singular value destroys the solution.
    """
    A = np.asarray(A, dtype=complex)
    if not (1 <= rank <= min(A.shape)):
        raise RankOutOfRange(f"rank must be in [1, {min(A.shape)}], got {rank}")
    res = svd(A)
    inv = np.zeros_like(res.sigma)
    cutoff = REL_RANK_TOL * res.sigma[0]
    keep = res.sigma[:rank] > cutoff
    inv[:rank][keep] = 1.0 / res.sigma[:rank][keep]
    return (res.V * inv) @ res.U.conj().T


def solve_coeffs(system: LpSystem, q: int, mode: SolveMode) -> CoefficientVector:
    """Solve P C = P1 for the prediction coefficients.

    TRUNCATED_SVD inverts only the q largest singular values, suppressing
    noise-dominated directions.  PLAIN_LEAST_SQUARES is the minimum-norm
    least-squares solution with tolerance-based rank detection (the explicit
    normal-equations pseudoinverse is singular whenever q < m - 1 in the
    noiseless case, so both modes go through the SVD).
    """
    n_coeffs = system.P.shape[1]
    if not (1 <= q <= n_coeffs):
        raise RankOutOfRange(f"q must be in [1, {n_coeffs}], got {q}")
    res = svd(system.P)
    cutoff = REL_RANK_TOL * res.sigma[0] if res.sigma[0] > 0 else 0.0

    if mode is SolveMode.TRUNCATED_SVD:
        rank = q
        if res.sigma[q - 1] <= cutoff:
            rank = int(np.sum(res.sigma[:q] > cutoff))
            warnings.warn(
                f"requested truncation rank {q} exceeds numerical rank {rank}; reducing",
                RankDeficiencyWarning,
                stacklevel=2,
            )
    else:
        rank = int(np.sum(res.sigma > cutoff))

    inv = np.zeros_like(res.sigma)
    inv[:rank] = 1.0 / res.sigma[:rank]
    c = (res.V * inv) @ (res.U.conj().T @ system.P1)
    return CoefficientVector(c=c)
