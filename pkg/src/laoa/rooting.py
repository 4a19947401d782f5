"""Roots of the prediction polynomial and signal-root selection.

The polynomial is P(y) = 1 + c_1 y + ... + c_{m-1} y^{m-1}; in the noiseless
model its signal roots lie exactly on the unit circle at e^{j*psi_l}.  Roots
are found by Aberth-Ehrlich simultaneous iteration started on the unit
circle, which is where the roots of interest live.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, DegreeZero, NotEnoughRoots
from .linalg import CoefficientVector

DEFLATION_TOL = 1e-12      # relative cutoff for stripping tiny leading coefficients
RESIDUAL_TOL = 1e-8        # relative residual every returned root must satisfy
ROOT_RESIDUAL_TOL = 1e-6   # RootSet acceptance gate (noiseless path)
_MAX_ITER = 500


@dataclass(frozen=True)
class RootSet:
    """All polynomial roots plus the q selected signal roots."""

    roots: tuple
    selected: tuple
    residuals: tuple


def find_roots(coeffs: CoefficientVector) -> list[complex]:
    """All roots of 1 + c_1 y + ... + c_{m-1} y^{m-1}.

    Near-zero high-order coefficients are stripped first (degree deflation),
    so the returned list has length equal to the effective degree.

    Raises
    ------
    DegreeZero
        If every coefficient is negligible (the constant 1 has no roots).
    ConvergenceFailure
        If the iteration budget is exhausted before the residual bound holds.
    """
    poly = np.concatenate(([1.0 + 0j], coeffs.c))
    scale = np.max(np.abs(poly))
    degree = len(poly) - 1
    while degree > 0 and abs(poly[degree]) < DEFLATION_TOL * scale:
        degree -= 1
    if degree == 0:
        raise DegreeZero("all polynomial coefficients are negligible; no roots exist")
    poly = poly[: degree + 1]

    roots = _aberth(poly)
    for r in roots:
        if _residual(poly, r) > RESIDUAL_TOL * _residual_scale(poly, r):
            raise ConvergenceFailure(f"root {r} fails the residual bound")
    return [complex(r) for r in roots]


def _residual(poly: np.ndarray, y: complex) -> float:
    return abs(_horner(poly, y)[0])


def _residual_scale(poly: np.ndarray, y: complex) -> float:
    return 1.0 + float(np.sum(np.abs(poly[1:]) * np.abs(y) ** np.arange(1, len(poly))))


def _horner(poly: np.ndarray, y: complex) -> tuple[complex, complex]:
    # value and derivative, coefficients in ascending order
    p = 0.0 + 0j
    dp = 0.0 + 0j
    for a in poly[::-1]:
        dp = dp * y + p
        p = p * y + a
    return p, dp


def _aberth(poly: np.ndarray) -> np.ndarray:
    n = len(poly) - 1
    # start on the unit circle with an asymmetric offset so no initial guess
    # coincides with a symmetric root pattern
    z = np.exp(2j * np.pi * (np.arange(n) + 0.3) / n)
    for _ in range(_MAX_ITER):
        vals = np.array([_horner(poly, zk) for zk in z])
        p, dp = vals[:, 0], vals[:, 1]
        if np.all(
            np.abs(p)
            <= 1e-14 * np.array([_residual_scale(poly, zk) for zk in z])
        ):
            return z
        # Newton correction with repulsion from the other iterates
        dp = np.where(dp == 0, np.finfo(float).eps, dp)
        w = p / dp
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        repulse = np.sum(1.0 / diff, axis=1)
        denom = 1.0 - w * repulse
        denom = np.where(denom == 0, np.finfo(float).eps, denom)
        step = w / denom
        z = z - step
        if np.all(np.abs(step) <= 1e-15 * (1.0 + np.abs(z))):
            return z
    raise ConvergenceFailure(f"Aberth iteration exceeded {_MAX_ITER} steps")


def _canonical_key(r: complex) -> tuple[float, float]:
    return (float(np.angle(r)), abs(r))


def select_unit_roots(roots: list[complex], q: int) -> list[int]:
    """Indices of the q roots whose magnitudes are nearest unity.

    Ties are broken by the canonical root order (principal angle ascending,
    then magnitude), so the selected VALUES are independent of the input
    ordering.
    """
    if q > len(roots):
        raise NotEnoughRoots(f"requested {q} signal roots from {len(roots)} available")
    order = sorted(
        range(len(roots)),
        key=lambda i: (abs(abs(roots[i]) - 1.0),) + _canonical_key(roots[i]),
    )
    return order[:q]


def electrical_angles_from_roots(roots: list[complex], selected: list[int]) -> list[float]:
    """Principal arguments in (-pi, pi] of the selected roots, order preserved."""
    out = []
    for i in selected:
        ang = float(np.angle(roots[i]))
        if ang <= -np.pi:
            ang += 2.0 * np.pi
        out.append(ang)
    return out
