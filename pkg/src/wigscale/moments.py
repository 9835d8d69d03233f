"""Second moments of phase-space distributions and uncertainty-matrix tests.

The central object is the Hermitian matrix of symmetrized second moments
plus (i/2) times the canonical commutators. Positivity of that matrix is the
multimode uncertainty relation; for one mode it reduces to
sigma_qq * sigma_pp - sigma_qp^2 >= 1/4 (hbar = 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from .gaussian_cv import CovarianceMatrix
    from .phase_space import GridWigner

__all__ = [
    "SecondMoments",
    "HermitianMatrix",
    "moments_from_grid",
    "sr_matrix",
    "sr_value",
    "symplectic_form",
    "multimode_uncertainty_matrix",
    "det_bound",
    "is_psd",
    "leading_minors",
]

#: relative positivity tolerance; saturated states sit exactly on the boundary
PSD_TOL = 1e-10

_NORM_TOL = 1e-4
_HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class SecondMoments:
    """First and central second moments of a single mode."""

    mean_q: float
    mean_p: float
    sigma_qq: float
    sigma_pp: float
    sigma_qp: float


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """Dense Hermitian matrix with construction-time validation."""

    dim: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        if entries.shape != (self.dim, self.dim):
            raise ValueError(f"entries must be {self.dim}x{self.dim}, got {entries.shape}")
        asym = np.abs(entries - entries.conj().T).max()
        if asym > _HERMITICITY_TOL:
            raise ValueError(f"matrix not Hermitian: max |M - M^dag| = {asym:.3e}")
        entries = entries.copy()
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)


def moments_from_grid(w: GridWigner) -> SecondMoments:
    """Quadrature averages of q, p and their central second moments.

    Args:
        w: normalized Wigner grid (norm within 1e-4 of 1).

    Raises:
        ValueError: for unnormalized input.
    """
    norm = w.norm()
    if abs(norm - 1.0) > _NORM_TOL:
        raise ValueError(f"input grid is not normalized: quadrature norm {norm:.6f}")
    Q, P = w.spec.meshes()
    weight = w.spec.quadrature_weight
    mean_q = float((w.values * Q).sum() * weight)
    mean_p = float((w.values * P).sum() * weight)
    sigma_qq = float((w.values * Q * Q).sum() * weight) - mean_q**2
    sigma_pp = float((w.values * P * P).sum() * weight) - mean_p**2
    sigma_qp = float((w.values * Q * P).sum() * weight) - mean_q * mean_p
    return SecondMoments(mean_q, mean_p, sigma_qq, sigma_pp, sigma_qp)


def sr_matrix(m: SecondMoments) -> HermitianMatrix:
    """2x2 uncertainty matrix [[s_qq, s_qp + i/2], [s_qp - i/2, s_pp]].

    Positive semidefiniteness of this matrix is the Schrodinger-Robertson
    uncertainty relation in matrix form (central moments, so means drop out).
    """
    entries = np.array(
        [
            [m.sigma_qq, m.sigma_qp + 0.5j],
            [m.sigma_qp - 0.5j, m.sigma_pp],
        ],
        dtype=complex,
    )
    return HermitianMatrix(2, entries)


def sr_value(m: SecondMoments) -> float:
    """Determinant form s_qq * s_pp - s_qp^2; at least 1/4 for quantum states."""
    return m.sigma_qq * m.sigma_pp - m.sigma_qp**2


def symplectic_form(modes: int) -> np.ndarray:
    """Matrix J with [Q_a, Q_b] = i J_ab in (q_1..q_N, p_1..p_N) ordering."""
    eye = np.eye(modes)
    zero = np.zeros((modes, modes))
    return np.block([[zero, eye], [-eye, zero]])


def multimode_uncertainty_matrix(cov: CovarianceMatrix) -> HermitianMatrix:
    """Sigma + (i/2) J for an N-mode covariance matrix.

    Positivity of the result is the multimode uncertainty relation; its
    failure certifies that no quantum state has these second moments.
    """
    entries = cov.matrix + 0.5j * symplectic_form(cov.modes)
    return HermitianMatrix(2 * cov.modes, entries)


def det_bound(cov: CovarianceMatrix) -> tuple[float, float]:
    """(det Sigma, 1/4^N): the first must reach the second for valid states.

    This is the weaker, determinant-only consequence of the multimode
    uncertainty relation (the last leading minor of Sigma + iJ/2 reduces
    to it for Sigma alone).
    """
    return float(np.linalg.det(cov.matrix)), 0.25**cov.modes


def is_psd(h: HermitianMatrix, tol: float = PSD_TOL) -> tuple[bool, float]:
    """Decide positive semidefiniteness by symmetric eigendecomposition.

    Args:
        h: matrix under test.
        tol: relative tolerance; the verdict is min_eig >= -tol * max(1, sup norm).

    Returns:
        (verdict, minimum eigenvalue).
    """
    eigenvalues = np.linalg.eigvalsh(h.entries)
    scale = max(1.0, float(np.abs(h.entries).max()))
    min_eig = float(eigenvalues[0])
    return min_eig >= -tol * scale, min_eig


def leading_minors(h: HermitianMatrix) -> list[float]:
    """Determinants of the leading principal submatrices, in order.

    All strictly positive iff the matrix is positive definite (Sylvester);
    exposed for inspection and cross-checks, while decisions use
    :func:`is_psd` because the strict-minor form misreads semidefinite
    boundary cases.
    """
    return [
        float(np.linalg.det(h.entries[:k, :k]).real) for k in range(1, h.dim + 1)
    ]
