"""Covariance-matrix formalism for N-mode Gaussian states.

Covariances are stored as real symmetric 2N x 2N matrices in
(q_1..q_N, p_1..p_N) ordering, zero means assumed (nonzero means can be
removed by local displacements, which do not affect entanglement).
The separability test applies the momentum scaling of a mode subset to the
second moments and checks whether the uncertainty matrix stays positive:
any violation at |lambda| <= 1 witnesses entanglement, while silence is
inconclusive.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import moments

__all__ = [
    "CovarianceMatrix",
    "SeparabilityReport",
    "vacuum",
    "two_mode_squeezed",
    "squeeze_symplectic",
    "partial_scale",
    "is_valid_state",
    "separability_scan",
    "default_lambda_grid",
    "interleaved_to_block",
    "block_to_interleaved",
]

#: absolute eigenvalue tolerance below which a scan point counts as a violation
SCAN_TOL = 1e-9

_SYMMETRY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class CovarianceMatrix:
    """Real symmetric second-moment matrix of an N-mode state.

    Symmetry is enforced at construction; whether the matrix describes a
    bona fide quantum state (Sigma + iJ/2 >= 0) is checked on demand by
    :func:`is_valid_state`.
    """

    modes: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.modes < 1:
            raise ValueError(f"modes must be positive, got {self.modes}")
        matrix = np.asarray(self.matrix, dtype=float)
        size = 2 * self.modes
        if matrix.shape != (size, size):
            raise ValueError(f"matrix must be {size}x{size}, got {matrix.shape}")
        if not np.all(np.isfinite(matrix)):
            raise ValueError("covariance matrix contains non-finite values")
        asym = np.abs(matrix - matrix.T).max()
        if asym > _SYMMETRY_TOL:
            raise ValueError(f"matrix not symmetric: max |S - S^T| = {asym:.3e}")
        matrix = matrix.copy()
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)


@dataclass(frozen=True)
class SeparabilityReport:
    """Outcome of a partial-scaling scan over a lambda grid.

    `violations` lists the lambda values inside the guaranteed region
    |lambda| <= 1 whose scaled uncertainty matrix went negative; only those
    drive the verdict. Grid points with |lambda| > 1 are permitted but the
    criterion proves nothing there (even the vacuum goes negative), so they
    are reported separately in `outside_criterion`.
    """

    lam_grid: list[float]
    min_eigenvalues: list[float]
    violations: list[float]
    verdict: str
    outside_criterion: list[float]
    tol: float

    def __post_init__(self):
        if len(self.lam_grid) != len(self.min_eigenvalues):
            raise ValueError("lam_grid and min_eigenvalues must have equal length")
        expected = "entanglement_detected" if self.violations else "no_violation"
        if self.verdict != expected:
            raise ValueError(f"verdict {self.verdict!r} inconsistent with violations")


def vacuum(modes: int) -> CovarianceMatrix:
    """N-mode vacuum: Sigma = I/2, saturating the uncertainty relation."""
    if modes < 1:
        raise ValueError(f"modes must be positive, got {modes}")
    return CovarianceMatrix(modes, 0.5 * np.eye(2 * modes))


def two_mode_squeezed(r: float) -> CovarianceMatrix:
    """Two-mode squeezed vacuum with squeezing strength r; entangled for r != 0.

    Diagonal entries cosh(2r)/2, cross-mode correlations +sinh(2r)/2 in
    position and -sinh(2r)/2 in momentum.
    """
    if not np.isfinite(r):
        raise ValueError(f"squeezing strength must be finite, got {r}")
    c = 0.5 * np.cosh(2.0 * r)
    s = 0.5 * np.sinh(2.0 * r)
    sigma = np.array(
        [
            [c, s, 0.0, 0.0],
            [s, c, 0.0, 0.0],
            [0.0, 0.0, c, -s],
            [0.0, 0.0, -s, c],
        ]
    )
    return CovarianceMatrix(2, sigma)


def _check_mode(cov: CovarianceMatrix, mode: int) -> int:
    if mode < 1 or mode > cov.modes:
        raise ValueError(f"mode must be in 1..{cov.modes}, got {mode}")
    return mode - 1


def squeeze_symplectic(cov: CovarianceMatrix, mode: int, kappa: float) -> CovarianceMatrix:
    """Single-mode squeeze as a symplectic congruence Sigma -> S Sigma S^T.

    S scales q of `mode` (1-based) by 1/kappa and p by kappa, matching the
    second moments of W(kappa*q, p/kappa). Symplectic congruences preserve
    state validity for every kappa > 0.
    """
    if not kappa > 0:
        raise ValueError(f"squeeze parameter must be positive, got {kappa}")
    idx = _check_mode(cov, mode)
    diag = np.ones(2 * cov.modes)
    diag[idx] = 1.0 / kappa
    diag[cov.modes + idx] = kappa
    return CovarianceMatrix(cov.modes, diag[:, None] * cov.matrix * diag[None, :])


def partial_scale(cov: CovarianceMatrix, mode: int, lam: float) -> CovarianceMatrix:
    """Second moments after momentum-only scaling |lam| W(q, lam*p) of one mode.

    Every entry with exactly one p_mode factor picks up 1/lam and the
    (p_mode, p_mode) entry picks up 1/lam^2; nothing else changes. At
    lam = -1 this is exactly the partial transpose (one momentum mirrored).
    """
    if lam == 0:
        raise ValueError("scaling parameter must be nonzero")
    idx = _check_mode(cov, mode)
    diag = np.ones(2 * cov.modes)
    diag[cov.modes + idx] = 1.0 / lam
    return CovarianceMatrix(cov.modes, diag[:, None] * cov.matrix * diag[None, :])


def is_valid_state(cov: CovarianceMatrix, tol: float = moments.PSD_TOL) -> tuple[bool, float]:
    """Whether Sigma + iJ/2 >= 0, plus its minimum eigenvalue."""
    return moments.is_psd(moments.multimode_uncertainty_matrix(cov), tol)


def default_lambda_grid() -> np.ndarray:
    """41 evenly spaced points on [-1, 1] with the singular 0 dropped."""
    grid = np.linspace(-1.0, 1.0, 41)
    return grid[grid != 0.0]


def separability_scan(
    cov: CovarianceMatrix,
    mode_partition: set[int] | frozenset[int],
    lam_grid,
    tol: float = SCAN_TOL,
) -> SeparabilityReport:
    """Scan the partial-scaling separability criterion over a lambda grid.

    For each lambda, applies :func:`partial_scale` with that lambda to every
    mode in `mode_partition` and records the minimum eigenvalue of the scaled
    uncertainty matrix. Separable states keep it nonnegative for all
    0 < |lambda| <= 1, so any violation there certifies entanglement;
    no violation is inconclusive.

    Args:
        cov: covariance of a valid state (invalid input is an error, not
            "entangled").
        mode_partition: nonempty set of 1-based mode indices to scale.
        lam_grid: iterable of nonzero scaling parameters.
        tol: absolute threshold; min eigenvalue < -tol counts as violation.

    Raises:
        ValueError: invalid input state, empty grid, zero lambda, or bad
            mode indices.
    """
    lam_values = [float(lam) for lam in lam_grid]
    if not lam_values:
        raise ValueError("lambda grid must not be empty")
    if any(lam == 0.0 for lam in lam_values):
        raise ValueError("scaling parameters must be nonzero")
    modes = sorted(set(int(m) for m in mode_partition))
    if not modes:
        raise ValueError("mode partition must not be empty")
    for mode in modes:
        _check_mode(cov, mode)
    ok, min_eig = is_valid_state(cov)
    if not ok:
        raise ValueError(
            f"input covariance is not a valid state (min eigenvalue {min_eig:.3e}); "
            "the criterion only applies to states"
        )

    min_eigenvalues = []
    violations = []
    outside = []
    for lam in lam_values:
        scaled = cov
        for mode in modes:
            scaled = partial_scale(scaled, mode, lam)
        matrix = moments.multimode_uncertainty_matrix(scaled)
        _, low = moments.is_psd(matrix)
        min_eigenvalues.append(low)
        if abs(lam) > 1.0 + 1e-12:
            outside.append(lam)
        elif low < -tol:
            violations.append(lam)
    verdict = "entanglement_detected" if violations else "no_violation"
    return SeparabilityReport(
        lam_grid=lam_values,
        min_eigenvalues=min_eigenvalues,
        violations=violations,
        verdict=verdict,
        outside_criterion=outside,
        tol=tol,
    )


def interleaved_to_block(matrix: np.ndarray) -> np.ndarray:
    """Reorder a (q1, p1, q2, p2, ...) matrix into (q1..qN, p1..pN) blocks."""
    matrix = np.asarray(matrix)
    size = matrix.shape[0]
    if matrix.shape != (size, size) or size % 2:
        raise ValueError(f"expected an even-sized square matrix, got {matrix.shape}")
    idx = np.concatenate([np.arange(0, size, 2), np.arange(1, size, 2)])
    return matrix[np.ix_(idx, idx)]


def block_to_interleaved(matrix: np.ndarray) -> np.ndarray:
    """Inverse of :func:`interleaved_to_block`."""
    matrix = np.asarray(matrix)
    size = matrix.shape[0]
    if matrix.shape != (size, size) or size % 2:
        raise ValueError(f"expected an even-sized square matrix, got {matrix.shape}")
    modes = size // 2
    idx = np.empty(size, dtype=int)
    idx[0::2] = np.arange(modes)
    idx[1::2] = np.arange(modes) + modes
    return matrix[np.ix_(idx, idx)]
