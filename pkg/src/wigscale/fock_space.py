"""Operators in a truncated harmonic-oscillator number basis.

Projects position-representation density matrices into the Fock basis,
computes spectra (the place where nonpositivity of a trace-one Hermitian
operator becomes visible) and evaluates trace-pairing moment matrices
Tr(rho A_ij) for operator families A_ij.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .moments import HermitianMatrix
from .phase_space import PositionDensity

__all__ = [
    "FockMatrix",
    "Spectrum",
    "hermite_function",
    "ladder_operators",
    "quadrature_pair_operators",
    "project_state",
    "spectrum",
    "moment_matrix",
]

#: hard cap on the oscillator index in Hermite-function evaluation
HERMITE_INDEX_LIMIT = 200

#: default Fock-space truncation used by the CLI
DEFAULT_DIM = 32

_HERMITICITY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class FockMatrix:
    """Hermitian operator in the number basis truncated at `dim` levels.

    For projected states, `truncation_deficit` records |1 - trace|, the
    probability weight lost to the discarded levels.
    """

    dim: int
    entries: np.ndarray = field(repr=False)
    truncation_deficit: float | None = None

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

    def trace(self) -> float:
        return float(np.trace(self.entries).real)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of a Fock-basis operator, sorted ascending."""

    eigenvalues: np.ndarray
    min_eigenvalue: float
    trace: float
    truncation_deficit: float


def hermite_function(n: int, x):
    """L2-normalized oscillator eigenfunction psi_n(x) at hbar = m = omega = 1.

    Uses the normalized three-term recurrence, which keeps intermediate
    values bounded (no factorial overflow).
    """
    if n < 0 or int(n) != n:
        raise ValueError(f"index must be a nonnegative integer, got {n}")
    if n > HERMITE_INDEX_LIMIT:
        raise ValueError(f"index {n} exceeds supported limit {HERMITE_INDEX_LIMIT}")
    x = np.asarray(x, dtype=float)
    prev = np.pi**-0.25 * np.exp(-x * x / 2.0)
    if n == 0:
        return prev
    curr = np.sqrt(2.0) * x * prev
    for k in range(2, n + 1):
        prev, curr = curr, np.sqrt(2.0 / k) * x * curr - np.sqrt((k - 1.0) / k) * prev
    return curr


def _hermite_basis(dim: int, x: np.ndarray) -> np.ndarray:
    """Rows psi_0(x) .. psi_{dim-1}(x) via the same normalized recurrence."""
    out = np.empty((dim, x.size))
    out[0] = np.pi**-0.25 * np.exp(-x * x / 2.0)
    if dim > 1:
        out[1] = np.sqrt(2.0) * x * out[0]
    for k in range(2, dim):
        out[k] = np.sqrt(2.0 / k) * x * out[k - 1] - np.sqrt((k - 1.0) / k) * out[k - 2]
    return out


def ladder_operators(dim: int) -> tuple[FockMatrix, FockMatrix]:
    """Position and momentum matrices q = (a + a^dag)/sqrt2, p = (a - a^dag)/(i sqrt2).

    Truncation makes the canonical commutator [q, p] = i exact only on the
    top-left (dim - 1) block.
    """
    if dim < 2:
        raise ValueError(f"dim must be at least 2, got {dim}")
    lower = np.diag(np.sqrt(np.arange(1.0, dim)), 1)  # annihilation operator
    q = (lower + lower.T) / np.sqrt(2.0)
    p = (lower - lower.T) / (1j * np.sqrt(2.0))
    return FockMatrix(dim, q), FockMatrix(dim, p)


def quadrature_pair_operators(dim: int) -> list[list[np.ndarray]]:
    """Operator family A_ij = Q_i Q_j for (Q_1, Q_2) = (q, p).

    Trace-pairing a state against this family reproduces the 2x2
    uncertainty matrix: Q_i Q_j is the half-anticommutator plus the
    half-commutator. The off-diagonal products are not Hermitian, so the
    family is returned as plain matrices.
    """
    q, p = ladder_operators(dim)
    ops = [q.entries, p.entries]
    return [[ops[i] @ ops[j] for j in range(2)] for i in range(2)]


def project_state(rho: PositionDensity, dim: int) -> FockMatrix:
    """Number-basis matrix elements <m|rho|n> by double quadrature.

    Args:
        rho: position-representation density matrix on a grid.
        dim: truncation; the highest retained level must be resolvable on
            the grid (sampling guard) and its classical turning point must
            lie inside the extent (coverage guard).

    Raises:
        ValueError: if `dim` is too large for the grid.
    """
    if dim < 1:
        raise ValueError(f"dim must be positive, got {dim}")
    if dim - 1 > HERMITE_INDEX_LIMIT:
        raise ValueError(f"dim {dim} exceeds supported limit {HERMITE_INDEX_LIMIT + 1}")
    # local wavevector of psi_{dim-1} peaks at sqrt(2 dim - 1)
    k_max = np.sqrt(2.0 * dim - 1.0)
    h = rho.spec.step
    if h > 2.0 / k_max:
        max_dim = int((2.0 / h) ** 2 + 1) // 2
        raise ValueError(
            f"grid too coarse for dim {dim}: step {h:.4g} > {2.0 / k_max:.4g}; "
            f"this grid resolves dim <= {max_dim}"
        )
    if rho.spec.extent < k_max:
        max_dim = int(rho.spec.extent**2 + 1) // 2
        raise ValueError(
            f"grid extent {rho.spec.extent:g} does not cover the turning point "
            f"{k_max:.4g} of level {dim - 1}; extent supports dim <= {max_dim}"
        )
    basis = _hermite_basis(dim, rho.spec.axis())
    entries = h * h * (basis @ rho.values @ basis.T)
    entries = 0.5 * (entries + entries.conj().T)
    deficit = abs(1.0 - float(np.trace(entries).real))
    return FockMatrix(dim, entries, truncation_deficit=deficit)


def spectrum(rho: FockMatrix) -> Spectrum:
    """Full eigenvalue list of a Hermitian Fock-basis operator.

    A min_eigenvalue below -1e-8 flags the operator as nonpositive, i.e.
    not a density operator regardless of its trace or moments.
    """
    eigenvalues = np.linalg.eigvalsh(rho.entries)
    trace = rho.trace()
    deficit = rho.truncation_deficit
    if deficit is None:
        deficit = abs(1.0 - trace)
    return Spectrum(
        eigenvalues=eigenvalues,
        min_eigenvalue=float(eigenvalues[0]),
        trace=trace,
        truncation_deficit=float(deficit),
    )


def moment_matrix(
    rho: FockMatrix,
    ops: Sequence[Sequence[np.ndarray | FockMatrix]],
) -> HermitianMatrix:
    """Numeric matrix of trace pairings M[i, j] = Tr(rho * A_ij).

    Args:
        rho: Hermitian operator (a state projection or any trace-class
            matrix).
        ops: square nested sequence of operators sharing rho's dimension;
            the family must satisfy A_ji = A_ij^dag so that M is Hermitian
            (true for :func:`quadrature_pair_operators`).

    Raises:
        ValueError: on dimension mismatch or a family whose pairing matrix
            is not Hermitian.
    """
    size = len(ops)
    entries = np.empty((size, size), dtype=complex)
    for i in range(size):
        if len(ops[i]) != size:
            raise ValueError("operator family must be a square matrix of operators")
        for j in range(size):
            op = ops[i][j]
            mat = op.entries if isinstance(op, FockMatrix) else np.asarray(op)
            if mat.shape != (rho.dim, rho.dim):
                raise ValueError(
                    f"operator ({i},{j}) has shape {mat.shape}, expected {(rho.dim, rho.dim)}"
                )
            entries[i, j] = np.trace(rho.entries @ mat)
    asym = np.abs(entries - entries.conj().T).max()
    if asym > 1e-8 * max(1.0, float(np.abs(entries).max())):
        raise ValueError(
            "trace pairings are not Hermitian; the operator family must satisfy "
            "A_ji = conj(transpose(A_ij))"
        )
    return HermitianMatrix(size, 0.5 * (entries + entries.conj().T))
