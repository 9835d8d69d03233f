"""Single-mode Wigner functions on phase space and the maps acting on them.

Conventions used throughout: hbar = m = omega = 1, and Wigner functions are
normalized so that the phase-space integral of W(q, p) dq dp / (2 pi) is 1.
Grids are uniform cell-center samplings of the square [-extent, extent]^2,
integrated with the midpoint rule (spectrally accurate for the
Gaussian-decaying integrands handled here).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.signal import resample
from scipy.special import eval_laguerre

__all__ = [
    "GridSpec",
    "AnalyticWigner",
    "GridWigner",
    "PositionDensity",
    "default_grid",
    "eval_fock_wigner",
    "sample_to_grid",
    "apply_scaling",
    "apply_squeeze",
    "apply_partial_scaling",
    "overlap",
    "wigner_to_density",
    "density_to_wigner",
]

#: default number of samples per axis for generated grids
DEFAULT_POINTS = 512

#: sampling rejects extents below this multiple of max(1, 1/|scale|)
_MIN_EXTENT_FACTOR = 4.0

#: quadrature norm must be this close to 1 where a normalized state is required
_NORM_TOL = 1e-4

_HERMITICITY_TOL = 1e-10


@dataclass(frozen=True)
class GridSpec:
    """Uniform square phase-space grid covering q, p in [-extent, extent].

    Sample points sit at cell centers, so the midpoint rule is just a scaled
    sum over the grid values.
    """

    extent: float
    points_per_axis: int = DEFAULT_POINTS

    def __post_init__(self):
        if not self.extent > 0:
            raise ValueError(f"extent must be positive, got {self.extent}")
        if self.points_per_axis < 16 or self.points_per_axis % 2:
            raise ValueError(
                f"points_per_axis must be even and >= 16, got {self.points_per_axis}"
            )

    @property
    def step(self) -> float:
        return 2.0 * self.extent / self.points_per_axis

    def axis(self) -> np.ndarray:
        """Cell-center coordinates shared by the q and p axes."""
        h = self.step
        return -self.extent + (np.arange(self.points_per_axis) + 0.5) * h

    def meshes(self) -> tuple[np.ndarray, np.ndarray]:
        """(Q, P) coordinate matrices; rows index q, columns index p."""
        x = self.axis()
        return np.meshgrid(x, x, indexing="ij")

    @property
    def quadrature_weight(self) -> float:
        """Weight of one cell in the integral dq dp / (2 pi)."""
        return self.step**2 / (2.0 * np.pi)


@dataclass(frozen=True)
class AnalyticWigner:
    """Closed-form Wigner function of a Fock state, optionally scaled/squeezed.

    Evaluates scale^2 * W_n(scale*squeeze*q, scale*p/squeeze): the state is
    first squeezed (a unitary, state-preserving map) and then scaled (a
    trace-preserving but nonpositive map unless |scale| = 1).
    """

    fock_index: int
    scale: float = 1.0
    squeeze: float = 1.0

    def __post_init__(self):
        if self.fock_index < 0 or int(self.fock_index) != self.fock_index:
            raise ValueError(f"fock_index must be a nonnegative integer, got {self.fock_index}")
        if self.scale == 0:
            raise ValueError("scale must be nonzero")
        if not self.squeeze > 0:
            raise ValueError(f"squeeze must be positive, got {self.squeeze}")


@dataclass(frozen=True, eq=False)
class GridWigner:
    """Real Wigner-function samples on a :class:`GridSpec`."""

    spec: GridSpec
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        n = self.spec.points_per_axis
        if values.shape != (n, n):
            raise ValueError(f"values must have shape ({n}, {n}), got {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("Wigner grid contains non-finite values")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def norm(self) -> float:
        """Quadrature value of the normalization integral."""
        return float(self.values.sum() * self.spec.quadrature_weight)


@dataclass(frozen=True, eq=False)
class PositionDensity:
    """Density matrix rho(x, x') sampled on the q axis of a :class:`GridSpec`."""

    spec: GridSpec
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        n = self.spec.points_per_axis
        if values.shape != (n, n):
            raise ValueError(f"values must have shape ({n}, {n}), got {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("density matrix contains non-finite values")
        asym = np.abs(values - values.conj().T).max()
        if asym > _HERMITICITY_TOL:
            raise ValueError(f"density matrix not Hermitian: max |rho - rho^dag| = {asym:.3e}")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def trace(self) -> float:
        """Quadrature trace, the integral of rho(x, x) dx."""
        return float(np.trace(self.values).real * self.spec.step)


def default_grid(state: AnalyticWigner, points_per_axis: int = DEFAULT_POINTS) -> GridSpec:
    """Grid sized for `state`: scaling by |scale| < 1 spreads the state as 1/|scale|."""
    return GridSpec(8.0 * max(1.0, 1.0 / abs(state.scale)), points_per_axis)


def eval_fock_wigner(state: AnalyticWigner, q, p):
    """Evaluate the (scaled, squeezed) Fock-state Wigner function at (q, p).

    Args:
        state: analytic state description.
        q, p: scalars or broadcastable arrays of phase-space coordinates.

    Returns:
        scale^2 * W_n at the squeezed-and-scaled arguments, where
        W_0 = 2 exp(-q^2 - p^2), W_1 = 2 (2q^2 + 2p^2 - 1) exp(-q^2 - p^2),
        and W_n = 2 (-1)^n L_n(2q^2 + 2p^2) exp(-q^2 - p^2) for n >= 2.
    """
    lam = state.scale
    qq = lam * state.squeeze * np.asarray(q, dtype=float)
    pp = lam * np.asarray(p, dtype=float) / state.squeeze
    r2 = qq * qq + pp * pp
    n = state.fock_index
    if n == 0:
        base = 2.0 * np.exp(-r2)
    elif n == 1:
        base = 2.0 * (2.0 * r2 - 1.0) * np.exp(-r2)
    else:
        base = 2.0 * (-1.0) ** n * eval_laguerre(n, 2.0 * r2) * np.exp(-r2)
    return lam * lam * base


def sample_to_grid(state: AnalyticWigner, spec: GridSpec | None = None) -> GridWigner:
    """Sample an analytic state at the cell centers of `spec`.

    Args:
        state: analytic state description.
        spec: target grid; defaults to :func:`default_grid` for the state.

    Raises:
        ValueError: if the extent cannot hold the state (normalization of a
            state scaled by |scale| < 1 needs extent >= 4 / |scale|).
    """
    if spec is None:
        spec = default_grid(state)
    required = _MIN_EXTENT_FACTOR * max(1.0, 1.0 / abs(state.scale))
    if spec.extent < required * (1.0 - 1e-12):
        raise ValueError(
            f"grid too small: extent {spec.extent:g} < required {required:g} "
            f"for scale {state.scale:g}"
        )
    Q, P = spec.meshes()
    return GridWigner(spec, eval_fock_wigner(state, Q, P))


def _interpolate(w: GridWigner, qs: np.ndarray, ps: np.ndarray) -> np.ndarray:
    """Bilinear interpolation of grid values at (qs, ps); zero outside the extent."""
    n = w.spec.points_per_axis
    h = w.spec.step
    origin = -w.spec.extent + 0.5 * h
    fi = (qs - origin) / h
    fj = (ps - origin) / h
    i0 = np.floor(fi).astype(int)
    j0 = np.floor(fj).astype(int)
    ti = fi - i0
    tj = fj - j0

    def corner(ii, jj):
        vals = np.zeros_like(ti)
        ok = (ii >= 0) & (ii < n) & (jj >= 0) & (jj < n)
        vals[ok] = w.values[ii[ok], jj[ok]]
        return vals

    return (
        corner(i0, j0) * (1 - ti) * (1 - tj)
        + corner(i0 + 1, j0) * ti * (1 - tj)
        + corner(i0, j0 + 1) * (1 - ti) * tj
        + corner(i0 + 1, j0 + 1) * ti * tj
    )


def apply_scaling(w: GridWigner, lam: float) -> GridWigner:
    """Scaling map W(q, p) -> |lam|^2 W(lam*q, lam*p), resampled on the same grid.

    Trace-preserving for any nonzero lam, but not positivity-preserving:
    for |lam| != 1 the image of a density operator need not be one.
    """
    if lam == 0:
        raise ValueError("scaling parameter must be nonzero")
    Q, P = w.spec.meshes()
    return GridWigner(w.spec, lam * lam * _interpolate(w, lam * Q, lam * P))


def apply_squeeze(w: GridWigner, kappa: float) -> GridWigner:
    """Squeezing map W(q, p) -> W(kappa*q, p/kappa); unitary, state-preserving."""
    if not kappa > 0:
        raise ValueError(f"squeeze parameter must be positive, got {kappa}")
    Q, P = w.spec.meshes()
    return GridWigner(w.spec, _interpolate(w, kappa * Q, P / kappa))


def apply_partial_scaling(w: GridWigner, lam: float) -> GridWigner:
    """Momentum-only scaling W(q, p) -> |lam| W(q, lam*p) of this single mode.

    Equals the squeeze with kappa^2 = 1/lam followed by the scaling map with
    parameter sqrt(lam) (for lam > 0); lam = -1 is momentum reflection, i.e.
    the transpose of the mode.
    """
    if lam == 0:
        raise ValueError("partial scaling parameter must be nonzero")
    Q, P = w.spec.meshes()
    return GridWigner(w.spec, abs(lam) * _interpolate(w, Q, lam * P))


def overlap(a: GridWigner, b: GridWigner) -> float:
    """Phase-space overlap integral a * b dq dp / (2 pi); equals Tr(rho_a rho_b)."""
    if a.spec != b.spec:
        raise ValueError("overlap requires both grids to share one GridSpec")
    return float((a.values * b.values).sum() * a.spec.quadrature_weight)


def _midpoint_resample(values: np.ndarray) -> np.ndarray:
    """FFT-upsample rows by 2x so that all pairwise q-midpoints become samples.

    Row m of the result sits at coordinate origin + (m + 1) * h/2 where
    origin = -extent + h/2; the midpoint of cells i and j is row i + j.
    Trigonometric interpolation is spectrally accurate here because the
    sampled functions decay to ~0 well inside the extent.
    """
    return resample(values, 2 * values.shape[0], axis=0)


def wigner_to_density(w: GridWigner) -> PositionDensity:
    """Invert the grid to the position-representation density matrix.

    Computes rho(x, x') = (1/2 pi) * integral of W((x+x')/2, p) e^{i p (x-x')} dp
    by midpoint quadrature over the grid's p axis, for x, x' on the q axis.
    The result is Hermitized to remove quadrature round-off.

    Raises:
        ValueError: if the input norm deviates from 1 by more than 1e-4.
    """
    norm = w.norm()
    if abs(norm - 1.0) > _NORM_TOL:
        raise ValueError(f"input grid is not normalized: quadrature norm {norm:.6f}")
    n = w.spec.points_per_axis
    h = w.spec.step
    x = w.spec.axis()
    mids = _midpoint_resample(np.asarray(w.values))
    # G[s, d] = (h / 2 pi) * sum_k W((x_i + x_j)/2, p_k) e^{i p_k (i - j) h},
    # with s = i + j and d = i - j + (n - 1)
    kernel = np.exp(1j * np.outer(x, np.arange(-(n - 1), n) * h))
    G = (h / (2.0 * np.pi)) * (mids[: 2 * n - 1] @ kernel)
    idx = np.arange(n)
    rho = G[idx[:, None] + idx[None, :], idx[:, None] - idx[None, :] + (n - 1)]
    rho = 0.5 * (rho + rho.conj().T)
    return PositionDensity(w.spec, rho)


def density_to_wigner(rho: PositionDensity) -> GridWigner:
    """Invert a position-representation density matrix back to the Wigner grid.

    Computes W(q, p) = integral of rho(q + u/2, q - u/2) e^{-i p u} du by
    quadrature over the anti-diagonals of rho (u runs over even multiples of
    the grid step). Round-tripping :func:`wigner_to_density` reproduces the
    input to near machine precision on the interior of the grid.
    """
    n = rho.spec.points_per_axis
    h = rho.spec.step
    x = rho.spec.axis()
    t = np.arange(-(n - 1), n)
    M, T = np.meshgrid(np.arange(n), t, indexing="ij")
    I, J = M + T, M - T
    ok = (I >= 0) & (I < n) & (J >= 0) & (J < n)
    diagonals = np.zeros((n, 2 * n - 1), dtype=complex)
    diagonals[ok] = rho.values[I[ok], J[ok]]
    kernel = np.exp(-1j * np.outer(2.0 * h * t, x))
    w = 2.0 * h * (diagonals @ kernel)
    return GridWigner(rho.spec, w.real)
