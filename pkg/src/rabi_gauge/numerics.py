"""Dense Hermitian eigensolver, scalar minimization and quadrature.

Everything here is pure and reentrant: no module state, deterministic
outputs for identical inputs.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .errors import EigensolverError

GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0  # inverse golden ratio, ~0.618

HERMITICITY_TOL = 1e-10


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral factorization H = U diag(w) U^dag with w ascending."""

    dim: int
    eigenvalues: np.ndarray  # real, ascending
    eigenvectors: np.ndarray  # columns orthonormal

    @property
    def ground_energy(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def ground_state(self) -> np.ndarray:
        return self.eigenvectors[:, 0]


def _hermiticity_defect(mat: np.ndarray) -> float:
    return float(np.max(np.abs(mat - mat.conj().T))) if mat.size else 0.0


def _require_hermitian(mat: np.ndarray) -> np.ndarray:
    mat = np.asarray(mat)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise EigensolverError(f"expected a square matrix, got shape {mat.shape}")
    scale = max(1.0, float(np.max(np.abs(mat)))) if mat.size else 1.0
    defect = _hermiticity_defect(mat)
    if defect > HERMITICITY_TOL * scale:
        raise EigensolverError(
            f"matrix is not Hermitian: max|H - H^dag| = {defect:.3e} "
            f"exceeds {HERMITICITY_TOL:.0e} * {scale:.3e}"
        )
    # symmetrize so LAPACK sees an exactly Hermitian operator
    return 0.5 * (mat + mat.conj().T)


def eigh(ham: np.ndarray) -> EigenDecomposition:
    """Full spectral factorization of a dense complex Hermitian matrix.

    The input is checked for Hermiticity and symmetrized as (H + H^dag)/2
    before the solve. Raises EigensolverError on non-convergence, with a
    short condition summary of the offending matrix.
    """
    ham = _require_hermitian(np.asarray(ham, dtype=complex))
    try:
        w, u = sla.eigh(ham, check_finite=False)
    except (sla.LinAlgError, np.linalg.LinAlgError) as exc:
        raise EigensolverError(
            "eigensolver failed: "
            f"dim={ham.shape[0]}, max|H|={np.max(np.abs(ham)):.3e}, "
            f"trace={np.trace(ham).real:.6e} ({exc})"
        ) from exc
    return EigenDecomposition(dim=ham.shape[0], eigenvalues=w, eigenvectors=u)


def lowest_eigenvalues(ham: np.ndarray, k: int) -> np.ndarray:
    """Lowest k eigenvalues of a Hermitian matrix, ascending.

    Same dense LAPACK machinery as eigh, restricted to a spectral subset;
    used on the hot path of gauge scans where the full eigenvector set is
    not needed.
    """
    ham = _require_hermitian(np.asarray(ham, dtype=complex))
    k = min(int(k), ham.shape[0])
    try:
        return sla.eigh(
            ham, check_finite=False, subset_by_index=[0, k - 1], eigvals_only=True
        )
    except (sla.LinAlgError, np.linalg.LinAlgError) as exc:
        raise EigensolverError(
            f"eigensolver failed: dim={ham.shape[0]}, subset k={k} ({exc})"
        ) from exc


def ground_pair(ham: np.ndarray) -> tuple[float, np.ndarray]:
    """Ground eigenvalue and normalized ground vector."""
    ham = _require_hermitian(np.asarray(ham, dtype=complex))
    try:
        w, u = sla.eigh(ham, check_finite=False, subset_by_index=[0, 0])
    except (sla.LinAlgError, np.linalg.LinAlgError) as exc:
        raise EigensolverError(f"eigensolver failed: dim={ham.shape[0]} ({exc})") from exc
    vec = u[:, 0]
    return float(w[0]), vec / np.linalg.norm(vec)


@dataclass(frozen=True)
class ScanResult1D:
    """Coarse grid scan plus golden-section refinement of a scalar metric."""

    grid: np.ndarray
    values: np.ndarray
    argmin: float
    min_value: float
    boundary: bool = False  # best grid sample sat on the scan edge
    evaluations: int = field(default=0, compare=False)


def _golden_refine(f, lo: float, hi: float, tol: float) -> list[tuple[float, float]]:
    """Golden-section sweep of [lo, hi]; returns every evaluated (x, f(x))."""
    pts: list[tuple[float, float]] = []
    a, b = float(lo), float(hi)
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = float(f(c)), float(f(d))
    pts += [(c, fc), (d, fd)]
    while (b - a) > tol:
        if fc <= fd:  # ties shrink toward the smaller abscissa
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = float(f(c))
            pts.append((c, fc))
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = float(f(d))
            pts.append((d, fd))
    return pts


def scan_minimize(
    f,
    lo: float,
    hi: float,
    grid_points: int = 61,
    tol: float = 1e-6,
) -> ScanResult1D:
    """Minimize a scalar function by grid scan + golden-section refinement.

    The returned argmin is never worse than the best coarse-grid sample:
    all evaluated points compete, with exact ties resolved toward the
    smallest abscissa. A best sample on the scan edge sets the `boundary`
    flag (the enclosing range was probably too narrow).
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    if grid_points < 8:
        raise ValueError(f"grid_points must be >= 8, got {grid_points}")
    grid = np.linspace(lo, hi, int(grid_points))
    values = np.array([float(f(x)) for x in grid])
    best = int(np.lexsort((grid, values))[0])  # min value, ties -> smallest x
    boundary = best == 0 or best == len(grid) - 1

    candidates = list(zip(grid.tolist(), values.tolist()))
    ref_lo = grid[max(best - 1, 0)]
    ref_hi = grid[min(best + 1, len(grid) - 1)]
    if ref_hi - ref_lo > tol:
        candidates += _golden_refine(f, ref_lo, ref_hi, tol)

    arg, val = min(candidates, key=lambda p: (p[1], p[0]))
    return ScanResult1D(
        grid=grid,
        values=values,
        argmin=float(arg),
        min_value=float(val),
        boundary=boundary,
        evaluations=len(candidates),
    )


def minimize_scalar(
    f,
    lo: float,
    hi: float,
    grid_points: int = 61,
    tol: float = 1e-6,
) -> tuple[float, float]:
    """Convenience wrapper around scan_minimize returning (argmin, min).

    Warns when the minimum sits on the interval boundary.
    """
    res = scan_minimize(f, lo, hi, grid_points=grid_points, tol=tol)
    if res.boundary:
        warnings.warn(
            f"boundary minimum at x={res.argmin:g} on [{lo:g}, {hi:g}]; "
            "scan range may be too narrow",
            stacklevel=2,
        )
    return res.argmin, res.min_value


def trapezoid(values: np.ndarray, dt: float) -> float:
    """Composite trapezoid rule over uniformly spaced samples."""
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or values.size < 2:
        raise ValueError("trapezoid needs at least 2 samples")
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    return float(dt * (0.5 * (values[0] + values[-1]) + values[1:-1].sum()))
