"""1D atomic eigenproblem: levels and dipole/momentum matrix elements.

Built-in potentials (square well, harmonic) are solved in closed form;
tabulated potentials go through a uniform-grid finite-difference
discretization with hard walls. All built-ins are symmetric about x = 0,
so their dipole matrices obey the parity selection rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.linalg as sla

from .errors import InsufficientGridError

PARITY_TOL = 1e-8
HERMITICITY_TOL = 1e-10

# estimated relative discretization error allowed for the top level
GRID_ERROR_CAP = 0.05


@dataclass(frozen=True)
class SquareWell:
    """Infinite well of the given width, centered on the origin."""

    width: float = 1.0

    def __post_init__(self):
        if self.width <= 0:
            raise ValueError(f"square-well width must be positive, got {self.width}")


@dataclass(frozen=True)
class Harmonic:
    """V(x) = stiffness * x^2 / 2."""

    stiffness: float = 1.0

    def __post_init__(self):
        if self.stiffness <= 0:
            raise ValueError(f"harmonic stiffness must be positive, got {self.stiffness}")


@dataclass(frozen=True)
class Tabulated:
    """Potential sampled on a strictly increasing uniform grid."""

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        if grid.ndim != 1 or grid.size < 16:
            raise ValueError("tabulated grid needs at least 16 points")
        if values.shape != grid.shape:
            raise ValueError("tabulated grid and values must have equal length")
        steps = np.diff(grid)
        if np.any(steps <= 0):
            raise ValueError("tabulated grid must be strictly increasing")
        h = steps[0]
        if np.max(np.abs(steps - h)) > 1e-8 * h:
            raise ValueError("tabulated grid must be uniformly spaced")
        if not np.all(np.isfinite(values)):
            raise ValueError("tabulated potential values must be finite")


Potential = SquareWell | Harmonic | Tabulated


@dataclass(frozen=True)
class AtomicSpectrum:
    """Eigenvalues plus position/momentum matrices in the eigenbasis."""

    n_levels: int
    energies: np.ndarray
    x_mat: np.ndarray
    p_mat: np.ndarray
    mass: float

    def __post_init__(self):
        n = self.n_levels
        if n < 2:
            raise ValueError("need at least 2 atomic levels")
        if self.energies.shape != (n,):
            raise ValueError("energies shape mismatch")
        if self.x_mat.shape != (n, n) or self.p_mat.shape != (n, n):
            raise ValueError("matrix element shape mismatch")
        if np.any(np.diff(self.energies) < -1e-12):
            raise ValueError("energies must be ascending")
        for name, mat in (("x_mat", self.x_mat), ("p_mat", self.p_mat)):
            scale = max(1.0, float(np.max(np.abs(mat))))
            defect = float(np.max(np.abs(mat - mat.conj().T)))
            if defect > HERMITICITY_TOL * scale:
                raise ValueError(f"{name} not Hermitian: defect {defect:.3e}")

    @property
    def transition_frequency(self) -> float:
        """Gap between the two lowest levels."""
        return float(self.energies[1] - self.energies[0])

    def truncated(self, d: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(energies, x, p) restricted to the lowest d levels."""
        if d > self.n_levels:
            raise ValueError(f"requested d={d} levels, spectrum has {self.n_levels}")
        return self.energies[:d], self.x_mat[:d, :d], self.p_mat[:d, :d]


def fix_mass_for_unit_gap(potential: Potential) -> float:
    """Mass that puts the lowest transition frequency at exactly 1."""
    if isinstance(potential, SquareWell):
        # gap = 3 pi^2 / (2 m L^2)
        return 3.0 * np.pi**2 / (2.0 * potential.width**2)
    if isinstance(potential, Harmonic):
        # gap = sqrt(k/m)
        return potential.stiffness
    raise ValueError("mass must be supplied explicitly for tabulated potentials")


def trk_sum(spectrum: AtomicSpectrum, level: int = 0) -> float:
    """Oscillator-strength sum 2m * sum_j (e_j - e_i) |x_ij|^2 (-> 1 exactly)."""
    de = spectrum.energies - spectrum.energies[level]
    return float(2.0 * spectrum.mass * np.sum(de * np.abs(spectrum.x_mat[level]) ** 2))


def check_parity_selection(spectrum: AtomicSpectrum, tol: float = PARITY_TOL) -> None:
    """Assert x_ij = 0 for equal-parity levels of a symmetric potential."""
    n = spectrum.n_levels
    idx = np.arange(n)
    same_parity = (idx[:, None] + idx[None, :]) % 2 == 0
    worst = float(np.max(np.abs(spectrum.x_mat[same_parity])))
    if worst > tol:
        raise ValueError(f"parity selection violated: |x_ij| = {worst:.3e} > {tol:.0e}")


def _square_well_spectrum(width: float, mass: float, n_levels: int) -> AtomicSpectrum:
    # quantum numbers n = 1..n_levels; eigenfunctions sqrt(2/L) cos(n pi x / L)
    # for odd n, sqrt(2/L) sin(n pi x / L) for even n
    n = np.arange(1, n_levels + 1)
    energies = (n * np.pi) ** 2 / (2.0 * mass * width**2)

    # sign linking the cos/sin convention to the (0, L) sine basis
    s = np.where(np.isin(n % 4, (0, 1)), 1.0, -1.0)
    ni = n[:, None].astype(float)
    nj = n[None, :].astype(float)
    opposite = (n[:, None] + n[None, :]) % 2 == 1
    denom = np.where(opposite, (ni**2 - nj**2) ** 2, 1.0)
    x = np.where(opposite, -8.0 * width * ni * nj / (np.pi**2 * denom), 0.0)
    x *= s[:, None] * s[None, :]

    pden = np.where(opposite, ni**2 - nj**2, 1.0)
    p = np.where(opposite, -1j * 4.0 * ni * nj / (width * pden), 0.0)
    p *= s[:, None] * s[None, :]

    return AtomicSpectrum(
        n_levels=n_levels,
        energies=energies,
        x_mat=x.astype(complex),
        p_mat=p.astype(complex),
        mass=mass,
    )


def _harmonic_spectrum(stiffness: float, mass: float, n_levels: int) -> AtomicSpectrum:
    w = np.sqrt(stiffness / mass)
    energies = w * (np.arange(n_levels) + 0.5)
    x = np.zeros((n_levels, n_levels), dtype=complex)
    p = np.zeros((n_levels, n_levels), dtype=complex)
    for k in range(n_levels - 1):
        amp = np.sqrt((k + 1) / (2.0 * mass * w))
        x[k, k + 1] = x[k + 1, k] = amp
        p[k, k + 1] = -1j * mass * w * amp
        p[k + 1, k] = 1j * mass * w * amp
    return AtomicSpectrum(
        n_levels=n_levels, energies=energies, x_mat=x, p_mat=p, mass=mass
    )


def _tabulated_spectrum(pot: Tabulated, mass: float, n_levels: int) -> AtomicSpectrum:
    grid = pot.grid
    h = float(grid[1] - grid[0])
    size = grid.size
    if n_levels > size:
        raise InsufficientGridError(
            f"insufficient grid: {n_levels} levels requested on {size} points"
        )

    # 3-point stencil with hard walls one spacing beyond the grid ends;
    # the operator is real symmetric tridiagonal, solved by the dense
    # LAPACK tridiagonal driver
    diag = 1.0 / (mass * h**2) + pot.values
    off = np.full(size - 1, -0.5 / (mass * h**2))
    energies, vectors = sla.eigh_tridiagonal(
        diag, off, select="i", select_range=(0, n_levels - 1)
    )

    # plane-wave dispersion error of the 3-point stencil: rel. err ~ (k h)^2 / 12
    v_min = float(np.min(pot.values))
    k_top_sq = 2.0 * mass * max(energies[-1] - v_min, 0.0)
    if k_top_sq * h**2 / 12.0 >= GRID_ERROR_CAP:
        raise InsufficientGridError(
            "insufficient grid: estimated discretization error "
            f"{k_top_sq * h**2 / 12.0:.2%} of the top level exceeds {GRID_ERROR_CAP:.0%}"
        )

    # (1/sqrt(h))-scaled eigenvectors are orthonormal under the h-weighted
    # product; phase fixed so the first significant component is real positive
    vecs = vectors / np.sqrt(h)
    for j in range(n_levels):
        col = vecs[:, j]
        lead = col[np.argmax(np.abs(col) > 1e-8 * np.max(np.abs(col)))]
        if lead < 0:
            vecs[:, j] = -col

    weighted = vecs.T * grid[None, :]
    x = (h * (weighted @ vecs)).astype(complex)
    x = 0.5 * (x + x.conj().T)

    de = energies[:, None] - energies[None, :]
    p = 1j * mass * de * x

    return AtomicSpectrum(
        n_levels=n_levels, energies=energies, x_mat=x, p_mat=p, mass=mass
    )


def solve_atomic(potential: Potential, mass: float, n_levels: int) -> AtomicSpectrum:
    """Solve H = p^2/2m + V(x) for the lowest n_levels eigenpairs.

    Built-ins use closed forms; tabulated potentials a dense
    finite-difference solve with the momentum matrix from the commutator
    relation p_ij = i m (e_i - e_j) x_ij.
    """
    if n_levels < 2:
        raise ValueError(f"n_levels must be >= 2, got {n_levels}")
    if mass <= 0:
        raise ValueError(f"mass must be positive, got {mass}")
    if isinstance(potential, SquareWell):
        spec = _square_well_spectrum(potential.width, mass, n_levels)
        check_parity_selection(spec)
        return spec
    if isinstance(potential, Harmonic):
        spec = _harmonic_spectrum(potential.stiffness, mass, n_levels)
        check_parity_selection(spec)
        return spec
    if isinstance(potential, Tabulated):
        return _tabulated_spectrum(potential, mass, n_levels)
    raise TypeError(f"unknown potential type: {type(potential)!r}")


def read_potential_csv(path: str | Path) -> Tabulated:
    """Load a tabulated potential from a two-column CSV with header `x,V`."""
    path = Path(path)
    with path.open() as fh:
        header = fh.readline().strip()
        if [c.strip() for c in header.split(",")] != ["x", "V"]:
            raise ValueError(f"{path}: expected header 'x,V', got {header!r}")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    if data.shape[1] != 2:
        raise ValueError(f"{path}: expected two columns, got {data.shape[1]}")
    return Tabulated(grid=data[:, 0], values=data[:, 1])
