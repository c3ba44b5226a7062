"""Arbitrary-gauge Rabi Hamiltonian with finite atomic and photon cutoffs.

The gauge parameter alpha interpolates between the Coulomb gauge
(alpha = 0, momentum coupling) and the dipole gauge (alpha = 1, dipole
coupling). The A^2 term is absorbed into a renormalized cavity frequency,
so the photon mode is always the Bogoliubov-rotated one belonging to the
same alpha.

Composite basis layout: atomic level i in [0, d), photon number n in
[0, N), flattened as i*N + n.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .atomic import AtomicSpectrum

ASSEMBLY_HERMITICITY_TOL = 1e-12
SYMMETRY_TOL = 1e-8


@dataclass(frozen=True)
class ModelParams:
    """Gauge, cavity and truncation parameters of the coupled model."""

    alpha: float
    omega: float
    q: float
    m: float
    d: int
    n_photon: int
    v: float = 1.0
    eps0: float = 1.0

    def __post_init__(self):
        if self.omega <= 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if self.m <= 0:
            raise ValueError(f"mass must be positive, got {self.m}")
        if self.v <= 0 or self.eps0 <= 0:
            raise ValueError("mode volume and permittivity must be positive")
        if self.d < 2:
            raise ValueError(f"atomic truncation d must be >= 2, got {self.d}")
        if self.n_photon < 2:
            raise ValueError(f"photon cutoff must be >= 2, got {self.n_photon}")

    @property
    def dim(self) -> int:
        return self.d * self.n_photon

    def with_cutoffs(self, d: int, n_photon: int) -> "ModelParams":
        return replace(self, d=d, n_photon=n_photon)

    def with_alpha(self, alpha: float) -> "ModelParams":
        return replace(self, alpha=alpha)


def renormalized_frequency(params: ModelParams) -> float:
    """Cavity frequency after absorbing the A^2 term, >= omega."""
    shift = (1.0 - params.alpha) ** 2 * params.q**2 / (params.m * params.v * params.eps0)
    return float(np.sqrt(params.omega**2 + shift))


def mode_normalization(params: ModelParams) -> float:
    """Field amplitude g_alpha = sqrt(1/(2 omega_alpha v)) of the rotated mode."""
    return float(np.sqrt(1.0 / (2.0 * renormalized_frequency(params) * params.v)))


def photon_operators(n_photon: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Truncated ladder matrices (b, b_dagger, number) on N Fock states."""
    if n_photon < 2:
        raise ValueError(f"photon cutoff must be >= 2, got {n_photon}")
    b = np.zeros((n_photon, n_photon), dtype=complex)
    root = np.sqrt(np.arange(1, n_photon))
    b[np.arange(n_photon - 1), np.arange(1, n_photon)] = root
    bdag = b.conj().T
    number = np.diag(np.arange(n_photon, dtype=float)).astype(complex)
    return b, bdag, number


def photon_number_operator(d: int, n_photon: int) -> np.ndarray:
    """Identity_d tensor b_dagger b on the composite space."""
    return np.kron(np.eye(d), np.diag(np.arange(n_photon, dtype=float))).astype(complex)


def compose_index(i: int, n: int, n_photon: int) -> int:
    return i * n_photon + n


def split_index(k: int, n_photon: int) -> tuple[int, int]:
    return divmod(k, n_photon)


def _check_compatible(atomic: AtomicSpectrum, params: ModelParams) -> None:
    if atomic.n_levels < params.d:
        raise ValueError(
            f"atomic spectrum holds {atomic.n_levels} levels, need d={params.d}"
        )
    if not np.isclose(atomic.mass, params.m, rtol=1e-12, atol=0.0):
        raise ValueError(
            f"mass mismatch: atomic solved at m={atomic.mass!r}, params carry {params.m!r}"
        )


def _hermiticity_defect(mat: np.ndarray) -> float:
    return float(np.max(np.abs(mat - mat.conj().T)))


def assemble(atomic: AtomicSpectrum, params: ModelParams) -> np.ndarray:
    """Dense (d*N)x(d*N) gauge-parameterized Hamiltonian.

    Terms: atomic levels, rotated-mode energy omega_alpha (n + 1/2), the
    squared truncated dipole (projected before squaring), the momentum
    coupling to (b + b^dag) and the dipole coupling to (b^dag - b).
    """
    _check_compatible(atomic, params)
    energies, x, p = atomic.truncated(params.d)
    w_a = renormalized_frequency(params)
    g_a = mode_normalization(params)
    b, bdag, number = photon_operators(params.n_photon)

    eye_atom = np.eye(params.d)
    eye_ph = np.eye(params.n_photon)

    x_sq = x @ x
    x_sq = 0.5 * (x_sq + x_sq.conj().T)

    ham = np.kron(np.diag(energies).astype(complex), eye_ph)
    ham += w_a * np.kron(eye_atom, number + 0.5 * eye_ph)
    ham += (params.alpha**2 * params.q**2 / (2.0 * params.v * params.eps0)) * np.kron(
        x_sq, eye_ph
    )
    ham += (-(1.0 - params.alpha) * params.q / params.m) * g_a * np.kron(p, bdag + b)
    ham += (
        1j * (params.alpha * params.q / params.eps0) * w_a * g_a * np.kron(x, bdag - b)
    )

    defect = _hermiticity_defect(ham)
    if defect > ASSEMBLY_HERMITICITY_TOL:
        raise ValueError(
            f"assembled Hamiltonian not Hermitian (defect {defect:.3e}); "
            "x/p matrices are likely inconsistent"
        )
    return ham


def two_level_closed_form(atomic: AtomicSpectrum, params: ModelParams) -> np.ndarray:
    """Two-level form: (Omega/2) sigma_z + omega_alpha (n + 1/2) + shift
    - (1-alpha) q g_alpha Omega x01 sigma_y (b^dag + b)
    + i alpha (q/eps0) omega_alpha g_alpha x01 sigma_x (b^dag - b).

    Requires a symmetric potential (vanishing diagonal dipole); the basis
    layout matches assemble(d=2) entry for entry.
    """
    if params.d != 2:
        raise ValueError(f"closed form is for d=2, got d={params.d}")
    _check_compatible(atomic, params)
    if max(abs(atomic.x_mat[0, 0]), abs(atomic.x_mat[1, 1])) > SYMMETRY_TOL:
        raise ValueError("closed form requires symmetric potential")

    e0, e1 = float(atomic.energies[0]), float(atomic.energies[1])
    gap = e1 - e0
    r = complex(atomic.x_mat[0, 1])

    w_a = renormalized_frequency(params)
    g_a = mode_normalization(params)
    _, bdag, number = photon_operators(params.n_photon)
    b = bdag.conj().T
    eye_ph = np.eye(params.n_photon)

    # Pauli-type matrices in the (ground, excited) ordering, with the
    # dipole phase carried on the off-diagonals
    sigma_z = np.diag([-1.0, 1.0]).astype(complex)
    sigma_x_r = np.array([[0.0, r], [np.conj(r), 0.0]], dtype=complex)
    sigma_y_r = np.array([[0.0, -1j * r], [1j * np.conj(r), 0.0]], dtype=complex)

    shift = (e0 + e1) / 2.0 + (
        params.alpha**2 * params.q**2 / (2.0 * params.v * params.eps0)
    ) * abs(r) ** 2

    ham = shift * np.kron(np.eye(2, dtype=complex), eye_ph)
    ham += (gap / 2.0) * np.kron(sigma_z, eye_ph)
    ham += w_a * np.kron(np.eye(2, dtype=complex), number + 0.5 * eye_ph)
    ham += (-(1.0 - params.alpha) * params.q * g_a * gap) * np.kron(sigma_y_r, bdag + b)
    ham += (1j * params.alpha * params.q / params.eps0) * w_a * g_a * np.kron(
        sigma_x_r, bdag - b
    )
    return ham


def embed_state(
    psi_small: np.ndarray, d_small: int, d_large: int, n_photon: int
) -> np.ndarray:
    """Zero-pad the atomic sector of a composite state; exact norm keep."""
    psi_small = np.asarray(psi_small)
    if psi_small.shape != (d_small * n_photon,):
        raise ValueError(
            f"state length {psi_small.shape} does not match d={d_small}, N={n_photon}"
        )
    if d_large < d_small:
        raise ValueError(f"cannot embed d={d_small} into smaller d={d_large}")
    out = np.zeros((d_large, n_photon), dtype=complex)
    out[:d_small] = psi_small.reshape(d_small, n_photon)
    return out.reshape(d_large * n_photon)
