"""Hamiltonian builders at every reduction level.

The chain of exact transformations is

    full (2N+1)  --W-->  collective 5-level  --T-->  (A B; B' C) blocks

followed by adiabatic elimination of the fast cavity branch (eigenvalues
+-sqrt(N) G), which yields the effective 3-level Hamiltonian.  Everything is
expressed in the frame that removes the laser carrier, so the only time
dependence left is the pulse pair (Omega, Omega') and, when the resonant
approximation is switched off, phases rotating at the marking shift delta.

Couplings:  Sigma  = Omega + exp(-i delta t) Omega'   (unmarked atoms)
            Sigma' = Omega' + exp(+i delta t) Omega   (marked atom)
with the convention <gprime|H|e> = Sigma.  Under the resonant approximation
these collapse to Omega and Omega'.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .statespace import (
    Level,
    StateVector,
    check_atom_count,
    default_mixing_matrix,
    level_dim,
    validate_mixing_matrix,
)

HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class SystemParams:
    """Physical configuration: atom count, cavity coupling, marking shift."""

    n_atoms: int
    g: float
    delta: float = 0.0
    rwa: bool = True

    def __post_init__(self):
        check_atom_count(self.n_atoms)
        if self.g <= 0:
            raise ValueError(f"cavity coupling must be positive, got {self.g}")
        if self.delta < 0:
            raise ValueError(f"marking shift must be nonnegative, got {self.delta}")
        if not self.rwa and self.delta == 0:
            raise ValueError("counter-rotating terms oscillate at delta; "
                             "delta must be positive when rwa is off")


@dataclass(frozen=True)
class HermitianOperator:
    """Dense Hermitian matrix tagged with the basis it acts on."""

    level: Level
    matrix: np.ndarray
    n_atoms: int

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        dim = level_dim(self.level, self.n_atoms)
        if m.shape != (dim, dim):
            raise ValueError(f"expected a {dim}x{dim} matrix, got {m.shape}")
        scale = max(np.abs(m).max(), 1.0)
        if np.abs(m - m.conj().T).max() > HERMITICITY_TOL * scale:
            raise ValueError("matrix is not Hermitian")

    def to_text(self) -> str:
        """Row-major dense serialization, 're im' pairs."""
        lines = [f"# level {self.level.value}  n_atoms {self.n_atoms}  dim {self.matrix.shape[0]}"]
        for row in self.matrix:
            lines.append(" ".join(f"{z.real:.17e} {z.imag:.17e}" for z in row))
        return "\n".join(lines) + "\n"


def _check_amplitudes(omega: float, omega_prime: float):
    if omega < 0 or omega_prime < 0:
        raise ValueError("pulse amplitudes must be nonnegative")


def coupling_unmarked(params: SystemParams, omega, omega_prime, t=0.0):
    """Sigma(t): laser coupling seen by the unmarked atoms."""
    if params.rwa:
        return complex(omega)
    return omega + np.exp(-1j * params.delta * t) * omega_prime


def coupling_marked(params: SystemParams, omega, omega_prime, t=0.0):
    """Sigma'(t): laser coupling seen by the marked atom."""
    if params.rwa:
        return complex(omega_prime)
    return omega_prime + np.exp(1j * params.delta * t) * omega


def build_full(params: SystemParams, omega: float, omega_prime: float,
               t: float = 0.0) -> HermitianOperator:
    """Full single-photon-sector Hamiltonian, dimension 2N+1.

    Basis order: gprime_1..N, e_1..N, photon.  Zero diagonal; each e_j
    couples to the photon with strength G and to its own gprime_j with
    Sigma (Sigma' for the marked atom j=N).
    """
    _check_amplitudes(omega, omega_prime)
    n = params.n_atoms
    sig = coupling_unmarked(params, omega, omega_prime, t)
    sig_p = coupling_marked(params, omega, omega_prime, t)
    h = np.zeros((2 * n + 1, 2 * n + 1), dtype=complex)
    ph = 2 * n
    for j in range(n):
        e_j = n + j
        h[j, e_j] = sig_p if j == n - 1 else sig   # <gprime_j|H|e_j>
        h[e_j, j] = np.conj(h[j, e_j])
        h[e_j, ph] = params.g
        h[ph, e_j] = params.g
    return HermitianOperator(Level.FULL, h, n)


def build_h1(params: SystemParams, omega: float, omega_prime: float,
             t: float = 0.0) -> HermitianOperator:
    """Exact 5-level collective Hamiltonian.

    Basis order: gprime_u, gprime_N, photon, e_u, e_N.  The collective
    unmarked excited state couples to the photon with sqrt(N-1) G.
    """
    _check_amplitudes(omega, omega_prime)
    n = params.n_atoms
    sig = coupling_unmarked(params, omega, omega_prime, t)
    sig_p = coupling_marked(params, omega, omega_prime, t)
    h = np.zeros((5, 5), dtype=complex)
    gu, gn, ph, eu, en = range(5)
    h[gu, eu] = sig
    h[gn, en] = sig_p
    h[ph, eu] = np.sqrt(n - 1) * params.g
    h[ph, en] = params.g
    h = h + h.conj().T
    return HermitianOperator(Level.COLLECTIVE5, h, n)


def w_matrix(n_atoms: int, u: np.ndarray | None = None) -> np.ndarray:
    """Unitary from the collective basis to the full basis, (2N+1)x(2N+1).

    Column k holds the k-th collective basis vector in full coordinates.
    The first five columns follow the COLLECTIVE5 ordering; the remaining
    2(N-2) columns span the decoupled residual combinations.
    """
    n = check_atom_count(n_atoms)
    if u is None:
        u = default_mixing_matrix(n)
    ucol = validate_mixing_matrix(u, n)
    u = np.asarray(u, dtype=complex)
    rest = np.delete(np.arange(n - 1), ucol)

    dim = 2 * n + 1
    w = np.zeros((dim, dim), dtype=complex)
    # coupled block: gprime_u, gprime_N, photon, e_u, e_N
    w[: n - 1, 0] = u[:, ucol]
    w[n - 1, 1] = 1.0
    w[2 * n, 2] = 1.0
    w[n : 2 * n - 1, 3] = u[:, ucol]
    w[2 * n - 1, 4] = 1.0
    # residual combinations
    for k, col in enumerate(rest):
        w[: n - 1, 5 + k] = u[:, col]
        w[n : 2 * n - 1, 5 + n - 2 + k] = u[:, col]
    return w


@dataclass(frozen=True)
class CavityEigensystem:
    """Spectrum of the cavity block on (photon, e_u, e_N)."""

    n_atoms: int
    gamma0: float
    gamma_plus: float
    gamma_minus: float
    vec_gamma0: np.ndarray
    vec_plus: np.ndarray
    vec_minus: np.ndarray


def cavity_eigensystem(params: SystemParams) -> CavityEigensystem:
    """Closed-form eigensystem of the cavity block: 0 and +-sqrt(N) G.

    Vectors are on (photon, e_u, e_N), signs fixed by a nonnegative e_N
    component.  The zero mode carries no photon weight.
    """
    n, g = params.n_atoms, params.g
    r = 1.0 / np.sqrt(n)
    s = np.sqrt(1.0 - 1.0 / n)
    v0 = np.array([0.0, -r, s])
    vp = np.array([1.0, s, r]) / np.sqrt(2.0)
    vm = np.array([-1.0, s, r]) / np.sqrt(2.0)
    return CavityEigensystem(n, 0.0, np.sqrt(n) * g, -np.sqrt(n) * g, v0, vp, vm)


def t_matrix(params: SystemParams) -> np.ndarray:
    """5x5 unitary diagonalizing the cavity block inside the 5-level basis.

    Columns: gprime_u, gprime_N, gamma0, gamma_plus, gamma_minus, expressed
    on (gprime_u, gprime_N, photon, e_u, e_N).
    """
    eig = cavity_eigensystem(params)
    t = np.zeros((5, 5), dtype=complex)
    t[0, 0] = 1.0
    t[1, 1] = 1.0
    t[2:, 2] = eig.vec_gamma0
    t[2:, 3] = eig.vec_plus
    t[2:, 4] = eig.vec_minus
    return t


def build_blocks(params: SystemParams, omega: float, omega_prime: float,
                 t: float = 0.0):
    """Blocks (A, B, C) of the T-conjugated 5-level Hamiltonian.

    A is 3x3 on (gprime_u, gprime_N, gamma0); B is 3x2 with two identical
    columns, which makes the elimination correction B C^-1 B' vanish
    identically; C = diag(+sqrt(N) G, -sqrt(N) G).
    """
    _check_amplitudes(omega, omega_prime)
    n = params.n_atoms
    sig = coupling_unmarked(params, omega, omega_prime, t)
    sig_p = coupling_marked(params, omega, omega_prime, t)
    rn = np.sqrt(n)
    a = np.zeros((3, 3), dtype=complex)
    a[0, 2] = -sig / rn
    a[1, 2] = np.sqrt(n - 1) * sig_p / rn
    a = a + a.conj().T
    col = np.array([np.sqrt(n - 1) * sig, sig_p, 0.0]) / np.sqrt(2 * n)
    b = np.column_stack([col, col])
    c = np.diag([rn * params.g, -rn * params.g]).astype(complex)
    return a, b, c


def build_heff(params: SystemParams, omega: float, omega_prime: float) -> HermitianOperator:
    """Effective 3-level Hamiltonian on (gprime_N, gamma0, gprime_u).

    Uses the averaged (resonant) couplings, so it carries no explicit
    time-dependent phase.
    """
    _check_amplitudes(omega, omega_prime)
    n = params.n_atoms
    rn = np.sqrt(n)
    h = np.zeros((3, 3), dtype=complex)
    h[0, 1] = h[1, 0] = np.sqrt(n - 1) * omega_prime / rn
    h[1, 2] = h[2, 1] = -omega / rn
    return HermitianOperator(Level.EFFECTIVE3, h, n)


@dataclass(frozen=True)
class AdiabaticFrame:
    """Instantaneous eigensystem of the effective Hamiltonian.

    theta parameterizes the dark state between the marked and collective
    unmarked ground states; lam is the gap to the bright states.  The
    eigenvectors live on the EFFECTIVE3 basis (gprime_N, gamma0, gprime_u).
    """

    n_atoms: int
    theta: float
    theta_dot: float
    lam: float
    vec_zero: np.ndarray
    vec_plus: np.ndarray
    vec_minus: np.ndarray


def adiabatic_frame(params: SystemParams, omega: float, omega_prime: float,
                    omega_dot: float = 0.0, omega_prime_dot: float = 0.0) -> AdiabaticFrame:
    """Mixing angle, gap and eigenvectors at one instant.

    tan(theta) = -sqrt(N-1) Omega'/Omega with theta in (-pi/2, 0];
    lam = sqrt((N-1) Omega'^2 + Omega^2) / sqrt(N).
    """
    _check_amplitudes(omega, omega_prime)
    if omega == 0 and omega_prime == 0:
        raise ValueError("mixing angle is undefined when both pulses vanish")
    n = params.n_atoms
    b = np.sqrt(n - 1) * omega_prime
    b_dot = np.sqrt(n - 1) * omega_prime_dot
    theta = np.arctan2(-b, omega)
    # d/dt atan2(-b, a) without dividing by a alone
    theta_dot = (b * omega_dot - b_dot * omega) / (omega**2 + b**2)
    lam = np.sqrt((n - 1) * omega_prime**2 + omega**2) / np.sqrt(n)

    c, s = np.cos(theta), np.sin(theta)
    vec_zero = np.array([c, 0.0, -s])
    vec_plus = np.array([s, -1.0, c]) / np.sqrt(2.0)
    vec_minus = np.array([s, 1.0, c]) / np.sqrt(2.0)
    return AdiabaticFrame(n, float(theta), float(theta_dot), float(lam),
                          vec_zero, vec_plus, vec_minus)


def build_heff_adiabatic(frame: AdiabaticFrame) -> HermitianOperator:
    """Effective Hamiltonian in the rotating adiabatic basis (plus, zero, minus).

    Diagonal (lam, 0, -lam); the frame rotation couples neighbours with
    +-(i/sqrt(2)) theta_dot.
    """
    q = frame.theta_dot / np.sqrt(2.0)
    h = np.array([
        [frame.lam, 1j * q, 0.0],
        [-1j * q, 0.0, -1j * q],
        [0.0, 1j * q, -frame.lam],
    ])
    return HermitianOperator(Level.ADIABATIC3, h, frame.n_atoms)


def collective_to_effective(amps5: np.ndarray, params: SystemParams) -> np.ndarray:
    """Project 5-level amplitudes onto (gprime_N, gamma0, gprime_u).

    The leftover weight sits in the fast gamma_+- branch.
    """
    amps5 = np.asarray(amps5, dtype=complex)
    eig = cavity_eigensystem(params)
    gamma0 = eig.vec_gamma0 @ amps5[2:]
    return np.array([amps5[1], gamma0, amps5[0]])


def effective_state(state: StateVector, params: SystemParams) -> np.ndarray:
    if state.level is not Level.COLLECTIVE5:
        raise ValueError("expected a COLLECTIVE5-level state")
    return collective_to_effective(state.amplitudes, params)
