"""Basis enumeration and state vectors for the single-photon sector.

Four nested descriptions of the same physics are used:

* ``FULL`` (dimension 2N+1): one label ``gprime_j`` per atom for the
  laser-coupled ground state, one label ``e_j`` per excited state, and a
  single ``photon`` label for the cavity excitation.  The marked atom always
  carries index N.
* ``COLLECTIVE5``: the five states that stay coupled once the unmarked atoms
  are bundled into uniform superpositions, ordered
  (gprime_u, gprime_N, photon, e_u, e_N).
* ``EFFECTIVE3``: the slow subspace after the cavity branch is eliminated,
  ordered (gprime_N, gamma0, gprime_u).
* ``ADIABATIC3``: the instantaneous eigenbasis (plus, zero, minus).

All objects here are immutable; operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

NORM_TOL = 1e-9
UNITARY_TOL = 1e-12


class Level(Enum):
    FULL = "full"
    COLLECTIVE5 = "collective5"
    EFFECTIVE3 = "effective3"
    ADIABATIC3 = "adiabatic3"


COLLECTIVE5_TAGS = ("gprime_u", "gprime_N", "photon", "e_u", "e_N")
EFFECTIVE3_TAGS = ("gprime_N", "gamma0", "gprime_u")
ADIABATIC3_TAGS = ("plus", "zero", "minus")


def full_tags(n_atoms: int) -> tuple[str, ...]:
    """Ordered labels of the full sector: gprime_1..N, e_1..N, photon."""
    tags = [f"gprime_{j}" for j in range(1, n_atoms + 1)]
    tags += [f"e_{j}" for j in range(1, n_atoms + 1)]
    tags.append("photon")
    return tuple(tags)


def level_tags(level: Level, n_atoms: int) -> tuple[str, ...]:
    if level is Level.FULL:
        return full_tags(n_atoms)
    if level is Level.COLLECTIVE5:
        return COLLECTIVE5_TAGS
    if level is Level.EFFECTIVE3:
        return EFFECTIVE3_TAGS
    if level is Level.ADIABATIC3:
        return ADIABATIC3_TAGS
    raise ValueError(f"unknown level {level!r}")


def level_dim(level: Level, n_atoms: int) -> int:
    if level is Level.FULL:
        return 2 * n_atoms + 1
    if level is Level.COLLECTIVE5:
        return 5
    return 3


def check_atom_count(n_atoms: int) -> int:
    """N must be an integer >= 2 (N=1 makes the search vacuous)."""
    if int(n_atoms) != n_atoms or n_atoms < 2:
        raise ValueError(f"atom count must be an integer >= 2, got {n_atoms}")
    return int(n_atoms)


@dataclass(frozen=True)
class StateVector:
    """Normalized complex amplitudes over one basis level."""

    level: Level
    amplitudes: np.ndarray
    n_atoms: int

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        check_atom_count(self.n_atoms)
        dim = level_dim(self.level, self.n_atoms)
        if amps.shape != (dim,):
            raise ValueError(f"level {self.level.value} with N={self.n_atoms} "
                             f"needs {dim} amplitudes, got shape {amps.shape}")
        if abs(np.linalg.norm(amps) - 1.0) > NORM_TOL:
            raise ValueError(f"state vector norm {np.linalg.norm(amps)} is not 1")

    @property
    def dimension(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def tags(self) -> tuple[str, ...]:
        return level_tags(self.level, self.n_atoms)

    def population(self, tag: str) -> float:
        """Squared modulus of the amplitude on one basis label."""
        try:
            idx = self.tags.index(tag)
        except ValueError:
            raise ValueError(f"label {tag!r} does not exist at level {self.level.value}") from None
        return float(np.abs(self.amplitudes[idx]) ** 2)

    def populations(self) -> dict[str, float]:
        probs = np.abs(self.amplitudes) ** 2
        return {tag: float(p) for tag, p in zip(self.tags, probs)}

    def to_text(self) -> str:
        """Columnar serialization: index, label, real part, imaginary part."""
        lines = [f"# level {self.level.value}  n_atoms {self.n_atoms}  dim {self.dimension}",
                 "# index label re im"]
        for i, (tag, a) in enumerate(zip(self.tags, self.amplitudes)):
            lines.append(f"{i} {tag} {a.real:.17e} {a.imag:.17e}")
        return "\n".join(lines) + "\n"


def uniform_superposition(n_atoms: int) -> StateVector:
    """|w>: equal amplitude 1/sqrt(N) on every gprime_j, nothing elsewhere."""
    n = check_atom_count(n_atoms)
    amps = np.zeros(2 * n + 1, dtype=complex)
    amps[:n] = 1.0 / np.sqrt(n)
    return StateVector(Level.FULL, amps, n)


def marked_state(n_atoms: int, level: Level = Level.FULL) -> StateVector:
    """|m> = |gprime_N, 0>, the search target, at any ground-level basis."""
    n = check_atom_count(n_atoms)
    if level is Level.ADIABATIC3:
        raise ValueError("marked state is not a fixed adiabatic-basis vector")
    amps = np.zeros(level_dim(level, n), dtype=complex)
    tag = f"gprime_{n}" if level is Level.FULL else "gprime_N"
    amps[level_tags(level, n).index(tag)] = 1.0
    return StateVector(level, amps, n)


def uniform_collective(n_atoms: int) -> StateVector:
    """|w> written on the 5-level collective basis."""
    n = check_atom_count(n_atoms)
    amps = np.zeros(5, dtype=complex)
    amps[0] = np.sqrt(1.0 - 1.0 / n)   # gprime_u
    amps[1] = 1.0 / np.sqrt(n)         # gprime_N
    return StateVector(Level.COLLECTIVE5, amps, n)


def uniform_effective(n_atoms: int) -> StateVector:
    """|w> written on the effective 3-level basis (gprime_N, gamma0, gprime_u)."""
    n = check_atom_count(n_atoms)
    amps = np.array([1.0 / np.sqrt(n), 0.0, np.sqrt(1.0 - 1.0 / n)], dtype=complex)
    return StateVector(Level.EFFECTIVE3, amps, n)


def default_mixing_matrix(n_atoms: int) -> np.ndarray:
    """Real orthogonal (N-1)x(N-1) matrix whose first column is uniform.

    The uniform column is the normalized all-ones vector; the rest is a
    Gram-Schmidt completion over the standard basis.  Any unitary with a
    uniform column is admissible; results must not depend on the choice.
    """
    n = check_atom_count(n_atoms)
    m = n - 1
    if m == 1:
        return np.array([[1.0]])
    cols = np.column_stack([np.ones(m), np.eye(m)[:, : m - 1]])
    q, _ = np.linalg.qr(cols)
    if q[0, 0] < 0:
        q = -q
    return q


def validate_mixing_matrix(u: np.ndarray, n_atoms: int) -> int:
    """Check unitarity and locate the uniform column; return its index."""
    n = check_atom_count(n_atoms)
    u = np.asarray(u, dtype=complex)
    m = n - 1
    if u.shape != (m, m):
        raise ValueError(f"mixing matrix must be {m}x{m}, got {u.shape}")
    if np.abs(u.conj().T @ u - np.eye(m)).max() > UNITARY_TOL:
        raise ValueError("mixing matrix is not unitary")
    for col in range(m):
        if np.abs(u[:, col] - u[0, col]).max() <= UNITARY_TOL:
            return col
    raise ValueError("mixing matrix has no uniform column")


def full_to_collective(state: StateVector, u: np.ndarray | None = None):
    """Project a full-sector state onto the 5 coupled collective labels.

    Returns ``(amplitudes, residual)`` where ``amplitudes`` follows the
    COLLECTIVE5 ordering and ``residual`` is the norm of the components
    outside the coupled subspace.  For anything dynamically reachable from
    |w> the residual vanishes.
    """
    if state.level is not Level.FULL:
        raise ValueError("full_to_collective expects a FULL-level state")
    n = state.n_atoms
    if u is None:
        u = default_mixing_matrix(n)
    ucol = validate_mixing_matrix(u, n)
    u = np.asarray(u, dtype=complex)

    gp = state.amplitudes[: n - 1]          # gprime_1..N-1
    gp_n = state.amplitudes[n - 1]
    ex = state.amplitudes[n : 2 * n - 1]    # e_1..N-1
    ex_n = state.amplitudes[2 * n - 1]
    photon = state.amplitudes[2 * n]

    gp_mixed = u.conj().T @ gp
    ex_mixed = u.conj().T @ ex
    amps = np.array([gp_mixed[ucol], gp_n, photon, ex_mixed[ucol], ex_n])
    rest = np.concatenate([np.delete(gp_mixed, ucol), np.delete(ex_mixed, ucol)])
    return amps, float(np.linalg.norm(rest))


def collective_state(state: StateVector, u: np.ndarray | None = None,
                     tol: float = NORM_TOL) -> StateVector:
    """As :func:`full_to_collective` but demanding a vanishing residual."""
    amps, residual = full_to_collective(state, u)
    if residual > tol:
        raise ValueError(f"state leaves the coupled subspace (residual {residual:.3e})")
    return StateVector(Level.COLLECTIVE5, amps / np.linalg.norm(amps), state.n_atoms)
