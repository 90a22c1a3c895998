"""Design of the pulse pair (Omega, Omega') with constant adiabaticity.

Given a bell-shaped base pulse Omega, the second pulse is fixed by demanding
a constant ratio epsilon between the frame-rotation rate theta_dot and the
gap Lambda.  The closed form for the ratio Omega'/Omega in terms of the
cumulative area A(t) = int Omega du is

    rho(A) = (1 - eps A / sqrt(N-1)) / sqrt(1 + eps A (2 sqrt(N-1) - eps A))

which starts at 1 (both pulses switched on together) and reaches 0 when
eps A = sqrt(N-1), defining the process duration.  Hence
mean(Omega) * duration = sqrt(N-1)/eps: at fixed mean amplitude the duration
grows as sqrt(N).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson, quad, simpson
from scipy.special import erf

from .statespace import check_atom_count

EPSILON_MAX = 0.2
AREA_TOL = 1e-9


@dataclass(frozen=True)
class GaussianPulse:
    """Truncated Gaussian Omega(t) = peak exp(-((t-center)/width)^2).

    The window is the symmetric interval center +- cutoff*width; the cutoff
    factor must be at least 3 so the truncation error stays negligible.
    """

    peak: float
    width: float
    center: float = 0.0
    cutoff: float = 4.0

    def __post_init__(self):
        if self.peak <= 0 or self.width <= 0:
            raise ValueError("pulse peak and width must be positive")
        if self.cutoff < 3:
            raise ValueError(f"cutoff factor must be >= 3, got {self.cutoff}")

    @property
    def window(self) -> tuple[float, float]:
        half = self.cutoff * self.width
        return (self.center - half, self.center + half)

    def value(self, t):
        return self.peak * np.exp(-(((np.asarray(t) - self.center) / self.width) ** 2))

    def area_exact(self, t) -> float:
        """Closed-form area from the window start (error function)."""
        x = (np.asarray(t) - self.center) / self.width
        return self.peak * self.width * np.sqrt(np.pi) / 2.0 * (erf(x) + erf(self.cutoff))


def figure3_pulse(n_atoms: int, epsilon: float, width: float = 1.0,
                  cutoff: float = 4.0) -> GaussianPulse:
    """Gaussian with peak*width = sqrt(N-1)/(eps sqrt(pi)), before truncation rescale."""
    n = check_atom_count(n_atoms)
    peak = np.sqrt(n - 1) / (epsilon * np.sqrt(np.pi) * width)
    return GaussianPulse(peak=peak, width=width, cutoff=cutoff)


def cumulative_area(pulse, t: float) -> float:
    """Numerically integrated area of the base pulse from the window start."""
    t_start, t_end = pulse.window
    if not (t_start <= t <= t_end):
        raise ValueError(f"time {t} outside the pulse window [{t_start}, {t_end}]")
    scale = pulse.value(pulse.center) * getattr(pulse, "width", t_end - t_start)
    val, _ = quad(pulse.value, t_start, t, epsabs=1e-10 * scale, limit=200)
    return val


def ratio_from_rho(n_atoms: int, epsilon: float, area):
    """Pulse ratio Omega'/Omega as a function of the accumulated area.

    Values beyond the completion point eps*area = sqrt(N-1) clamp to 0
    (rounding can overshoot only at the final instant).
    """
    n = check_atom_count(n_atoms)
    area = np.asarray(area, dtype=float)
    if np.any(area < 0):
        raise ValueError("cumulative area cannot be negative")
    root = np.sqrt(n - 1)
    x = np.minimum(epsilon * area, root)
    ratio = (1.0 - x / root) / np.sqrt(1.0 + x * (2.0 * root - x))
    return ratio if ratio.ndim else float(ratio)


@dataclass(frozen=True)
class PulsePair:
    """Sampled pulse pair with its cumulative area; no design constraints.

    Useful for hand-built pairs (frozen ratio, single pulse) that the
    propagator and diagnostics can still consume.
    """

    epsilon: float
    n_atoms: int
    grid: np.ndarray
    omega: np.ndarray
    omega_prime: np.ndarray
    area: np.ndarray
    meta: dict | None = None

    def __post_init__(self):
        for name in ("grid", "omega", "omega_prime", "area"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if np.any(np.diff(self.grid) <= 0):
            raise ValueError("time grid must be strictly increasing")
        if np.any(self.omega < 0) or np.any(self.omega_prime < 0):
            raise ValueError("pulse amplitudes must be nonnegative")
        if np.any(np.diff(self.area) < 0):
            raise ValueError("cumulative area must be nondecreasing")

    @property
    def duration(self) -> float:
        return float(self.grid[-1] - self.grid[0])

    @property
    def omega_bar(self) -> float:
        """Mean amplitude, total area over duration."""
        return float(self.area[-1] / self.duration)

    @property
    def theta(self) -> np.ndarray:
        """Mixing angle along the schedule, in (-pi/2, 0]."""
        return np.arctan2(-np.sqrt(self.n_atoms - 1) * self.omega_prime, self.omega)

    @property
    def gap(self) -> np.ndarray:
        """Instantaneous gap Lambda along the schedule."""
        return np.sqrt((self.n_atoms - 1) * self.omega_prime**2
                       + self.omega**2) / np.sqrt(self.n_atoms)

    def amplitudes_at(self, t):
        """Linear interpolation of (Omega, Omega') between grid samples."""
        return (np.interp(t, self.grid, self.omega),
                np.interp(t, self.grid, self.omega_prime))

    def omega_prime_area(self) -> float:
        """Area of the second pulse, int Omega' dt over the window."""
        return float(simpson(self.omega_prime, x=self.grid))

    def to_text(self) -> str:
        """Columnar export: t, Omega, Omega', area, theta; header names the design."""
        head = [f"# n_atoms {self.n_atoms}  epsilon {self.epsilon:.17e}"]
        if self.meta:
            head.append("# " + "  ".join(f"{k} {v:.17e}" if isinstance(v, float)
                                         else f"{k} {v}" for k, v in self.meta.items()))
        head.append("# t omega omega_prime area theta")
        th = self.theta
        rows = (f"{t:.17e} {o:.17e} {op:.17e} {a:.17e} {x:.17e}"
                for t, o, op, a, x in zip(self.grid, self.omega, self.omega_prime,
                                          self.area, th))
        return "\n".join(head) + "\n" + "\n".join(rows) + "\n"

    def without_second_pulse(self) -> "PulsePair":
        """Copy with Omega' identically off (the dark state then freezes)."""
        return PulsePair(epsilon=self.epsilon, n_atoms=self.n_atoms, grid=self.grid,
                         omega=self.omega, omega_prime=np.zeros_like(self.omega_prime),
                         area=self.area, meta=self.meta)


@dataclass(frozen=True)
class PulseSchedule(PulsePair):
    """A designed pulse pair obeying the switching and duration conditions."""

    def __post_init__(self):
        super().__post_init__()
        if abs(self.omega_prime[0] - self.omega[0]) > 1e-9 * max(self.omega[0], 1.0):
            raise ValueError("pulses must switch on together")
        if self.omega_prime[-1] != 0.0 or self.omega[-1] <= 0.0:
            raise ValueError("Omega' must end at zero while Omega is still on")
        target = np.sqrt(self.n_atoms - 1)
        if abs(self.epsilon * self.area[-1] - target) > AREA_TOL:
            raise ValueError("final area does not satisfy eps*A(T) = sqrt(N-1)")


def design_schedule(n_atoms: int, epsilon: float, pulse: GaussianPulse | None = None,
                    n_samples: int = 4000) -> PulseSchedule:
    """Build the full schedule satisfying the constant-adiabaticity law.

    The base pulse is sampled on a uniform grid over its window and rescaled
    so the final area meets eps*A(t_f) = sqrt(N-1) exactly on the truncated
    window (a 1/erf(cutoff) correction for the default Gaussian); Omega' then
    follows from the closed-form ratio.
    """
    n = check_atom_count(n_atoms)
    if not 0 < epsilon <= EPSILON_MAX:
        raise ValueError(f"epsilon must lie in (0, {EPSILON_MAX}], got {epsilon}")
    if n_samples < 100:
        raise ValueError(f"need at least 100 samples, got {n_samples}")
    if pulse is None:
        pulse = figure3_pulse(n, epsilon)

    t_start, t_end = pulse.window
    grid = np.linspace(t_start, t_end, n_samples)
    omega_raw = np.asarray(pulse.value(grid), dtype=float)
    area_raw = cumulative_simpson(omega_raw, x=grid, initial=0.0)
    target = np.sqrt(n - 1) / epsilon
    scale = target / area_raw[-1]
    omega = omega_raw * scale
    area = area_raw * scale
    area[-1] = target  # guard against one-ulp rescale roundoff
    omega_prime = ratio_from_rho(n, epsilon, area) * omega
    omega_prime[-1] = 0.0
    meta = {}
    if isinstance(pulse, GaussianPulse):
        meta = {"omega_peak": pulse.peak * scale, "width": pulse.width,
                "cutoff": pulse.cutoff}
    return PulseSchedule(epsilon=epsilon, n_atoms=n, grid=grid, omega=omega,
                         omega_prime=omega_prime, area=area, meta=meta)


@dataclass(frozen=True)
class AdiabaticityReport:
    """Maximum deviation of theta_dot/Lambda from the design ratio."""

    epsilon: float
    max_deviation: float
    deviations: np.ndarray


def verify_adiabaticity(schedule: PulsePair) -> AdiabaticityReport:
    """Check theta_dot = eps * Lambda along the schedule.

    theta is reconstructed from the sampled ratio and differentiated with
    central differences; the report covers the grid interior, where the
    residual is pure discretization error (second order in the step).
    """
    theta = schedule.theta
    lam = schedule.gap
    t = schedule.grid
    theta_dot = (theta[2:] - theta[:-2]) / (t[2:] - t[:-2])
    dev = np.abs(theta_dot / lam[1:-1] - schedule.epsilon)
    return AdiabaticityReport(schedule.epsilon, float(dev.max()), dev)
