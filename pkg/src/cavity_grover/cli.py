"""Command-line front end: design, simulate, sweep, compare, figure3.

Configuration comes from an optional JSON file (``--config``) overridden by
flags; the effective configuration is echoed next to the outputs so every
run is reproducible.  Exit codes: 0 success, 1 embedded assertion failed,
2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .experiments import compare_models, run_figure3, sweep_scaling
from .hamiltonians import SystemParams
from .propagator import propagate
from .pulsedesign import GaussianPulse, design_schedule, figure3_pulse, verify_adiabaticity
from .statespace import Level, marked_state

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_USAGE = 2
EXIT_IO = 3

OUTPUT_DIR_ENV = "CAVITY_GROVER_OUT"

COMMANDS = ("design", "simulate", "sweep", "compare", "figure3")

_DEFAULTS = {
    "n_atoms": 8,
    "epsilon": 0.05,
    "g": 1.0,
    "delta": 0.0,
    "rwa": True,
    "steps": None,
    "n_samples": 4000,
    "cutoff_c": 4.0,
    "width": 1.0,
    "level": "effective3",
    "initial": "uniform",
    "omega_prime_off": False,
    "sweep_n": (2, 8, 32, 128, 512, 2048),
    "out": None,
    "format": "text",
}

_CONFIG_KEYS = set(_DEFAULTS) | {"command"}


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Validated parameters for one CLI invocation."""

    command: str
    n_atoms: int = 8
    epsilon: float = 0.05
    g: float = 1.0
    delta: float = 0.0
    rwa: bool = True
    steps: int | None = None
    n_samples: int = 4000
    cutoff_c: float = 4.0
    width: float = 1.0
    level: str = "effective3"
    initial: str = "uniform"
    omega_prime_off: bool = False
    sweep_n: tuple[int, ...] = (2, 8, 32, 128, 512, 2048)
    out: str | None = None
    format: str = "text"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"command must be one of {COMMANDS}, got {self.command!r}")
        if self.n_atoms < 2:
            raise UsageError(f"n_atoms: need an integer >= 2, got {self.n_atoms}")
        if not 0 < self.epsilon <= 0.2:
            raise UsageError(f"epsilon: must lie in (0, 0.2], got {self.epsilon}")
        if self.g <= 0:
            raise UsageError(f"g: must be positive, got {self.g}")
        if self.delta < 0:
            raise UsageError(f"delta: must be nonnegative, got {self.delta}")
        if self.steps is not None and self.steps < 10:
            raise UsageError(f"steps: need at least 10, got {self.steps}")
        if self.n_samples < 100:
            raise UsageError(f"n_samples: need at least 100, got {self.n_samples}")
        if self.cutoff_c < 3:
            raise UsageError(f"cutoff_c: must be >= 3, got {self.cutoff_c}")
        if self.width <= 0:
            raise UsageError(f"width: must be positive, got {self.width}")
        if self.level not in ("full", "collective5", "effective3"):
            raise UsageError(f"level: unknown level {self.level!r}")
        if self.initial not in ("uniform", "marked"):
            raise UsageError(f"initial: must be 'uniform' or 'marked', got {self.initial!r}")
        if self.format not in ("text", "structured"):
            raise UsageError(f"format: must be 'text' or 'structured', got {self.format!r}")
        if any(int(n) != n or n < 2 for n in self.sweep_n):
            raise UsageError(f"sweep_n: all entries must be integers >= 2, got {self.sweep_n}")

    @property
    def out_dir(self) -> Path:
        if self.out is not None:
            return Path(self.out)
        return Path(os.environ.get(OUTPUT_DIR_ENV, "out"))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cavity-grover",
        description="Adiabatic Grover search in a cavity-laser-atom system.")
    parser.add_argument("--config", help="JSON configuration file; flags override it")
    sub = parser.add_subparsers(dest="command")
    for name, doc in (
        ("design", "design the pulse schedule and export it"),
        ("simulate", "propagate a trajectory for one configuration"),
        ("sweep", "duration-scaling sweep over database sizes"),
        ("compare", "population deviations across the model hierarchy"),
        ("figure3", "the N=8, epsilon=0.05 showcase run"),
    ):
        p = sub.add_parser(name, help=doc)
        p.add_argument("--n", type=int, dest="n_atoms")
        p.add_argument("--epsilon", type=float)
        p.add_argument("--g", type=float)
        p.add_argument("--delta", type=float)
        p.add_argument("--rwa", action=argparse.BooleanOptionalAction, default=None)
        p.add_argument("--steps", type=int)
        p.add_argument("--n-samples", type=int, dest="n_samples")
        p.add_argument("--cutoff-c", type=float, dest="cutoff_c")
        p.add_argument("--width", type=float)
        p.add_argument("--out")
        p.add_argument("--format", choices=("text", "structured"))
        if name == "simulate":
            p.add_argument("--level", choices=("full", "collective5", "effective3"))
            p.add_argument("--initial", choices=("uniform", "marked"))
            p.add_argument("--omega-prime-off", action="store_true", default=None,
                           dest="omega_prime_off")
        if name == "sweep":
            p.add_argument("--n-list", dest="sweep_n",
                           help="comma-separated atom counts, e.g. 2,8,32")
    return parser


def parse_config(argv) -> RunConfig:
    """Merge defaults, an optional JSON config file, and command-line flags."""
    parser = _build_parser()
    ns = parser.parse_args(argv)

    values = dict(_DEFAULTS)
    if ns.config is not None:
        try:
            raw = Path(ns.config).read_text()
        except OSError as exc:
            raise OSError(f"cannot read config file {ns.config}: {exc}") from exc
        try:
            file_values = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise UsageError(f"config file {ns.config} is not valid JSON: {exc}") from exc
        unknown = set(file_values) - _CONFIG_KEYS
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        if "sweep_n" in file_values:
            file_values["sweep_n"] = tuple(file_values["sweep_n"])
        values.update(file_values)

    command = ns.command or values.get("command")
    if command is None:
        raise UsageError("no command given (on the command line or in the config)")
    for key in _DEFAULTS:
        flag = getattr(ns, key, None)
        if flag is not None:
            values[key] = flag
    if isinstance(values["sweep_n"], str):
        try:
            values["sweep_n"] = tuple(int(tok) for tok in values["sweep_n"].split(","))
        except ValueError:
            raise UsageError(f"sweep_n: cannot parse {values['sweep_n']!r}") from None
    values["sweep_n"] = tuple(values["sweep_n"])
    values["command"] = command
    return RunConfig(**values)


def _echo_config(config: RunConfig, out: Path):
    payload = asdict(config)
    payload["out"] = str(config.out_dir)
    (out / "config.echo.json").write_text(json.dumps(payload, indent=2) + "\n")


def _pulse(config: RunConfig) -> GaussianPulse:
    return figure3_pulse(config.n_atoms, config.epsilon, width=config.width,
                         cutoff=config.cutoff_c)


def run(config: RunConfig) -> int:
    """Execute one validated configuration; returns the exit code."""
    out = config.out_dir
    try:
        out.mkdir(parents=True, exist_ok=True)
        _echo_config(config, out)
    except OSError as exc:
        print(f"error: cannot prepare output directory: {exc}", file=sys.stderr)
        return EXIT_IO

    try:
        if config.command == "figure3":
            return _cmd_figure3(config, out)
        if config.command == "design":
            return _cmd_design(config, out)
        if config.command == "simulate":
            return _cmd_simulate(config, out)
        if config.command == "sweep":
            return _cmd_sweep(config, out)
        return _cmd_compare(config, out)
    except OSError as exc:
        print(f"error: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO


def _cmd_figure3(config: RunConfig, out: Path) -> int:
    result = run_figure3(n_atoms=config.n_atoms, epsilon=config.epsilon,
                         n_samples=config.n_samples, steps=config.steps,
                         out_dir=out)
    print(f"final marked population {result.final_marked:.6f} "
          f"(floor {result.fidelity_floor:.6f})")
    if not result.passed:
        print("assertion failed: final fidelity below 1 - epsilon^2", file=sys.stderr)
        return EXIT_ASSERTION
    return EXIT_OK


def _cmd_design(config: RunConfig, out: Path) -> int:
    schedule = design_schedule(config.n_atoms, config.epsilon, _pulse(config),
                               n_samples=config.n_samples)
    (out / "schedule.dat").write_text(schedule.to_text())
    report = verify_adiabaticity(schedule)
    summary = {
        "n_atoms": config.n_atoms,
        "epsilon": config.epsilon,
        "duration": schedule.duration,
        "omega_bar_duration": schedule.omega_bar * schedule.duration,
        "max_adiabaticity_deviation": report.max_deviation,
    }
    if config.format == "structured":
        (out / "design_summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    print(f"designed schedule: duration {schedule.duration:.6g}, "
          f"mean-amplitude x duration {summary['omega_bar_duration']:.6g}")
    return EXIT_OK


def _cmd_simulate(config: RunConfig, out: Path) -> int:
    schedule = design_schedule(config.n_atoms, config.epsilon, _pulse(config),
                               n_samples=config.n_samples)
    if config.omega_prime_off:
        schedule = schedule.without_second_pulse()
    level = Level(config.level)
    delta = config.delta
    if not config.rwa and delta == 0.0:
        delta = 1.0e3 / schedule.duration
    params = SystemParams(n_atoms=config.n_atoms, g=config.g, delta=delta,
                          rwa=config.rwa)
    psi0 = None
    if config.initial == "marked":
        psi0 = marked_state(config.n_atoms, level)
    traj = propagate(level, params, schedule, psi0=psi0, steps=config.steps)
    (out / "schedule.dat").write_text(schedule.to_text())
    (out / "trajectory.dat").write_text(traj.to_text(schedule))
    final_marked = float(traj.population("gprime_N")[-1]) if level is not Level.FULL \
        else float(traj.population(f"gprime_{config.n_atoms}")[-1])
    print(f"final marked population {final_marked:.6f}")
    return EXIT_OK


def _cmd_sweep(config: RunConfig, out: Path) -> int:
    result = sweep_scaling(config.sweep_n, epsilon=config.epsilon,
                           cutoff=config.cutoff_c, n_samples=config.n_samples,
                           steps=config.steps, out_dir=out)
    floor = 1.0 - config.epsilon**2
    print(f"log-log slope {result.fit.slope:.6f}")
    failing = [r.n_atoms for r in result.records if r.fidelity < floor]
    if failing:
        print(f"assertion failed: fidelity below {floor} for N in {failing}",
              file=sys.stderr)
        return EXIT_ASSERTION
    if abs(result.fit.slope - 0.5) > 0.03:
        print("assertion failed: scaling slope outside 0.5 +- 0.03", file=sys.stderr)
        return EXIT_ASSERTION
    return EXIT_OK


def _cmd_compare(config: RunConfig, out: Path) -> int:
    result = compare_models(n_atoms=config.n_atoms, epsilon=config.epsilon,
                            n_samples=config.n_samples, out_dir=out)
    print(f"effective vs 5-level deviation {result.effective_vs_collective:.3e}; "
          f"full vs 5-level {result.full_vs_collective:.3e}; "
          f"resonant vs counter-rotating {result.rwa_vs_counter_rotating_final:.3e}")
    return EXIT_OK


def main(argv=None) -> int:
    try:
        config = parse_config(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return run(config)


def console_main():  # pragma: no cover - thin wrapper
    sys.exit(main())
