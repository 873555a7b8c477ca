"""Command-line harness: protocol runs, sweeps, Bell-box checks, medium design.

Subcommands: teleport, sweep, bellbox, medium.  All angles are radians
unless --degrees is given (conversion happens on input only).  Output is
CSV or JSON, written to --out or stdout, and byte-identical for identical
flags and seed.  Exit codes: 0 success, 1 runtime/I-O error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .bell import DetectorBank, born_weights, classify_bell
from .core import BellKind, bell_state, disentangler
from .fidelity import analytic_favg, monte_carlo_favg, quadrature_favg, sample_bloch_states
from .medium import MediumParameters, estimate_medium, medium_to_fidelity
from .teleport import teleport_many

SWEEP_COLUMNS = ("phi", "eta", "analytic", "quadrature", "mc_mean", "mc_stderr",
                 "success_rate", "samples", "seed")
TELEPORT_COLUMNS = ("phi", "eta", "samples", "seed", "successes", "success_rate",
                    "mean_fidelity")
BELLBOX_COLUMNS = ("input", "psi_plus", "psi_minus", "phi_plus", "phi_minus", "no_output")
MEDIUM_COLUMNS = ("gamma24", "delta24", "phase_shift", "absorption",
                  "large_detuning_phase", "fidelity", "absorption_warning")

BELL_ORDER = (BellKind.PSI_PLUS, BellKind.PSI_MINUS, BellKind.PHI_PLUS, BellKind.PHI_MINUS)


class UsageError(ValueError):
    """Invalid flag values; maps to exit code 2."""


@dataclass(frozen=True)
class SweepSpec:
    start: float
    stop: float
    steps: int

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


@dataclass
class RunConfig:
    command: str
    phi: float | SweepSpec | None = None
    eta: float = 1.0
    samples: int = 10_000
    seed: int = 0
    quadrature_order: int = 32
    output_format: str = "csv"
    output_path: str | None = None
    gamma24: float | None = None
    delta24: float | None = None

    def validate(self) -> None:
        if self.command not in ("teleport", "sweep", "bellbox", "medium"):
            raise UsageError(f"unknown command {self.command!r}")
        if self.output_format not in ("csv", "json"):
            raise UsageError(f"format must be csv or json, got {self.output_format!r}")
        if self.command == "medium":
            if self.gamma24 is None or self.delta24 is None:
                raise UsageError("medium requires --gamma24 and --delta24")
            if not self.gamma24 > 0:
                raise UsageError(f"gamma24 must be positive, got {self.gamma24}")
            return
        if not 0.0 <= self.eta <= 1.0:
            raise UsageError(f"eta must lie in [0, 1], got {self.eta}")
        if self.samples < 100:
            raise UsageError(f"sampling commands need samples >= 100, got {self.samples}")
        if not 0 <= self.seed < 2**64:
            raise UsageError(f"seed must fit in u64, got {self.seed}")
        if self.command == "sweep":
            if not isinstance(self.phi, SweepSpec):
                raise UsageError("sweep needs --phi start:stop:steps")
            if self.quadrature_order < 8:
                raise UsageError(f"quad order must be >= 8, got {self.quadrature_order}")
        elif not isinstance(self.phi, (int, float)):
            raise UsageError(f"{self.command} needs a scalar --phi")


def parse_phi(text: str, degrees: bool) -> float | SweepSpec:
    """Parse --phi as a scalar or a start:stop:steps sweep spec."""
    scale = math.pi / 180.0 if degrees else 1.0
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"sweep spec must be start:stop:steps, got {text!r}")
        try:
            start, stop, steps = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as exc:
            raise UsageError(f"bad sweep spec {text!r}: {exc}") from None
        if steps < 2:
            raise UsageError(f"sweep needs at least 2 steps, got {steps}")
        return SweepSpec(start * scale, stop * scale, steps)
    try:
        return float(text) * scale
    except ValueError:
        raise UsageError(f"--phi must be a number or start:stop:steps, got {text!r}") from None


def _num(x) -> str:
    """CSV cell form: shortest round-trip decimals, lowercase booleans."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def _jsonable(x):
    if isinstance(x, bool):
        return x
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None  # JSON has no inf/nan
    return x


def render_csv(columns, rows) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_num(row[c]) for c in columns))
    return "\n".join(lines) + "\n"


def render_json(payload) -> str:
    return json.dumps(payload, sort_keys=True) + "\n"


def _success_rate(eta: float, samples: int, rng: np.random.Generator) -> float:
    """Empirical probability that both photons of a pair are detected."""
    clicks = rng.random((samples, 2)) < eta
    return float(clicks.all(axis=1).mean())


def run_sweep(config: RunConfig) -> list[dict]:
    spec = config.phi
    children = np.random.SeedSequence(config.seed).spawn(2 * spec.steps)
    records = []
    for k, phi in enumerate(spec.grid()):
        mc_mean, mc_stderr = monte_carlo_favg(phi, config.samples,
                                              np.random.default_rng(children[2 * k]))
        records.append({
            "phi": float(phi),
            "eta": config.eta,
            "analytic": analytic_favg(phi),
            "quadrature": quadrature_favg(phi, config.quadrature_order),
            "mc_mean": mc_mean,
            "mc_stderr": mc_stderr,
            "success_rate": _success_rate(config.eta, config.samples,
                                          np.random.default_rng(children[2 * k + 1])),
            "samples": config.samples,
            "seed": config.seed,
        })
    return records


def run_teleport(config: RunConfig) -> dict:
    children = np.random.SeedSequence(config.seed).spawn(3)
    states = sample_bloch_states(config.samples, np.random.default_rng(children[0]))
    bank = DetectorBank(config.eta, children[1])
    outcomes, fidelities = teleport_many(states, config.phi, bank,
                                         np.random.default_rng(children[2]))
    detected = outcomes != 0
    successes = int(detected.sum())
    return {
        "phi": config.phi,
        "eta": config.eta,
        "samples": config.samples,
        "seed": config.seed,
        "successes": successes,
        "success_rate": successes / config.samples,
        "mean_fidelity": float(fidelities[detected].mean()) if successes else math.nan,
    }


def run_bellbox(config: RunConfig) -> list[dict]:
    """Per-input classification counts of the Bell analyzer."""
    eye = np.eye(2, dtype=complex)
    gate = disentangler(config.phi)
    children = np.random.SeedSequence(config.seed).spawn(2 * len(BELL_ORDER))
    rows = []
    for k, kind in enumerate(BELL_ORDER):
        weights = born_weights(gate.matrix @ bell_state(kind))
        rng = np.random.default_rng(children[2 * k])
        outcomes = rng.choice(4, size=config.samples, p=weights) + 1
        det = np.random.default_rng(children[2 * k + 1])
        seen = (det.random((config.samples, 2)) < config.eta).all(axis=1)
        row = {"input": kind.value, "no_output": int((~seen).sum())}
        for outcome in range(1, 5):
            label = classify_bell(outcome).value
            row[label] = int(((outcomes == outcome) & seen).sum())
        rows.append(row)
    return rows


def run_medium(config: RunConfig) -> dict:
    params = MediumParameters(config.gamma24, config.delta24)
    est = estimate_medium(params)
    return {
        "gamma24": config.gamma24,
        "delta24": config.delta24,
        "phase_shift": est.phase_shift,
        "absorption": est.absorption,
        "large_detuning_phase": est.large_detuning_phase,
        "fidelity": medium_to_fidelity(params),
        "absorption_warning": est.absorption_warning,
    }


def render_output(config: RunConfig) -> str:
    """Run the configured command and render its full output text."""
    config.validate()
    if config.command == "sweep":
        records = run_sweep(config)
        if config.output_format == "csv":
            return render_csv(SWEEP_COLUMNS, records)
        return render_json({"command": "sweep",
                            "records": [{k: _jsonable(v) for k, v in r.items()}
                                        for r in records]})
    if config.command == "teleport":
        record = run_teleport(config)
        if config.output_format == "csv":
            return render_csv(TELEPORT_COLUMNS, [record])
        return render_json({"command": "teleport",
                            "record": {k: _jsonable(v) for k, v in record.items()}})
    if config.command == "bellbox":
        rows = run_bellbox(config)
        if config.output_format == "csv":
            return render_csv(BELLBOX_COLUMNS, rows)
        confusion = {r["input"]: {k: _jsonable(v) for k, v in r.items() if k != "input"}
                     for r in rows}
        return render_json({"command": "bellbox", "phi": _jsonable(config.phi),
                            "eta": config.eta, "samples": config.samples,
                            "seed": config.seed, "confusion": confusion})
    record = run_medium(config)
    if config.output_format == "csv":
        return render_csv(MEDIUM_COLUMNS, [record])
    return render_json({"command": "medium",
                        "record": {k: _jsonable(v) for k, v in record.items()}})


def _add_common(parser: argparse.ArgumentParser, sweep: bool) -> None:
    parser.add_argument("--phi", required=True,
                        help="phase in radians" + (", or start:stop:steps" if sweep else ""))
    parser.add_argument("--eta", type=float, default=1.0, help="detector efficiency in [0,1]")
    parser.add_argument("--samples", type=int, default=10_000, help="trials / MC samples")
    parser.add_argument("--seed", type=int, default=0, help="master RNG seed (u64)")
    parser.add_argument("--degrees", action="store_true",
                        help="interpret --phi in degrees (input conversion only)")


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", default=None, help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kerrtel",
        description="Teleportation with a conditional-phase Bell analyzer: "
                    "runs, sweeps, and medium design estimates.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("teleport", help="N protocol trials at one phase")
    _add_common(p, sweep=False)
    _add_output(p)

    p = sub.add_parser("sweep", help="three-route fidelity sweep over phi")
    _add_common(p, sweep=True)
    p.add_argument("--quad-order", type=int, default=32, dest="quad_order",
                   help="quadrature nodes per direction (>= 8)")
    _add_output(p)

    p = sub.add_parser("bellbox", help="Bell-state discrimination counts")
    _add_common(p, sweep=False)
    _add_output(p)

    p = sub.add_parser("medium", help="EIT medium phase/absorption estimate")
    p.add_argument("--gamma24", type=float, required=True, help="upper-state linewidth (> 0)")
    p.add_argument("--delta24", type=float, required=True, help="probe detuning")
    _add_output(p)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    config = RunConfig(command=args.command,
                       output_format=args.format,
                       output_path=args.out)
    if args.command == "medium":
        config.gamma24 = args.gamma24
        config.delta24 = args.delta24
        return config
    config.phi = parse_phi(args.phi, args.degrees)
    config.eta = args.eta
    config.samples = args.samples
    config.seed = args.seed
    if args.command == "sweep":
        config.quadrature_order = args.quad_order
    return config


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        text = render_output(config)  # fully rendered before any file is touched
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        if config.output_path is None:
            sys.stdout.write(text)
        else:
            with open(config.output_path, "w", newline="") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
