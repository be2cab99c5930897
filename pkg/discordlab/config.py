"""Run configuration: JSON file plus command-line overrides, validated up front."""

import json
from dataclasses import dataclass, field, fields
from typing import Any

import numpy as np

from discordlab.channel import DephasingChannel
from discordlab.matcore import DensityMatrix4, InvalidStateError
from discordlab.states import SampleSeed, density_from_descriptor
from discordlab.transitions import TransitionTolerances

COMMANDS = ("evolve", "scan-basis", "detect", "classify", "survey")

DEFAULT_STATE = {"type": "bds", "c1": 1.0, "c2": -0.6, "c3": 0.6}


class ConfigError(ValueError):
    """A configuration field failed validation."""

    def __init__(self, field_name: str, message: str):
        self.field = field_name
        super().__init__(f"{field_name}: {message}")


@dataclass
class RunConfig:
    command: str
    state: dict = field(default_factory=lambda: dict(DEFAULT_STATE))
    a: float = 1.0
    tau: float = 5.0
    nu_max: float = 3.0
    steps: int = 3000
    n: int = 1000
    seed: int = 42
    stream: int = 0
    out: str | None = None
    max_depth: int = 20
    theta_steps: int = 361
    nus: list[float] = field(default_factory=lambda: [0.0])
    workers: int = 1
    full_scan: bool = False
    tolerances: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, command: str, data: dict) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("config", "top level must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(sorted(unknown)[0], "unknown configuration key")
        values = dict(data)
        values["command"] = command
        return cls(**values)

    @classmethod
    def from_json(cls, command: str, filename: str) -> "RunConfig":
        """Load a config file; OSError propagates, malformed JSON is a ConfigError."""
        with open(filename, mode="r", encoding="utf-8") as f:
            try:
                data = json.load(f)
            except json.JSONDecodeError as exc:
                raise ConfigError(
                    "config", f"invalid JSON in {filename!r}: {exc.msg}"
                ) from exc
        return cls.from_dict(command, data)

    def override(self, **flags: Any) -> "RunConfig":
        """Apply command-line values; None means the flag was not given."""
        state_flags = {
            k: flags.pop(k) for k in ("c1", "c2", "c3", "epsilon") if k in flags
        }
        for name, value in flags.items():
            if value is not None:
                setattr(self, name, value)
        state_flags = {k: v for k, v in state_flags.items() if v is not None}
        if state_flags:
            state = dict(self.state)
            if state.get("type") == "x":
                raise ConfigError(
                    "state", "coefficient flags do not apply to an X state"
                )
            if "epsilon" in state_flags:
                state["type"] = "perturbed"
            state.update(state_flags)
            if state.get("type") == "perturbed":
                state.setdefault("epsilon", 0.0)
            self.state = state
        return self

    def validate(self) -> None:
        """Check every field and build the state, channel, seed and tolerances."""
        if self.command not in COMMANDS:
            raise ConfigError("command", f"invalid command {self.command!r}")
        try:
            self._density = density_from_descriptor(self.state)
        except InvalidStateError:
            raise
        except (TypeError, ValueError) as exc:
            raise ConfigError("state", str(exc)) from exc
        try:
            self._channel = DephasingChannel(float(self.a), float(self.tau))
        except (TypeError, ValueError) as exc:
            raise ConfigError("channel", str(exc)) from exc
        self._check_positive("nu_max", self.nu_max)
        self._check_count("steps", self.steps, 2)
        self._check_count("n", self.n, 1)
        self._check_count("max_depth", self.max_depth, 1)
        self._check_count("theta_steps", self.theta_steps, 2)
        self._check_count("workers", self.workers, 1)
        try:
            self._seed = SampleSeed(self.seed, self.stream)
        except ValueError as exc:
            raise ConfigError("seed", str(exc)) from exc
        if not isinstance(self.nus, (list, tuple)) or not self.nus:
            raise ConfigError("nus", "at least one time value is required")
        try:
            nus = [float(nu) for nu in self.nus]
        except (TypeError, ValueError) as exc:
            raise ConfigError("nus", "time values must be numbers") from exc
        if any(not nu >= 0 for nu in nus):
            raise ConfigError("nus", f"time values must be >= 0, got {self.nus!r}")
        self.nus = nus
        if not isinstance(self.tolerances, dict):
            raise ConfigError("tolerances", "must be a JSON object")
        try:
            self._tolerances = TransitionTolerances(
                **{k: float(v) for k, v in self.tolerances.items()}
            )
        except TypeError as exc:
            raise ConfigError(
                "tolerances", f"unknown tolerance in {sorted(self.tolerances)}"
            ) from exc
        except ValueError as exc:
            raise ConfigError("tolerances", str(exc)) from exc

    @staticmethod
    def _check_positive(name: str, value: Any) -> None:
        numeric = isinstance(value, (int, float)) and not isinstance(value, bool)
        if not numeric or not value > 0:
            raise ConfigError(name, f"must be a positive number, got {value!r}")

    @staticmethod
    def _check_count(name: str, value: Any, minimum: int) -> None:
        if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
            raise ConfigError(name, f"must be an integer >= {minimum}, got {value!r}")

    @property
    def density(self) -> DensityMatrix4:
        return self._density

    @property
    def channel(self) -> DephasingChannel:
        return self._channel

    @property
    def sample_seed(self) -> SampleSeed:
        return self._seed

    @property
    def tolerance_set(self) -> TransitionTolerances:
        return self._tolerances

    @property
    def nu_grid(self) -> np.ndarray:
        return np.linspace(0.0, float(self.nu_max), self.steps)
