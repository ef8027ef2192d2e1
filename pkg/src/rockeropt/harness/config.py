"""Experiment configuration: JSON schema, loading and validation."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

from ..errors import ConfigError, RockerOptError
from ..model import BoundsSet, FitnessWeights, ScenarioParams, SoilParams, default_bounds
from ..optim.config import OptimizerConfig

TOP_LEVEL_KEYS = {"scenario", "weights", "bounds", "runs", "repetitions", "output_dir", "workers"}


@dataclass(frozen=True)
class ExperimentConfig:
    scenario: ScenarioParams = field(default_factory=ScenarioParams)
    weights: FitnessWeights = field(default_factory=FitnessWeights)
    bounds: BoundsSet = field(default_factory=default_bounds)
    runs: tuple[OptimizerConfig, ...] = ()
    repetitions: int = 1
    output_dir: str = "results"
    workers: int | None = None

    def __post_init__(self):
        if not self.runs:
            raise ConfigError("config needs at least one run")
        if not isinstance(self.repetitions, int) or self.repetitions < 1:
            raise ConfigError(f"repetitions must be a positive integer, got {self.repetitions}")
        if self.workers is not None and (not isinstance(self.workers, int) or self.workers < 1):
            raise ConfigError(f"workers must be a positive integer, got {self.workers}")
        if self.bounds.ndim != 10:
            raise ConfigError(f"bounds need 10 entries, got {self.bounds.ndim}")

    def with_overrides(self, seed=None, output_dir=None, workers=None) -> ExperimentConfig:
        cfg = self
        if seed is not None:
            cfg = replace(cfg, runs=tuple(r.replace(seed=seed) for r in cfg.runs))
        if output_dir is not None:
            cfg = replace(cfg, output_dir=str(output_dir))
        if workers is not None:
            cfg = replace(cfg, workers=workers)
        return cfg

    def to_dict(self) -> dict[str, Any]:
        return {
            "scenario": self.scenario.to_dict(),
            "weights": self.weights.to_dict(),
            "bounds": self.bounds.to_dict(),
            "runs": [r.to_dict() for r in self.runs],
            "repetitions": self.repetitions,
            "output_dir": self.output_dir,
            "workers": self.workers,
        }


def parse_config(data: Any) -> ExperimentConfig:
    """Build an :class:`ExperimentConfig` from decoded JSON, or raise ConfigError."""
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(data) - TOP_LEVEL_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    try:
        scenario_data = dict(data.get("scenario", {}))
        if "soil" in scenario_data:
            scenario_data["soil"] = SoilParams(**scenario_data["soil"])
        if "alpha" in scenario_data:
            scenario_data["alpha"] = tuple(scenario_data["alpha"])
        scenario = ScenarioParams(**scenario_data)
        weights = FitnessWeights(**data.get("weights", {}))
        bounds = BoundsSet.from_dict(data["bounds"]) if "bounds" in data else default_bounds()
        runs = data.get("runs")
        if not isinstance(runs, list):
            raise ConfigError("'runs' must be a list of run objects")
        run_cfgs = tuple(OptimizerConfig.from_dict(r) for r in runs)
        return ExperimentConfig(
            scenario=scenario,
            weights=weights,
            bounds=bounds,
            runs=run_cfgs,
            repetitions=data.get("repetitions", 1),
            output_dir=str(data.get("output_dir", "results")),
            workers=data.get("workers"),
        )
    except ConfigError:
        raise
    except (RockerOptError, TypeError, KeyError, ValueError) as exc:
        raise ConfigError(f"invalid config: {exc}") from None


def load_config(path) -> ExperimentConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    return parse_config(data)
