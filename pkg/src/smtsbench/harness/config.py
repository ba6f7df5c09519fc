"""Experiment configuration: in-memory record plus TOML loading."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import tomli

from ..errors import ParseError

PARAM_MODES = ("default", "retained", "grid")
METRICS = ("acc_overall", "acc_cluster", "ARI", "AMI", "NVD1m", "PSI")


@dataclass(frozen=True)
class ExperimentConfig:
    scenario: str = "baseline"
    scenario_params: dict = field(default_factory=dict)
    methods: tuple[str, ...] = ()
    param_mode: str = "default"
    replicates: int = 1
    seed: int = 0
    out_dir: str = "results"
    threads: int = 1

    def __post_init__(self) -> None:
        if self.replicates < 1:
            raise ValueError(f"replicate count {self.replicates} must be at least 1")
        if self.threads < 1:
            raise ValueError(f"thread count {self.threads} must be at least 1")
        if self.param_mode not in PARAM_MODES:
            raise ValueError(f"param mode {self.param_mode!r}; expected one of {PARAM_MODES}")
        from .methods import resolve_method  # deferred: avoids an import cycle

        for method in self.methods:
            resolve_method(method, self.param_mode)  # raises on unresolvable ids

    def digest(self) -> str:
        """Stable hash of the full configuration for the manifest."""
        payload = json.dumps(asdict(self), sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()


def load_config(path: str | Path, **overrides) -> ExperimentConfig:
    """Read a TOML file mirroring ExperimentConfig; keyword overrides win
    (used for CLI flags)."""
    path = Path(path)
    try:
        data = tomli.loads(path.read_text())
    except tomli.TOMLDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    table = data.get("experiment", data)
    known = {
        "scenario", "scenario_params", "methods", "param_mode",
        "replicates", "seed", "out_dir", "threads",
    }
    unknown = set(table) - known
    if unknown:
        raise ParseError(f"{path}: unknown config keys {sorted(unknown)}")
    merged = {**table, **{k: v for k, v in overrides.items() if v is not None}}
    if "methods" in merged:
        merged["methods"] = tuple(merged["methods"])
    return ExperimentConfig(**merged)
