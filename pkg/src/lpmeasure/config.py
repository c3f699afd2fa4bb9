"""Run configuration and its flat ``key = value`` file format.

Example file::

    # desk.cfg
    seed = 7
    cases = 100
    window = 32
    log_grid.points = 200
    tolerance.relative = 1e-6

Blank lines and ``#`` comments are ignored. Unknown keys are errors.
"""
from __future__ import annotations

import dataclasses
import hashlib
import json
import os
from dataclasses import dataclass
from pathlib import Path

from .errors import SpecParseError
from .norms import Dictionary, LogGrid, NormConfig

OUTPUT_ENV = "LPMEASURE_OUTPUT_DIR"


@dataclass(frozen=True)
class RunConfig:
    window: float = 32.0
    grid_points: int = 4096
    log_grid_x_min: float = 1e-3
    log_grid_x_max: float = 1e3
    log_grid_points: int = 200
    tolerance_relative: float = 1e-6
    tolerance_quadrature: float = 1e-4
    dictionary_dilations: int = 5
    dictionary_translations: int = 9
    dictionary_modulations: int = 17
    dictionary_combine: int = 8
    depth: int = 18
    seed: int = 0
    cases: int = 100
    workers: int = 1
    output_dir: str = "lpmeasure-out"

    def __post_init__(self):
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if isinstance(v, (int, float)) and not isinstance(v, bool) and f.name != "seed" and not v > 0:
                raise ValueError(f"{f.name} must be positive, got {v}")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")
        if self.log_grid_x_min >= self.log_grid_x_max:
            raise ValueError("log_grid.x_min must be below log_grid.x_max")

    # -- derived objects --------------------------------------------------
    def norm_config(self) -> NormConfig:
        return NormConfig(base_window=self.window)

    def log_grid(self) -> LogGrid:
        return LogGrid(self.log_grid_x_min, self.log_grid_x_max, self.log_grid_points)

    def dictionary(self) -> Dictionary:
        return Dictionary(
            dilations=self.dictionary_dilations,
            translations=self.dictionary_translations,
            modulations=self.dictionary_modulations,
            combine=self.dictionary_combine,
        )

    def to_dict(self) -> dict:
        """Reproducibility payload; the output directory is not part of it."""
        d = dataclasses.asdict(self)
        d.pop("output_dir")
        d.pop("workers")
        return d

    def digest(self) -> str:
        return hashlib.sha256(json.dumps(self.to_dict(), sort_keys=True).encode()).hexdigest()[:16]

    def replace(self, **changes) -> "RunConfig":
        return dataclasses.replace(self, **changes)

    def resolved_output_dir(self) -> Path:
        return Path(os.environ.get(OUTPUT_ENV) or self.output_dir)


def _key(name: str) -> str:
    return name.strip().replace(".", "_").replace("-", "_")


def parse_config(text: str, base: RunConfig | None = None) -> RunConfig:
    """Parse flat ``key = value`` lines on top of ``base``."""
    base = base or RunConfig()
    types = {f.name: f.type for f in dataclasses.fields(RunConfig)}
    changes: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SpecParseError("expected 'key = value'", lineno, 1)
        k, v = line.split("=", 1)
        key = _key(k)
        if key not in types:
            raise SpecParseError(f"unknown configuration key {k.strip()!r}", lineno, 1)
        v = v.strip()
        kind = types[key]
        try:
            if kind in ("int", int):
                changes[key] = int(v)
            elif kind in ("float", float):
                changes[key] = float(v)
            else:
                changes[key] = v
        except ValueError:
            raise SpecParseError(f"bad value {v!r} for {key}", lineno, raw.index("=") + 2) from None
    try:
        return base.replace(**changes)
    except ValueError as exc:
        raise SpecParseError(str(exc), 0, 0) from None


def load_config(path: str | os.PathLike, base: RunConfig | None = None) -> RunConfig:
    return parse_config(Path(path).read_text(), base)
