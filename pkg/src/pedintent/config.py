"""Runtime configuration for the classification pipeline.

One JSON file holds every tunable; command-line flags override single
keys. The effective configuration is echoed into reports so results
stay attributable to their parameters.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, replace
from typing import Any, Optional

from .errors import DataError
from .features import DiscretizationConfig
from .kinematics import FrameGeometry


@dataclass(frozen=True)
class PipelineConfig:
    """All pipeline tunables with defaults for a 432x432 px stream."""

    frame_width_px: int = 432
    frame_height_px: int = 432
    cone_width_m: float = 10.0
    horizon_s: float = 1.0
    step_s: float = 0.1
    speed_deadzone: float = 5.0
    phi_bin_edges: tuple[float, float] = (60.0, 120.0)
    velocity_window: int = 3
    min_confidence: float = 0.5
    staleness_s: float = 1.0
    zone: tuple[float, float, float, float] = (180.0, 300.0, 252.0, 432.0)
    tree_path: Optional[str] = None

    def __post_init__(self):
        if self.frame_width_px <= 0 or self.frame_height_px <= 0:
            raise ValueError("frame dimensions must be positive")
        if self.cone_width_m <= 0:
            raise ValueError("cone_width_m must be positive")
        if self.horizon_s <= 0:
            raise ValueError("horizon_s must be positive")
        if self.step_s <= 0:
            raise ValueError("step_s must be positive")
        if self.velocity_window < 1:
            raise ValueError("velocity_window must be at least 1")
        if not 0.0 < self.min_confidence <= 1.0:
            raise ValueError("min_confidence must lie in (0, 1]")
        if self.staleness_s <= 0:
            raise ValueError("staleness_s must be positive")
        x0, y0, x1, y1 = self.zone
        if not (x0 < x1 and y0 < y1):
            raise ValueError("zone must satisfy x0 < x1 and y0 < y1")
        # delegate deadzone / edge validation
        self.discretization()

    def geometry(self) -> FrameGeometry:
        return FrameGeometry(
            width_px=self.frame_width_px,
            height_px=self.frame_height_px,
            cone_width_m=self.cone_width_m,
        )

    def discretization(self) -> DiscretizationConfig:
        return DiscretizationConfig(
            speed_deadzone=self.speed_deadzone,
            phi_bin_edges=tuple(self.phi_bin_edges),
        )

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["phi_bin_edges"] = list(self.phi_bin_edges)
        d["zone"] = list(self.zone)
        return d

    def with_overrides(self, **overrides) -> "PipelineConfig":
        """Copy with non-None overrides applied."""
        changes = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **changes) if changes else self


_TUPLE_KEYS = {"phi_bin_edges": 2, "zone": 4}


def config_from_dict(raw: dict[str, Any]) -> PipelineConfig:
    """Build a config from parsed JSON, rejecting unknown keys.

    Raises:
        DataError: unknown key, wrong field shape, or invalid value.
    """
    known = set(PipelineConfig.__dataclass_fields__)
    unknown = set(raw) - known
    if unknown:
        raise DataError(f"unknown config keys: {', '.join(sorted(unknown))}")
    fields = dict(raw)
    for key, arity in _TUPLE_KEYS.items():
        if key in fields:
            value = fields[key]
            if not isinstance(value, (list, tuple)) or len(value) != arity:
                raise DataError(f"config key {key} must be a list of {arity} numbers")
            fields[key] = tuple(float(v) for v in value)
    try:
        return PipelineConfig(**fields)
    except (TypeError, ValueError) as exc:
        raise DataError(f"invalid config: {exc}") from exc


def load_config(path) -> PipelineConfig:
    """Read a JSON config file.

    Raises:
        DataError: unreadable file, invalid JSON, or invalid values.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise DataError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"config file {path} is not valid JSON: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise DataError(f"config file {path} must hold a JSON object")
    return config_from_dict(raw)


def save_config(cfg: PipelineConfig, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(cfg.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")
