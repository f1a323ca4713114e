"""Feature discretization and the nine-state movement taxonomy.

The continuous inputs are the on-frame velocity components (vx, vy, in
px/s) and the facing angle phi (degrees in [0, 180]). Each is binned
three ways: velocities by sign with a symmetric dead zone, phi into
right / front / left sectors.

Image convention: y grows downward from the top-left origin, so motion
toward the camera appears as growing y and motion with the camera's
travel direction as shrinking y.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .errors import InsufficientHorizon
from .kinematics import FrameGeometry, Track


class SpeedBin(str, Enum):
    NEG = "neg"
    ZERO = "zero"
    POS = "pos"


class PhiBin(str, Enum):
    RIGHT = "right"
    FRONT = "front"
    LEFT = "left"


class MovementClass(str, Enum):
    """Discrete on-frame movement intents.

    The eight directional states cover oblique, perpendicular and
    camera-axis motion; ``STATIONARY`` completes the taxonomy for
    subjects whose displacement stays inside the dead zone.
    """

    STATIONARY = "stationary"
    OBLIQUE_RIGHT_WITH = "oblique_right_with"
    OBLIQUE_LEFT_WITH = "oblique_left_with"
    OBLIQUE_RIGHT_AGAINST = "oblique_right_against"
    OBLIQUE_LEFT_AGAINST = "oblique_left_against"
    PERP_RIGHT = "perp_right"
    PERP_LEFT = "perp_left"
    TOWARD_CAMERA = "toward_camera"
    AWAY_FROM_CAMERA = "away_from_camera"


@dataclass(frozen=True)
class FeatureVector:
    """Continuous per-frame features: vx, vy in px/s, phi in degrees."""

    vx: float
    vy: float
    phi_deg: float

    def __post_init__(self):
        for name in ("vx", "vy", "phi_deg"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if not 0.0 <= self.phi_deg <= 180.0:
            raise ValueError("phi_deg must lie in [0, 180]")


@dataclass(frozen=True)
class DiscretizationConfig:
    """Bin layout: speed dead zone in px/s and the two phi sector edges."""

    speed_deadzone: float = 5.0
    phi_bin_edges: tuple[float, float] = (60.0, 120.0)

    def __post_init__(self):
        if self.speed_deadzone <= 0:
            raise ValueError("speed_deadzone must be positive")
        lo, hi = self.phi_bin_edges
        if not (0.0 < lo < hi < 180.0):
            raise ValueError("phi_bin_edges must be strictly increasing within (0, 180)")


@dataclass(frozen=True)
class DiscreteFeatures:
    vx_bin: SpeedBin
    vy_bin: SpeedBin
    phi_bin: PhiBin


def speed_bin(v: float, deadzone: float) -> SpeedBin:
    """Sign bin with |v| <= deadzone mapping to ZERO (inclusive)."""
    if v > deadzone:
        return SpeedBin.POS
    if v < -deadzone:
        return SpeedBin.NEG
    return SpeedBin.ZERO


def phi_sector(phi_deg: float, edges: tuple[float, float]) -> PhiBin:
    """Sector bin: [0, lo) right, [lo, hi) front, [hi, 180] left."""
    lo, hi = edges
    if phi_deg < lo:
        return PhiBin.RIGHT
    if phi_deg < hi:
        return PhiBin.FRONT
    return PhiBin.LEFT


def discretize(fv: FeatureVector, cfg: DiscretizationConfig) -> DiscreteFeatures:
    """Bin a continuous feature vector; total over all finite inputs."""
    return DiscreteFeatures(
        vx_bin=speed_bin(fv.vx, cfg.speed_deadzone),
        vy_bin=speed_bin(fv.vy, cfg.speed_deadzone),
        phi_bin=phi_sector(fv.phi_deg, cfg.phi_bin_edges),
    )


# Bijection between the 3x3 velocity-sign grid and the movement classes.
_SIGNS_TO_CLASS: dict[tuple[SpeedBin, SpeedBin], MovementClass] = {
    (SpeedBin.ZERO, SpeedBin.ZERO): MovementClass.STATIONARY,
    (SpeedBin.POS, SpeedBin.NEG): MovementClass.OBLIQUE_RIGHT_WITH,
    (SpeedBin.NEG, SpeedBin.NEG): MovementClass.OBLIQUE_LEFT_WITH,
    (SpeedBin.POS, SpeedBin.POS): MovementClass.OBLIQUE_RIGHT_AGAINST,
    (SpeedBin.NEG, SpeedBin.POS): MovementClass.OBLIQUE_LEFT_AGAINST,
    (SpeedBin.POS, SpeedBin.ZERO): MovementClass.PERP_RIGHT,
    (SpeedBin.NEG, SpeedBin.ZERO): MovementClass.PERP_LEFT,
    (SpeedBin.ZERO, SpeedBin.POS): MovementClass.TOWARD_CAMERA,
    (SpeedBin.ZERO, SpeedBin.NEG): MovementClass.AWAY_FROM_CAMERA,
}


def movement_class_from_bins(vx_bin: SpeedBin, vy_bin: SpeedBin) -> MovementClass:
    return _SIGNS_TO_CLASS[(vx_bin, vy_bin)]


def displacement_label(
    dx: float, dy: float, dt: float, cfg: DiscretizationConfig
) -> MovementClass:
    """Class of a realized displacement: the mean velocity's sign bins."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    return movement_class_from_bins(
        speed_bin(dx / dt, cfg.speed_deadzone),
        speed_bin(dy / dt, cfg.speed_deadzone),
    )


def _future_entry(track: Track, horizon: float):
    entries = track.entries
    if not entries:
        raise InsufficientHorizon("track is empty")
    ref = entries[0]
    for entry in entries[1:]:
        if entry.t - ref.t >= horizon:
            return ref, entry
    raise InsufficientHorizon(
        f"no observation at least {horizon}s after the reference entry"
    )


def label_from_displacement(
    track: Track,
    horizon: float,
    cfg: DiscretizationConfig,
    geom: Optional[FrameGeometry] = None,
) -> MovementClass:
    """Ground-truth movement class from where the subject actually went.

    Takes the track's oldest entry as the reference and the first entry
    at least ``horizon`` seconds later as the realized future. ``geom``
    is accepted for interface symmetry; the sign rule is
    resolution-independent.

    Raises:
        InsufficientHorizon: the track does not span ``horizon`` seconds.
    """
    ref, fut = _future_entry(track, horizon)
    dt = fut.t - ref.t
    return displacement_label(fut.mid[0] - ref.mid[0], fut.mid[1] - ref.mid[1], dt, cfg)


def future_coordinate_label(
    track: Track,
    horizon: float,
    grid: tuple[int, int],
    geom: FrameGeometry,
) -> tuple[int, int]:
    """Grid cell (column, row) holding the realized future midpoint.

    Off-frame midpoints clamp to the nearest boundary cell.

    Raises:
        InsufficientHorizon: the track does not span ``horizon`` seconds.
    """
    gx, gy = grid
    if gx < 1 or gy < 1:
        raise ValueError("grid dimensions must be positive integers")
    _, fut = _future_entry(track, horizon)
    col = min(gx - 1, max(0, math.floor(fut.mid[0] * gx / geom.width_px)))
    row = min(gy - 1, max(0, math.floor(fut.mid[1] * gy / geom.height_px)))
    return col, row


class FeatureDiscretizer(TransformerMixin, BaseEstimator):
    """Stateless transformer from (vx, vy, phi) rows to bin-name rows.

    Accepts an (n_samples, 3) numeric array and returns an object array
    of the same shape holding bin names, suitable as input for
    :class:`pedintent.id3.Id3Classifier` or any categorical estimator.
    """

    def __init__(self, speed_deadzone: float = 5.0,
                 phi_bin_edges: tuple[float, float] = (60.0, 120.0)):
        self.speed_deadzone = speed_deadzone
        self.phi_bin_edges = phi_bin_edges

    def _config(self) -> DiscretizationConfig:
        return DiscretizationConfig(
            speed_deadzone=self.speed_deadzone,
            phi_bin_edges=tuple(self.phi_bin_edges),
        )

    def _validate(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != 3:
            raise ValueError("expected an array of shape (n_samples, 3)")
        if not np.all(np.isfinite(X)):
            raise ValueError("features must be finite")
        return X

    def fit(self, X, y=None):
        self._config()
        self._validate(X)
        self.n_features_in_ = 3
        return self

    def transform(self, X) -> np.ndarray:
        cfg = self._config()
        X = self._validate(X)
        out = np.empty(X.shape, dtype=object)
        for i, (vx, vy, phi) in enumerate(X):
            out[i, 0] = speed_bin(vx, cfg.speed_deadzone).value
            out[i, 1] = speed_bin(vy, cfg.speed_deadzone).value
            out[i, 2] = phi_sector(phi, cfg.phi_bin_edges).value
        return out
