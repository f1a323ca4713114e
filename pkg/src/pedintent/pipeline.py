"""Per-frame classification loop over a landmark stream.

Each frame either lacks a pose (skipped) or contributes one track
observation. Once enough history exists the pipeline derives on-frame
velocities, the facing angle, the discrete movement class, a linear
future-position estimate at the configured horizon, and a collision
flag against a static image-plane zone.

Pose detection is deliberately external: the pipeline consumes named
landmark coordinates, never images, so its latency and accuracy can be
measured in isolation. One pipeline instance serves one pedestrian
stream and is single-threaded; independent instances share nothing but
an immutable decision tree.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Mapping, Optional, Sequence

import numpy as np

from .config import PipelineConfig
from .errors import (
    DegenerateLandmarks,
    InsufficientHistory,
    NearPiRotation,
    NonMonotonicTimestamp,
)
from .features import (
    DiscretizationConfig,
    FeatureVector,
    MovementClass,
    discretize,
)
from .geometry import orientation_from_shoulders
from .id3 import Node, classify
from .kinematics import Point, Track, Velocity2D, extrapolate

LEFT_SHOULDER = "left_shoulder"
RIGHT_SHOULDER = "right_shoulder"


class SkipReason(str, Enum):
    NO_POSE = "no_pose"
    DEGENERATE = "degenerate"
    NEAR_PI = "near_pi"
    INSUFFICIENT_HISTORY = "insufficient_history"


@dataclass(frozen=True)
class LandmarkFrame:
    """One timestamped pose observation in normalized [0,1] image coords.

    ``landmarks`` is None when no pose was detected. ``confidence``
    holds per-landmark detection confidence; landmarks absent from the
    map are treated as fully confident.
    """

    t: float
    landmarks: Optional[Mapping[str, Sequence[float]]] = None
    confidence: Mapping[str, float] = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.confidence is None:
            object.__setattr__(self, "confidence", {})


@dataclass(frozen=True)
class CollisionZone:
    """Closed pixel-space rectangle the host occupies at the horizon."""

    x0: float
    y0: float
    x1: float
    y1: float
    horizon_s: float = 1.0

    def __post_init__(self):
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise ValueError("zone must satisfy x0 < x1 and y0 < y1")
        if self.horizon_s <= 0:
            raise ValueError("horizon_s must be positive")

    def contains(self, point: Point) -> bool:
        x, y = point
        return self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1


def check_collision(future: Point, zone: CollisionZone) -> bool:
    """True iff the predicted point lies inside the closed rectangle."""
    return zone.contains(future)


def has_pose(frame: LandmarkFrame, min_confidence: float) -> bool:
    """Both shoulders present with sufficient detection confidence."""
    lm = frame.landmarks
    if lm is None or LEFT_SHOULDER not in lm or RIGHT_SHOULDER not in lm:
        return False
    return all(
        frame.confidence.get(name, 1.0) >= min_confidence
        for name in (LEFT_SHOULDER, RIGHT_SHOULDER)
    )


def observed_midpoints(
    frames: Iterable[LandmarkFrame], cfg: PipelineConfig
) -> list[tuple[float, Point]]:
    """(t, shoulder midpoint in pixels) for every frame with a pose."""
    w, h = cfg.frame_width_px, cfg.frame_height_px
    out = []
    for frame in frames:
        if not has_pose(frame, cfg.min_confidence):
            continue
        left = frame.landmarks[LEFT_SHOULDER]
        right = frame.landmarks[RIGHT_SHOULDER]
        out.append(
            (
                frame.t,
                (
                    (left[0] + right[0]) / 2.0 * w,
                    (left[1] + right[1]) / 2.0 * h,
                ),
            )
        )
    return out


@dataclass(frozen=True)
class FrameResult:
    """Per-frame output record; optional fields stay None when skipped."""

    t: float
    skipped_reason: Optional[SkipReason] = None
    theta_rad: Optional[float] = None
    phi_deg: Optional[float] = None
    phi_clamped: Optional[bool] = None
    v_mid: Optional[Velocity2D] = None
    v_left: Optional[Velocity2D] = None
    v_right: Optional[Velocity2D] = None
    predicted_future: Optional[Point] = None
    movement_class: Optional[MovementClass] = None
    collision_imminent: Optional[bool] = None
    latency_us: int = 0


@dataclass(frozen=True)
class PathProjection:
    """Uniformly stepped linear path from now to the horizon."""

    points: tuple[Point, ...]
    step_s: float


def project_path(
    track: Track, horizon_s: float, step_s: float, window: int = 3
) -> PathProjection:
    """Extrapolate the midpoint path at uniform steps up to the horizon.

    The first point is the current midpoint; subsequent points advance
    by ``step_s`` along the window velocity until the horizon is
    covered.

    Raises:
        InsufficientHistory: the track cannot yield a window velocity.
        ValueError: nonpositive horizon or step.
    """
    if horizon_s <= 0 or step_s <= 0:
        raise ValueError("horizon_s and step_s must be positive")
    v = track.velocity(window=window, point="mid")
    mid = track.last().mid
    # small fuzz so an exact multiple does not gain a step to float error
    n = math.ceil(horizon_s / step_s - 1e-9)
    points = tuple(extrapolate(mid, v, k * step_s) for k in range(n + 1))
    return PathProjection(points=points, step_s=step_s)


class Pipeline:
    """Stateful per-stream frame processor.

    Holds one track, the discretization layout, the collision zone and
    an optional decision tree. Frames must arrive in strictly
    increasing time order; a gap longer than the staleness threshold
    restarts the track so velocities never span a dropout.
    """

    def __init__(self, cfg: PipelineConfig, tree: Optional[Node] = None):
        self.cfg = cfg
        self.tree = tree
        self._disc: DiscretizationConfig = cfg.discretization()
        x0, y0, x1, y1 = cfg.zone
        self._zone = CollisionZone(x0, y0, x1, y1, horizon_s=cfg.horizon_s)
        self._track = Track(capacity=max(64, cfg.velocity_window + 2))
        self._last_t: Optional[float] = None

    @property
    def track(self) -> Track:
        return self._track

    @property
    def zone(self) -> CollisionZone:
        return self._zone

    def reset(self) -> None:
        self._track.reset()
        self._last_t = None

    def process_frame(self, frame: LandmarkFrame) -> FrameResult:
        """Advance the stream by one frame.

        Raises:
            NonMonotonicTimestamp: frame time does not strictly increase.
        """
        start = time.perf_counter_ns()
        if self._last_t is not None and frame.t <= self._last_t:
            raise NonMonotonicTimestamp(
                f"frame time {frame.t} does not advance past {self._last_t}"
            )
        self._last_t = frame.t

        if not has_pose(frame, self.cfg.min_confidence):
            return self._finish(FrameResult(t=frame.t, skipped_reason=SkipReason.NO_POSE), start)

        left = np.asarray(frame.landmarks[LEFT_SHOULDER], dtype=float)
        right = np.asarray(frame.landmarks[RIGHT_SHOULDER], dtype=float)

        reason: Optional[SkipReason] = None
        theta = phi = None
        clamped = None
        try:
            # orientation uses normalized coordinates; it is scale-free
            angle = orientation_from_shoulders(left, right)
            theta, phi, clamped = angle.theta_rad, angle.phi_deg, angle.clamped
        except DegenerateLandmarks:
            reason = SkipReason.DEGENERATE
        except NearPiRotation:
            reason = SkipReason.NEAR_PI

        last = self._track.last()
        if last is not None and frame.t - last.t > self.cfg.staleness_s:
            self._track.reset()
        w, h = self.cfg.frame_width_px, self.cfg.frame_height_px
        self._track.push(
            frame.t,
            (float(left[0]) * w, float(left[1]) * h),
            (float(right[0]) * w, float(right[1]) * h),
        )

        v_mid = v_left = v_right = None
        future = None
        collision = None
        movement: Optional[MovementClass] = None
        window = self.cfg.velocity_window
        if len(self._track) >= window + 1:
            v_mid = self._track.velocity(window=window, point="mid")
            v_left = self._track.velocity(window=window, point="left")
            v_right = self._track.velocity(window=window, point="right")
            future = extrapolate(self._track.last().mid, v_mid, self.cfg.horizon_s)
            collision = check_collision(future, self._zone)
            if reason is None and self.tree is not None:
                feats = discretize(
                    FeatureVector(vx=v_mid[0], vy=v_mid[1], phi_deg=phi), self._disc
                )
                label = classify(
                    self.tree,
                    {
                        "vx_bin": feats.vx_bin.value,
                        "vy_bin": feats.vy_bin.value,
                        "phi_bin": feats.phi_bin.value,
                    },
                )
                movement = MovementClass(label)
        else:
            reason = reason or SkipReason.INSUFFICIENT_HISTORY

        return self._finish(
            FrameResult(
                t=frame.t,
                skipped_reason=reason,
                theta_rad=theta,
                phi_deg=phi,
                phi_clamped=clamped,
                v_mid=v_mid,
                v_left=v_left,
                v_right=v_right,
                predicted_future=future,
                movement_class=movement,
                collision_imminent=collision,
            ),
            start,
        )

    @staticmethod
    def _finish(result: FrameResult, start_ns: int) -> FrameResult:
        elapsed_us = (time.perf_counter_ns() - start_ns) // 1000
        return FrameResult(**{**result.__dict__, "latency_us": int(elapsed_us)})

    def project(
        self, horizon_s: Optional[float] = None, step_s: Optional[float] = None
    ) -> PathProjection:
        """Path projection from the current track state.

        Raises:
            InsufficientHistory: not enough observations for a velocity.
        """
        return project_path(
            self._track,
            self.cfg.horizon_s if horizon_s is None else horizon_s,
            self.cfg.step_s if step_s is None else step_s,
            window=self.cfg.velocity_window,
        )

    def run(self, frames: Iterable[LandmarkFrame]) -> Iterator[FrameResult]:
        for frame in frames:
            yield self.process_frame(frame)


def run_stream(
    frames: Iterable[LandmarkFrame],
    cfg: PipelineConfig,
    tree: Optional[Node] = None,
) -> Iterator[FrameResult]:
    """One FrameResult per input frame, in order, with bounded memory."""
    return Pipeline(cfg, tree=tree).run(frames)
