"""Pixel-space position history, on-frame velocities and extrapolation.

All positions are in pixels with the origin at the frame's top-left
corner (x right, y down). Velocities are pixels per second, taken as an
endpoint difference over a configurable window of frames divided by the
elapsed time between those frames.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

from .errors import InsufficientHistory, NonMonotonicTimestamp

Point = tuple[float, float]
Velocity2D = tuple[float, float]


@dataclass(frozen=True)
class FrameGeometry:
    """Frame size in pixels and the ground-plane width it captures.

    ``cone_width_m`` is the widest extent of the viewing cone in meters,
    used only to express pixel distances in approximate meters.
    """

    width_px: int
    height_px: int
    cone_width_m: float = 10.0

    def __post_init__(self):
        if self.width_px <= 0 or self.height_px <= 0:
            raise ValueError("frame dimensions must be positive")
        if self.cone_width_m <= 0:
            raise ValueError("cone width must be positive")


class TrackEntry(NamedTuple):
    t: float
    left: Point
    right: Point
    mid: Point


class Track:
    """Bounded history of one pedestrian's shoulder positions.

    Ring semantics: at capacity, pushing evicts the oldest entry.
    Single-writer; reads need no synchronization beyond that discipline.
    """

    def __init__(self, capacity: int = 64):
        if capacity < 1:
            raise ValueError("capacity must be a positive integer")
        self.capacity = capacity
        self._entries: deque[TrackEntry] = deque(maxlen=capacity)

    def __len__(self) -> int:
        return len(self._entries)

    @property
    def entries(self) -> tuple[TrackEntry, ...]:
        return tuple(self._entries)

    def last(self) -> TrackEntry | None:
        return self._entries[-1] if self._entries else None

    def reset(self) -> None:
        self._entries.clear()

    def push(self, t: float, left: Point, right: Point) -> "Track":
        """Append an observation; the midpoint is derived from the pair.

        Raises:
            NonMonotonicTimestamp: ``t`` is not strictly greater than the
                newest stored timestamp.
        """
        if self._entries and t <= self._entries[-1].t:
            raise NonMonotonicTimestamp(
                f"timestamp {t!r} is not after {self._entries[-1].t!r}"
            )
        mid = ((left[0] + right[0]) / 2.0, (left[1] + right[1]) / 2.0)
        self._entries.append(
            TrackEntry(t=float(t), left=(float(left[0]), float(left[1])),
                       right=(float(right[0]), float(right[1])), mid=mid)
        )
        return self

    def velocity(self, window: int = 3, point: str = "mid") -> Velocity2D:
        """Velocity in px/s over the newest ``window`` frames.

        Endpoint difference of the chosen point ("mid", "left" or
        "right") divided by the elapsed time across the window.

        Raises:
            InsufficientHistory: fewer than ``window + 1`` entries.
        """
        if window < 1:
            raise ValueError("window must be a positive integer")
        if point not in ("mid", "left", "right"):
            raise ValueError(f"unknown track point {point!r}")
        if len(self._entries) < window + 1:
            raise InsufficientHistory(
                f"need {window + 1} observations, have {len(self._entries)}"
            )
        newest = self._entries[-1]
        oldest = self._entries[-1 - window]
        dt = newest.t - oldest.t
        p_new = getattr(newest, point)
        p_old = getattr(oldest, point)
        return ((p_new[0] - p_old[0]) / dt, (p_new[1] - p_old[1]) / dt)


def extrapolate(p: Point, v: Velocity2D, horizon: float) -> Point:
    """Linear position forecast ``p + v * horizon``; no frame clamping."""
    if horizon < 0:
        raise ValueError("horizon must be non-negative")
    return (p[0] + v[0] * horizon, p[1] + v[1] * horizon)


def pixels_to_meters(d_px: float, geom: FrameGeometry) -> float:
    """Express a pixel distance in meters at the widest cone extent."""
    return d_px * geom.cone_width_m / geom.width_px
