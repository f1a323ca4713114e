"""Synthetic labeled walker streams for training and evaluation.

Each scenario is a pedestrian moving linearly on the image plane in one
of the nine movement classes, emitting shoulder landmarks at a fixed
frame rate. The shoulder axis yaws so the orientation chain recovers a
target facing angle phi; an optional sinusoidal sway varies phi around
a class-dependent center so facing carries some, but weak, class
information. Optional isotropic Gaussian pixel noise perturbs the
landmark positions.

Image convention: y grows downward, so "with" classes (moving the same
way as the camera platform) shrink y and "against" classes grow it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .features import MovementClass
from .kinematics import FrameGeometry, Point
from .pipeline import LEFT_SHOULDER, RIGHT_SHOULDER, LandmarkFrame

_DIAG = 1.0 / math.sqrt(2.0)

# unit motion direction per class, in y-down pixel coordinates
DIRECTIONS: dict[MovementClass, tuple[float, float]] = {
    MovementClass.STATIONARY: (0.0, 0.0),
    MovementClass.PERP_RIGHT: (1.0, 0.0),
    MovementClass.PERP_LEFT: (-1.0, 0.0),
    MovementClass.TOWARD_CAMERA: (0.0, 1.0),
    MovementClass.AWAY_FROM_CAMERA: (0.0, -1.0),
    MovementClass.OBLIQUE_RIGHT_WITH: (_DIAG, -_DIAG),
    MovementClass.OBLIQUE_LEFT_WITH: (-_DIAG, -_DIAG),
    MovementClass.OBLIQUE_RIGHT_AGAINST: (_DIAG, _DIAG),
    MovementClass.OBLIQUE_LEFT_AGAINST: (-_DIAG, _DIAG),
}

# facing-angle centers: rightward movers face right of front, leftward
# movers left of front, camera-axis movers face front
PHI_CENTERS: dict[MovementClass, float] = {
    MovementClass.STATIONARY: 90.0,
    MovementClass.PERP_RIGHT: 72.0,
    MovementClass.PERP_LEFT: 108.0,
    MovementClass.TOWARD_CAMERA: 90.0,
    MovementClass.AWAY_FROM_CAMERA: 90.0,
    MovementClass.OBLIQUE_RIGHT_WITH: 72.0,
    MovementClass.OBLIQUE_LEFT_WITH: 108.0,
    MovementClass.OBLIQUE_RIGHT_AGAINST: 72.0,
    MovementClass.OBLIQUE_LEFT_AGAINST: 108.0,
}


@dataclass(frozen=True)
class SyntheticScenario:
    """One linear walker: class, speed, duration, noise and facing sway."""

    movement: MovementClass
    speed_px_s: float = 10.0
    duration_s: float = 30.0
    fps: float = 15.0
    noise_sigma_px: float = 0.0
    phi_deg: Optional[float] = None
    phi_sway_deg: float = 0.0
    phi_sway_hz: float = 0.5
    start_px: Optional[Point] = None
    shoulder_halfwidth_px: float = 18.0
    confidence: float = 0.97

    def __post_init__(self):
        if self.duration_s <= 0 or self.fps <= 0:
            raise ValueError("duration_s and fps must be positive")
        if self.speed_px_s < 0 or self.noise_sigma_px < 0:
            raise ValueError("speed and noise sigma must be nonnegative")
        if self.shoulder_halfwidth_px <= 0:
            raise ValueError("shoulder_halfwidth_px must be positive")
        if self.phi_sway_deg < 0 or self.phi_sway_hz <= 0:
            raise ValueError("sway amplitude must be >= 0 and frequency > 0")
        phi_lo = self.phi_center() - self.phi_sway_deg
        phi_hi = self.phi_center() + self.phi_sway_deg
        # phi = 180 puts the orientation at the half-angle singularity
        if not (0.0 <= phi_lo and phi_hi < 180.0):
            raise ValueError("phi (including sway) must stay within [0, 180)")

    def phi_center(self) -> float:
        if self.phi_deg is not None:
            return self.phi_deg
        return PHI_CENTERS[self.movement]

    def n_frames(self) -> int:
        return int(round(self.duration_s * self.fps))

    def phi_at(self, t: float) -> float:
        if self.phi_sway_deg == 0.0:
            return self.phi_center()
        return self.phi_center() + self.phi_sway_deg * math.sin(
            2.0 * math.pi * self.phi_sway_hz * t
        )

    def start(self, geom: FrameGeometry) -> Point:
        """Default start centers the whole trajectory on the frame."""
        if self.start_px is not None:
            return self.start_px
        dx, dy = DIRECTIONS[self.movement]
        travel = self.speed_px_s * self.duration_s
        return (
            geom.width_px / 2.0 - dx * travel / 2.0,
            geom.height_px / 2.0 - dy * travel / 2.0,
        )

    def midpoint_at(self, t: float, geom: FrameGeometry) -> Point:
        """Noiseless pixel midpoint at stream time ``t``."""
        x0, y0 = self.start(geom)
        dx, dy = DIRECTIONS[self.movement]
        return (x0 + dx * self.speed_px_s * t, y0 + dy * self.speed_px_s * t)


def _shoulders_px(
    scenario: SyntheticScenario, t: float, geom: FrameGeometry
) -> tuple[np.ndarray, np.ndarray]:
    """Noiseless left/right shoulder positions as (x_px, y_px, z_px)."""
    mx, my = scenario.midpoint_at(t, geom)
    # the yaw that makes the orientation chain report phi(t)
    psi = math.radians((scenario.phi_at(t) + 180.0) / 2.0)
    hw = scenario.shoulder_halfwidth_px
    offset = np.array([hw * math.cos(psi), 0.0, hw * math.sin(psi)])
    mid = np.array([mx, my, 0.0])
    return mid + offset, mid - offset


def true_midpoints(
    scenario: SyntheticScenario, geom: FrameGeometry
) -> list[tuple[float, Point]]:
    """Noiseless (t, midpoint) ground truth, one entry per frame."""
    return [
        (k / scenario.fps, scenario.midpoint_at(k / scenario.fps, geom))
        for k in range(scenario.n_frames())
    ]


def scenario_frames(
    scenario: SyntheticScenario, geom: FrameGeometry, seed: int = 0
) -> list[LandmarkFrame]:
    """Generate the landmark stream; reproducible for a fixed seed.

    Noise is applied to the pixel x and y of each shoulder; z keeps its
    noiseless value. Normalized coordinates clamp to [0, 1] so extreme
    noise draws cannot leave the schema's valid range.
    """
    rng = np.random.default_rng(seed)
    w, h = float(geom.width_px), float(geom.height_px)
    sigma = scenario.noise_sigma_px
    conf = {LEFT_SHOULDER: scenario.confidence, RIGHT_SHOULDER: scenario.confidence}
    frames = []
    for k in range(scenario.n_frames()):
        t = k / scenario.fps
        left, right = _shoulders_px(scenario, t, geom)
        if sigma > 0.0:
            noise = rng.normal(0.0, sigma, size=4)
            left = left + np.array([noise[0], noise[1], 0.0])
            right = right + np.array([noise[2], noise[3], 0.0])
        landmarks = {
            LEFT_SHOULDER: (
                min(1.0, max(0.0, left[0] / w)),
                min(1.0, max(0.0, left[1] / h)),
                left[2] / w,
            ),
            RIGHT_SHOULDER: (
                min(1.0, max(0.0, right[0] / w)),
                min(1.0, max(0.0, right[1] / h)),
                right[2] / w,
            ),
        }
        frames.append(LandmarkFrame(t=t, landmarks=landmarks, confidence=conf))
    return frames
