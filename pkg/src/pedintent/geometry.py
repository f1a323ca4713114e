"""Body-orientation estimation from a pair of shoulder landmarks.

The chain is: shoulder pair -> look-at rotation matrix -> scalar-first
quaternion -> axis angle ``theta`` -> calibrated facing angle ``phi``
measured against the image horizontal.

Conventions
-----------
- Vectors are length-3 array-likes (x right, y down, z toward the camera,
  in the pose model's normalized coordinates). Only directions matter
  here, so the absolute scale and origin of the landmark space are
  irrelevant.
- Rotation matrices are 3x3 with the basis vectors in the columns.
- Quaternions are scalar-first ``(a, b, c, d)`` encoding ``a + bi + cj + dk``.
- The axis angle recovered from a unit quaternion is half the physical
  rotation angle; the linear calibration to ``phi`` absorbs that factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateLandmarks,
    InsufficientSamples,
    NearPiRotation,
    ZeroQuaternion,
)

# Image-vertical up direction used to complete the look-at basis.
WORLD_UP = np.array([0.0, 1.0, 0.0])

# Fixed linear calibration from the axis angle (in degrees) to the facing
# angle: phi = 4 * theta_deg - 180, valid for theta_deg in [45, 90] which
# maps onto phi in [0, 180]. ``fit_calibration`` re-derives these constants
# from user-collected samples.
FACING_SLOPE = 4.0
FACING_INTERCEPT = -180.0

_EPS_PARALLEL = 1e-9
_EPS_TRACE = 4e-12
_EPS_NORM = 1e-12


@dataclass(frozen=True)
class OrientationAngle:
    """Facing estimate: raw axis angle plus the calibrated image-frame angle.

    ``clamped`` flags frames whose raw calibrated value fell outside
    [0, 180] before clamping, so downstream evaluation can count
    out-of-domain poses.
    """

    theta_rad: float
    phi_deg: float
    clamped: bool


@dataclass(frozen=True)
class CalibrationFit:
    """Least-squares line mapping observed theta (degrees) to phi (degrees)."""

    slope: float
    intercept: float

    def apply(self, theta_deg: float) -> float:
        return self.slope * theta_deg + self.intercept


def look_at_rotation(left_shoulder, right_shoulder) -> np.ndarray:
    """Build a rotation matrix whose columns are a shoulder-aligned basis.

    The first basis vector is the normalized shoulder axis (left minus
    right), the third is its cross product with the image-vertical up
    vector, and the second completes the right-handed set.

    Raises:
        DegenerateLandmarks: shoulders coincide, or the shoulder axis is
            parallel to the vertical so no forward direction exists.
    """
    left = np.asarray(left_shoulder, dtype=float)
    right = np.asarray(right_shoulder, dtype=float)
    axis = left - right
    axis_norm = float(np.linalg.norm(axis))
    if axis_norm <= _EPS_PARALLEL:
        raise DegenerateLandmarks("shoulder landmarks coincide")
    x_hat = axis / axis_norm
    forward = np.cross(x_hat, WORLD_UP)
    forward_norm = float(np.linalg.norm(forward))
    if forward_norm <= _EPS_PARALLEL:
        raise DegenerateLandmarks("shoulder axis is parallel to the vertical")
    z_hat = forward / forward_norm
    y_hat = np.cross(z_hat, x_hat)
    return np.column_stack([x_hat, y_hat, z_hat])


def is_rotation_matrix(rot, tol: float = 1e-6) -> bool:
    """Check orthonormality (R^T R = I) and det = +1 within ``tol``."""
    rot = np.asarray(rot, dtype=float)
    if rot.shape != (3, 3):
        return False
    if not np.all(np.isfinite(rot)):
        return False
    if np.max(np.abs(rot.T @ rot - np.eye(3))) > tol:
        return False
    return abs(float(np.linalg.det(rot)) - 1.0) <= tol


def quaternion_from_matrix(rot) -> np.ndarray:
    """Convert a rotation matrix to a scalar-first unit quaternion.

    Uses the trace-based branch only:

        a = sqrt(|1 + r00 + r11 + r22|) / 2
        b = (r21 - r12) / 4a,  c = (r02 - r20) / 4a,  d = (r10 - r01) / 4a

    Raises:
        NearPiRotation: ``1 + trace`` is not bounded away from zero, i.e.
            the rotation is within numerical reach of a half turn where
            this branch divides by a vanishing scalar part.
    """
    rot = np.asarray(rot, dtype=float)
    trace_term = 1.0 + rot[0, 0] + rot[1, 1] + rot[2, 2]
    if trace_term <= _EPS_TRACE:
        raise NearPiRotation(f"1 + trace = {trace_term:.3e} too close to zero")
    a = 0.5 * math.sqrt(abs(trace_term))
    four_a = 4.0 * a
    b = (rot[2, 1] - rot[1, 2]) / four_a
    c = (rot[0, 2] - rot[2, 0]) / four_a
    d = (rot[1, 0] - rot[0, 1]) / four_a
    return np.array([a, b, c, d])


def theta_from_quaternion(quaternion) -> float:
    """Recover the axis angle ``arccos(a / |q|)`` in [0, pi].

    For a unit quaternion built from a physical rotation by ``alpha``,
    this returns ``alpha / 2``.

    Raises:
        ZeroQuaternion: the norm is too small to define an angle.
    """
    q = np.asarray(quaternion, dtype=float)
    norm = float(np.linalg.norm(q))
    if norm <= _EPS_NORM:
        raise ZeroQuaternion("quaternion norm is numerically zero")
    ratio = min(1.0, max(-1.0, float(q[0]) / norm))
    return math.acos(ratio)


def phi_from_theta(theta_rad: float) -> float:
    """Map the axis angle to the facing angle in degrees, clamped to [0, 180].

    The raw value is ``degrees(theta) * 4 - 180``; axis angles outside
    [pi/4, pi/2] land outside [0, 180] and are clamped.
    """
    raw = math.degrees(theta_rad) * FACING_SLOPE + FACING_INTERCEPT
    return min(180.0, max(0.0, raw))


def orientation_from_shoulders(left_shoulder, right_shoulder) -> OrientationAngle:
    """Run the full chain from a shoulder pair to an OrientationAngle.

    Raises:
        DegenerateLandmarks, NearPiRotation: propagated from the chain.
    """
    rot = look_at_rotation(left_shoulder, right_shoulder)
    theta = theta_from_quaternion(quaternion_from_matrix(rot))
    raw = math.degrees(theta) * FACING_SLOPE + FACING_INTERCEPT
    phi = min(180.0, max(0.0, raw))
    return OrientationAngle(theta_rad=theta, phi_deg=phi, clamped=phi != raw)


def fit_calibration(samples: Iterable[Sequence[float]]) -> CalibrationFit:
    """Ordinary least-squares line through (theta_deg, phi_deg) samples.

    Exists to re-derive the shipped calibration constants from a table of
    observed angle pairs; the runtime itself uses the fixed constants.

    Raises:
        InsufficientSamples: fewer than two samples, or no spread in theta.
    """
    pairs = [(float(t), float(p)) for t, p in samples]
    if len(pairs) < 2:
        raise InsufficientSamples("need at least two calibration samples")
    theta = np.array([t for t, _ in pairs])
    phi = np.array([p for _, p in pairs])
    if float(np.ptp(theta)) <= 0.0:
        raise InsufficientSamples("calibration samples need distinct theta values")
    slope, intercept = np.polyfit(theta, phi, 1)
    return CalibrationFit(slope=float(slope), intercept=float(intercept))
