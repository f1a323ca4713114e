import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pedintent import (
    DegenerateLandmarks,
    InsufficientSamples,
    NearPiRotation,
    ZeroQuaternion,
    fit_calibration,
    look_at_rotation,
    orientation_from_shoulders,
    phi_from_theta,
    quaternion_from_matrix,
    theta_from_quaternion,
)
from pedintent.geometry import is_rotation_matrix

# the ten (theta_deg, phi_deg) calibration observations the shipped
# constants were fitted from
CALIBRATION_ROWS = [
    (88, 175),
    (83, 155),
    (78, 135),
    (73, 115),
    (68, 95),
    (63, 75),
    (58, 55),
    (53, 35),
    (48, 15),
    (46, 5),
]

# frozen least-squares oracle for those rows (computed independently)
ORACLE_SLOPE = 4.020458772473651
ORACLE_INTERCEPT = -178.54618722876629


class TestLookAtRotation:
    def test_x_aligned_shoulders_give_identity(self):
        rot = look_at_rotation([1.0, 0.0, 0.0], [0.0, 0.0, 0.0])
        np.testing.assert_allclose(rot, np.eye(3), atol=1e-12)

    def test_z_aligned_shoulders(self):
        rot = look_at_rotation([0.0, 0.0, 1.0], [0.0, 0.0, 0.0])
        expected = np.column_stack(
            [[0.0, 0.0, 1.0], [0.0, 1.0, 0.0], [-1.0, 0.0, 0.0]]
        )
        np.testing.assert_allclose(rot, expected, atol=1e-12)

    def test_columns_are_orthonormal_basis(self):
        rot = look_at_rotation([0.3, 0.1, -0.2], [-0.4, 0.0, 0.5])
        assert is_rotation_matrix(rot)

    def test_coincident_shoulders_degenerate(self):
        with pytest.raises(DegenerateLandmarks):
            look_at_rotation([0.5, 0.5, 0.0], [0.5, 0.5, 0.0])

    def test_vertical_axis_degenerate(self):
        with pytest.raises(DegenerateLandmarks):
            look_at_rotation([0.0, 1.0, 0.0], [0.0, 0.0, 0.0])

    @given(
        st.floats(-1e3, 1e3),
        st.floats(-1e3, 1e3),
        st.floats(-1e3, 1e3),
        st.floats(-1e3, 1e3),
        st.floats(-1e3, 1e3),
        st.floats(-1e3, 1e3),
    )
    @settings(max_examples=200, deadline=None)
    def test_always_rotation_or_degenerate(self, lx, ly, lz, rx, ry, rz):
        try:
            rot = look_at_rotation([lx, ly, lz], [rx, ry, rz])
        except DegenerateLandmarks:
            return
        assert is_rotation_matrix(rot, tol=1e-8)


class TestQuaternion:
    def test_quarter_turn_about_z(self):
        c, s = math.cos(math.pi / 2), math.sin(math.pi / 2)
        rot = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
        q = quaternion_from_matrix(rot)
        expected = np.array([math.sqrt(2) / 2, 0.0, 0.0, math.sqrt(2) / 2])
        np.testing.assert_allclose(q, expected, atol=1e-12)

    def test_identity_matrix(self):
        q = quaternion_from_matrix(np.eye(3))
        np.testing.assert_allclose(q, [1.0, 0.0, 0.0, 0.0], atol=1e-12)

    def test_half_turn_rejected(self):
        rot = np.diag([1.0, -1.0, -1.0])  # pi about x
        with pytest.raises(NearPiRotation):
            quaternion_from_matrix(rot)

    def test_theta_of_equal_components(self):
        theta = theta_from_quaternion([0.5, 0.5, 0.5, 0.5])
        assert theta == pytest.approx(math.pi / 3, abs=1e-12)

    def test_theta_normalizes_scale(self):
        assert theta_from_quaternion([2.0, 0.0, 0.0, 0.0]) == pytest.approx(0.0)

    def test_zero_quaternion_rejected(self):
        with pytest.raises(ZeroQuaternion):
            theta_from_quaternion([0.0, 0.0, 0.0, 0.0])

    @given(
        st.floats(0.02, math.pi - 0.02),
        st.floats(-1.0, 1.0),
        st.floats(-1.0, 1.0),
        st.floats(-1.0, 1.0),
    )
    @settings(max_examples=300, deadline=None)
    def test_matches_axis_angle_construction(self, alpha, ax, ay, az):
        axis = np.array([ax, ay, az])
        norm = np.linalg.norm(axis)
        if norm < 1e-3:
            return
        axis = axis / norm
        # Rodrigues construction, independent of the conversion under test
        k = np.array(
            [
                [0.0, -axis[2], axis[1]],
                [axis[2], 0.0, -axis[0]],
                [-axis[1], axis[0], 0.0],
            ]
        )
        rot = np.eye(3) + math.sin(alpha) * k + (1 - math.cos(alpha)) * (k @ k)
        q = quaternion_from_matrix(rot)
        expected = np.concatenate([[math.cos(alpha / 2)], math.sin(alpha / 2) * axis])
        if np.dot(q, expected) < 0:
            expected = -expected
        np.testing.assert_allclose(q, expected, atol=1e-9)
        assert theta_from_quaternion(q) == pytest.approx(alpha / 2, abs=1e-9)


class TestFacingAngle:
    def test_quarter_angle_maps_to_zero(self):
        assert phi_from_theta(math.pi / 4) == pytest.approx(0.0, abs=1e-9)

    def test_half_angle_maps_to_full(self):
        assert phi_from_theta(math.pi / 2) == pytest.approx(180.0, abs=1e-9)

    def test_midpoint(self):
        assert phi_from_theta(3 * math.pi / 8) == pytest.approx(90.0, abs=1e-9)

    def test_clamps_below(self):
        assert phi_from_theta(0.0) == 0.0

    def test_clamps_above(self):
        assert phi_from_theta(math.pi) == 180.0

    def test_orientation_chain_identity_case(self):
        angle = orientation_from_shoulders([1.0, 0.0, 0.0], [0.0, 0.0, 0.0])
        assert angle.theta_rad == pytest.approx(0.0, abs=1e-12)
        assert angle.phi_deg == 0.0
        assert angle.clamped  # raw value was -180

    def test_orientation_chain_in_range_not_clamped(self):
        # shoulder axis yawed 135 degrees from x toward z: theta = 67.5deg
        psi = math.radians(135.0)
        left = np.array([math.cos(psi), 0.0, math.sin(psi)])
        angle = orientation_from_shoulders(left, -left)
        # axis recovered from (left - right) = 2*left, phi = 4*67.5 - 180
        assert angle.phi_deg == pytest.approx(90.0, abs=1e-9)
        assert not angle.clamped


class TestCalibration:
    def test_table_fit_matches_oracle(self):
        fit = fit_calibration(CALIBRATION_ROWS)
        assert fit.slope == pytest.approx(ORACLE_SLOPE, abs=1e-12)
        assert fit.intercept == pytest.approx(ORACLE_INTERCEPT, abs=1e-9)

    def test_fit_near_shipped_constants(self):
        fit = fit_calibration(CALIBRATION_ROWS)
        assert 3.9 <= fit.slope <= 4.15
        assert -185.0 <= fit.intercept <= -172.0

    def test_apply_is_affine(self):
        fit = fit_calibration([(0.0, 1.0), (1.0, 3.0)])
        assert fit.slope == pytest.approx(2.0)
        assert fit.intercept == pytest.approx(1.0)
        assert fit.apply(2.0) == pytest.approx(5.0)

    def test_too_few_samples(self):
        with pytest.raises(InsufficientSamples):
            fit_calibration([(10.0, 20.0)])

    def test_no_spread_rejected(self):
        with pytest.raises(InsufficientSamples):
            fit_calibration([(10.0, 20.0), (10.0, 30.0)])

    def test_exact_line_recovered(self):
        rows = [(t, 4.0 * t - 180.0) for t in range(40, 90, 5)]
        fit = fit_calibration(rows)
        assert fit.slope == pytest.approx(4.0, abs=1e-9)
        assert fit.intercept == pytest.approx(-180.0, abs=1e-9)
