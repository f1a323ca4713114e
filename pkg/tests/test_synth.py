import math

import pytest

from pedintent import (
    FrameGeometry,
    MovementClass,
    SyntheticScenario,
    orientation_from_shoulders,
    scenario_frames,
)
from pedintent.synth import DIRECTIONS, PHI_CENTERS, true_midpoints

GEOM = FrameGeometry(width_px=432, height_px=432)


def mid_px(frame, geom=GEOM):
    left = frame.landmarks["left_shoulder"]
    right = frame.landmarks["right_shoulder"]
    return (
        (left[0] + right[0]) / 2.0 * geom.width_px,
        (left[1] + right[1]) / 2.0 * geom.height_px,
    )


class TestScenarioShape:
    def test_frame_count_and_rate(self):
        sc = SyntheticScenario(
            movement=MovementClass.PERP_RIGHT, duration_s=2.0, fps=15.0
        )
        frames = scenario_frames(sc, GEOM)
        assert len(frames) == 30
        deltas = [b.t - a.t for a, b in zip(frames, frames[1:])]
        assert all(d == pytest.approx(1.0 / 15.0, abs=1e-12) for d in deltas)

    def test_perp_right_x_increases_y_constant(self):
        sc = SyntheticScenario(
            movement=MovementClass.PERP_RIGHT, duration_s=2.0, fps=15.0
        )
        mids = [mid_px(f) for f in scenario_frames(sc, GEOM)]
        xs = [m[0] for m in mids]
        ys = [m[1] for m in mids]
        assert all(a < b for a, b in zip(xs, xs[1:]))
        assert all(y == pytest.approx(ys[0], abs=1e-9) for y in ys)

    def test_stationary_midpoints_identical(self):
        sc = SyntheticScenario(movement=MovementClass.STATIONARY, duration_s=2.0)
        mids = [mid_px(f) for f in scenario_frames(sc, GEOM)]
        assert all(m == pytest.approx(mids[0], abs=1e-12) for m in mids)

    def test_seed_determinism(self):
        sc = SyntheticScenario(
            movement=MovementClass.TOWARD_CAMERA, noise_sigma_px=3.0, duration_s=2.0
        )
        assert scenario_frames(sc, GEOM, seed=7) == scenario_frames(sc, GEOM, seed=7)

    def test_different_seeds_differ_under_noise(self):
        sc = SyntheticScenario(
            movement=MovementClass.TOWARD_CAMERA, noise_sigma_px=3.0, duration_s=2.0
        )
        assert scenario_frames(sc, GEOM, seed=1) != scenario_frames(sc, GEOM, seed=2)

    def test_noiseless_is_seed_independent(self):
        sc = SyntheticScenario(movement=MovementClass.PERP_LEFT, duration_s=2.0)
        assert scenario_frames(sc, GEOM, seed=1) == scenario_frames(sc, GEOM, seed=2)

    def test_true_midpoints_match_noiseless_frames(self):
        sc = SyntheticScenario(
            movement=MovementClass.OBLIQUE_LEFT_AGAINST, duration_s=2.0
        )
        frames = scenario_frames(sc, GEOM)
        for (t, mid), frame in zip(true_midpoints(sc, GEOM), frames):
            assert t == frame.t
            got = mid_px(frame)
            assert got[0] == pytest.approx(mid[0], abs=1e-9)
            assert got[1] == pytest.approx(mid[1], abs=1e-9)


class TestScenarioOrientation:
    def test_phi_recovered_by_orientation_chain(self):
        sc = SyntheticScenario(
            movement=MovementClass.PERP_RIGHT, duration_s=2.0, phi_sway_deg=25.0
        )
        for frame in scenario_frames(sc, GEOM)[::5]:
            angle = orientation_from_shoulders(
                frame.landmarks["left_shoulder"], frame.landmarks["right_shoulder"]
            )
            assert angle.phi_deg == pytest.approx(sc.phi_at(frame.t), abs=1e-6)

    def test_fixed_phi_target(self):
        sc = SyntheticScenario(
            movement=MovementClass.STATIONARY, duration_s=1.0, phi_deg=42.0
        )
        frame = scenario_frames(sc, GEOM)[0]
        angle = orientation_from_shoulders(
            frame.landmarks["left_shoulder"], frame.landmarks["right_shoulder"]
        )
        assert angle.phi_deg == pytest.approx(42.0, abs=1e-6)

    def test_phi_centers_separate_movers(self):
        assert PHI_CENTERS[MovementClass.PERP_RIGHT] < 90.0
        assert PHI_CENTERS[MovementClass.PERP_LEFT] > 90.0


class TestScenarioValidation:
    def test_directions_cover_all_classes(self):
        assert set(DIRECTIONS) == set(MovementClass)
        for dx, dy in DIRECTIONS.values():
            assert math.hypot(dx, dy) in (pytest.approx(1.0), 0.0)

    def test_phi_near_singularity_rejected(self):
        with pytest.raises(ValueError):
            SyntheticScenario(movement=MovementClass.STATIONARY, phi_deg=180.0)

    def test_sway_must_stay_in_domain(self):
        with pytest.raises(ValueError):
            SyntheticScenario(
                movement=MovementClass.STATIONARY, phi_deg=10.0, phi_sway_deg=20.0
            )

    def test_bad_rates_rejected(self):
        with pytest.raises(ValueError):
            SyntheticScenario(movement=MovementClass.STATIONARY, fps=0.0)


class TestNoiseClamping:
    def test_coordinates_stay_normalized_under_heavy_noise(self):
        sc = SyntheticScenario(
            movement=MovementClass.PERP_RIGHT,
            duration_s=10.0,
            noise_sigma_px=80.0,
        )
        for frame in scenario_frames(sc, GEOM, seed=3):
            for name in ("left_shoulder", "right_shoulder"):
                x, y, _ = frame.landmarks[name]
                assert 0.0 <= x <= 1.0
                assert 0.0 <= y <= 1.0
