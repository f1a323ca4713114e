"""Synthetic clips and scripted detector backends shared by the tests."""

import cv2
import numpy as np

from landmark_extractor import PoseDetection

WIDTH, HEIGHT = 64, 48
FPS = 15.0
N_FRAMES = 45


def write_video(path, frames, fps=FPS):
    writer = cv2.VideoWriter(
        str(path), cv2.VideoWriter_fourcc(*"MJPG"), fps, (WIDTH, HEIGHT)
    )
    assert writer.isOpened()
    for frame in frames:
        writer.write(frame)
    writer.release()


def blank():
    return np.zeros((HEIGHT, WIDTH, 3), np.uint8)


class BlobBackend:
    """Shoulders straddle the centroid of the bright pixels."""

    def detect(self, frame_bgr):
        bright = frame_bgr.max(axis=2) > 200
        ys, xs = np.nonzero(bright)
        if xs.size == 0:
            return []
        height, width = bright.shape
        x = float(xs.mean()) / width
        y = float(ys.mean()) / height
        dx = 4.0 / width
        return [
            PoseDetection(
                score=0.9,
                landmarks={
                    "left_shoulder": (x + dx, y, -0.05),
                    "right_shoulder": (x - dx, y, 0.05),
                },
                confidence={"left_shoulder": 0.9, "right_shoulder": 0.92},
            )
        ]

    def close(self):
        pass


class ScriptedBackend:
    """Replays one fixed detection list for every frame."""

    def __init__(self, detections, fail_on=()):
        self.detections = list(detections)
        self.fail_on = set(fail_on)
        self.calls = 0

    def detect(self, frame_bgr):
        index = self.calls
        self.calls += 1
        if index in self.fail_on:
            raise RuntimeError(f"detector crash on frame {index}")
        return self.detections

    def close(self):
        pass
