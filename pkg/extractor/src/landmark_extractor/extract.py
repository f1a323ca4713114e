"""Video to JSONL landmark-stream conversion."""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import cv2

from .backends import PoseBackend, PoseDetection

log = logging.getLogger(__name__)

DEFAULT_LANDMARKS = ("left_shoulder", "right_shoulder")


class VideoUnreadable(RuntimeError):
    """The input video cannot be opened or provides no usable fps."""


@dataclass(frozen=True)
class ExtractionJob:
    """One video-to-stream conversion.

    ``min_confidence`` gates whole detections: a frame whose best
    detection scores below it is written as a no-pose line. Only the
    named landmarks are emitted.
    """

    video_path: Path
    out_path: Path
    min_confidence: float = 0.5
    landmark_names: tuple[str, ...] = DEFAULT_LANDMARKS
    fps_override: Optional[float] = None

    def __post_init__(self):
        if not 0.0 < self.min_confidence <= 1.0:
            raise ValueError("min_confidence must be in (0, 1]")
        if not self.landmark_names:
            raise ValueError("landmark_names must not be empty")
        if self.fps_override is not None and self.fps_override <= 0.0:
            raise ValueError("fps_override must be positive")


@dataclass(frozen=True)
class ExtractionStats:
    frames: int
    with_pose: int
    fps: float

    def to_dict(self) -> dict:
        return {"frames": self.frames, "with_pose": self.with_pose, "fps": self.fps}


def resolve_fps(metadata_fps: float, override: Optional[float]) -> float:
    """Frame rate to timestamp with: the override wins over metadata.

    Raises:
        VideoUnreadable: metadata carries no positive fps and no
            override was given.
    """
    if override is not None:
        return override
    if not metadata_fps > 0.0:
        raise VideoUnreadable(
            f"container reports fps={metadata_fps!r}; pass an fps override"
        )
    return metadata_fps


def best_detection(
    detections: Sequence[PoseDetection],
) -> Optional[PoseDetection]:
    """Highest-scoring detection, or None for an empty frame."""
    if not detections:
        return None
    return max(detections, key=lambda det: det.score)


def _clamp01(value: float) -> float:
    return min(1.0, max(0.0, value))


def frame_record(
    t: float, detection: Optional[PoseDetection], job: ExtractionJob
) -> dict:
    """The JSONL object for one frame; no 'landmarks' key means no pose.

    x and y are clamped into [0, 1] (models may overshoot the frame
    slightly); z passes through untouched. A detection missing any of
    the job's target landmarks counts as no pose.
    """
    if detection is None or detection.score < job.min_confidence:
        return {"t": t}
    landmarks = {}
    confidence = {}
    for name in job.landmark_names:
        if name not in detection.landmarks:
            return {"t": t}
        x, y, z = detection.landmarks[name]
        landmarks[name] = [_clamp01(float(x)), _clamp01(float(y)), float(z)]
        if name in detection.confidence:
            confidence[name] = _clamp01(float(detection.confidence[name]))
    record = {"t": t, "landmarks": landmarks}
    if confidence:
        record["confidence"] = confidence
    return record


def extract(job: ExtractionJob, backend: PoseBackend) -> ExtractionStats:
    """Decode the video and write one JSON line per frame.

    Timestamps are ``frame_index / fps``. A backend exception on one
    frame is logged and that frame becomes a no-pose line; only an
    unreadable container aborts the run.

    Raises:
        VideoUnreadable: the video cannot be opened, or no fps is known.
    """
    capture = cv2.VideoCapture(str(job.video_path))
    if not capture.isOpened():
        raise VideoUnreadable(f"cannot open video: {job.video_path}")
    try:
        fps = resolve_fps(float(capture.get(cv2.CAP_PROP_FPS)), job.fps_override)
        frames = 0
        with_pose = 0
        with open(job.out_path, "w", encoding="utf-8") as fh:
            while True:
                ok, frame = capture.read()
                if not ok:
                    break
                try:
                    detection = best_detection(backend.detect(frame))
                except Exception:
                    log.warning("detector failed on frame %d", frames, exc_info=True)
                    detection = None
                record = frame_record(frames / fps, detection, job)
                with_pose += "landmarks" in record
                fh.write(json.dumps(record, sort_keys=True))
                fh.write("\n")
                frames += 1
    finally:
        capture.release()
    return ExtractionStats(frames=frames, with_pose=with_pose, fps=fps)
