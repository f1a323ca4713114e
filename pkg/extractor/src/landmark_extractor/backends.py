"""Pose-detector backends.

A backend turns one BGR frame into zero or more candidate detections.
The extractor picks the best one per frame, so backends stay free of
thresholding and selection policy.
"""

from dataclasses import dataclass, field
from typing import Mapping, Protocol, Sequence


class BackendUnavailable(RuntimeError):
    """The requested backend's runtime dependency is not installed."""


@dataclass(frozen=True)
class PoseDetection:
    """One detected subject in one frame.

    Coordinates are normalized to the frame (x right, y down, origin
    top-left); z is whatever the pose model emits and is passed through
    downstream unmodified. ``score`` ranks detections within a frame
    and gates them against the job's confidence threshold.
    """

    score: float
    landmarks: Mapping[str, tuple[float, float, float]]
    confidence: Mapping[str, float] = field(default_factory=dict)


class PoseBackend(Protocol):
    def detect(self, frame_bgr) -> Sequence[PoseDetection]:
        """Detections for a single BGR image array."""
        ...

    def close(self) -> None:
        ...


class MediapipeBackend:
    """Single-subject pose landmarks via the mediapipe pose solution.

    Imported lazily so the package works (with a stub or custom
    backend) on machines where mediapipe is not installed. The solution
    tracks at most one person, so ``detect`` returns zero or one
    detections; its score is the mean landmark visibility.
    """

    def __init__(self, model_complexity: int = 1):
        try:
            import mediapipe as mp
        except ImportError as exc:
            raise BackendUnavailable(
                "mediapipe is not installed; install the 'pose' extra "
                "or supply another PoseBackend"
            ) from exc
        self._names = [mark.name.lower() for mark in mp.solutions.pose.PoseLandmark]
        self._pose = mp.solutions.pose.Pose(model_complexity=model_complexity)
        self._cv2 = __import__("cv2")

    def detect(self, frame_bgr) -> list[PoseDetection]:
        rgb = self._cv2.cvtColor(frame_bgr, self._cv2.COLOR_BGR2RGB)
        result = self._pose.process(rgb)
        if result.pose_landmarks is None:
            return []
        landmarks = {}
        confidence = {}
        for name, mark in zip(self._names, result.pose_landmarks.landmark):
            landmarks[name] = (mark.x, mark.y, mark.z)
            confidence[name] = mark.visibility
        score = sum(confidence.values()) / len(confidence)
        return [
            PoseDetection(score=score, landmarks=landmarks, confidence=confidence)
        ]

    def close(self) -> None:
        self._pose.close()
