"""Video to JSONL pose-landmark stream extraction."""

from .backends import (
    BackendUnavailable,
    MediapipeBackend,
    PoseBackend,
    PoseDetection,
)
from .extract import (
    DEFAULT_LANDMARKS,
    ExtractionJob,
    ExtractionStats,
    VideoUnreadable,
    best_detection,
    extract,
    frame_record,
    resolve_fps,
)

__version__ = "0.1.0"

__all__ = [
    "BackendUnavailable",
    "DEFAULT_LANDMARKS",
    "ExtractionJob",
    "ExtractionStats",
    "MediapipeBackend",
    "PoseBackend",
    "PoseDetection",
    "VideoUnreadable",
    "best_detection",
    "extract",
    "frame_record",
    "resolve_fps",
    "__version__",
]
