"""Stream serialization: JSONL landmark input, CSV/JSONL result output.

Input schema, one JSON object per line:

    {"t": 1.25,
     "landmarks": {"left_shoulder": [x, y, z], "right_shoulder": [x, y, z]},
     "confidence": {"left_shoulder": 0.97, "right_shoulder": 0.95}}

``x`` and ``y`` are normalized to [0, 1]; ``z`` is the pose model's
relative depth and is passed through unchecked. A line without a
"landmarks" key (or with it null) records a frame where no pose was
detected.
"""

from __future__ import annotations

import csv
import json
import math
from typing import Any, Callable, IO, Iterable, Iterator, Optional

from .errors import DataError
from .pipeline import FrameResult, LandmarkFrame

RESULT_COLUMNS: tuple[str, ...] = (
    "t",
    "skipped_reason",
    "theta_rad",
    "phi_deg",
    "phi_clamped",
    "vx_mid",
    "vy_mid",
    "vx_left",
    "vy_left",
    "vx_right",
    "vy_right",
    "future_x",
    "future_y",
    "movement_class",
    "collision_imminent",
    "latency_us",
)


def _require_number(value: Any, what: str, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DataError(f"{where}: {what} must be a number")
    value = float(value)
    if not math.isfinite(value):
        raise DataError(f"{where}: {what} must be finite")
    return value


def parse_frame_obj(obj: Any, where: str = "frame") -> LandmarkFrame:
    """Validate one parsed JSON object against the landmark schema.

    Raises:
        DataError: any schema violation, prefixed with ``where``.
    """
    if not isinstance(obj, dict):
        raise DataError(f"{where}: frame must be a JSON object")
    if "t" not in obj:
        raise DataError(f"{where}: missing required field 't'")
    t = _require_number(obj["t"], "'t'", where)

    raw_landmarks = obj.get("landmarks")
    landmarks: Optional[dict[str, tuple[float, float, float]]] = None
    if raw_landmarks is not None:
        if not isinstance(raw_landmarks, dict):
            raise DataError(f"{where}: 'landmarks' must be an object")
        landmarks = {}
        for name, coords in raw_landmarks.items():
            if not isinstance(coords, (list, tuple)) or len(coords) != 3:
                raise DataError(f"{where}: landmark {name!r} must be [x, y, z]")
            x, y, z = (
                _require_number(c, f"landmark {name!r} component", where)
                for c in coords
            )
            if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
                raise DataError(
                    f"{where}: landmark {name!r} x,y must lie in [0, 1]"
                )
            landmarks[name] = (x, y, z)

    raw_conf = obj.get("confidence", {})
    if raw_conf is None:
        raw_conf = {}
    if not isinstance(raw_conf, dict):
        raise DataError(f"{where}: 'confidence' must be an object")
    confidence = {}
    for name, c in raw_conf.items():
        c = _require_number(c, f"confidence for {name!r}", where)
        if not 0.0 <= c <= 1.0:
            raise DataError(f"{where}: confidence for {name!r} must lie in [0, 1]")
        confidence[name] = c

    return LandmarkFrame(t=t, landmarks=landmarks, confidence=confidence)


def parse_frame_line(line: str, line_no: int, source: str = "stream") -> LandmarkFrame:
    where = f"{source}:{line_no}"
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise DataError(f"{where}: invalid JSON: {exc.msg}") from exc
    return parse_frame_obj(obj, where)


def read_frames(path) -> list[LandmarkFrame]:
    """Parse a JSONL landmark file strictly; any bad line raises.

    Raises:
        DataError: unreadable file or schema violation, naming the line.
    """
    frames = []
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                frames.append(parse_frame_line(line, line_no, source=str(path)))
    except OSError as exc:
        raise DataError(f"cannot read landmark file {path}: {exc}") from exc
    return frames


def iter_frames(
    fh: IO[str],
    source: str = "stream",
    on_error: Optional[Callable[[DataError], None]] = None,
) -> Iterator[LandmarkFrame]:
    """Stream frames from an open text handle with bounded memory.

    With ``on_error`` set, malformed lines are reported through it and
    skipped so a long-running stream never aborts; without it the first
    bad line raises.
    """
    for line_no, line in enumerate(fh, start=1):
        if not line.strip():
            continue
        try:
            yield parse_frame_line(line, line_no, source=source)
        except DataError as exc:
            if on_error is None:
                raise
            on_error(exc)


def validate_stream(path) -> list[str]:
    """Collect every schema and ordering violation in a JSONL file.

    Returns a list of human-readable error strings; an empty list means
    the file is valid pipeline input with strictly increasing times.
    """
    errors: list[str] = []
    last_t: Optional[float] = None
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    frame = parse_frame_line(line, line_no, source=str(path))
                except DataError as exc:
                    errors.append(str(exc))
                    continue
                if last_t is not None and frame.t <= last_t:
                    errors.append(
                        f"{path}:{line_no}: t {frame.t} does not advance past {last_t}"
                    )
                last_t = frame.t
    except OSError as exc:
        return [f"cannot read landmark file {path}: {exc}"]
    return errors


def frame_to_obj(frame: LandmarkFrame) -> dict:
    obj: dict[str, Any] = {"t": frame.t}
    if frame.landmarks is not None:
        obj["landmarks"] = {k: list(v) for k, v in frame.landmarks.items()}
    if frame.confidence:
        obj["confidence"] = dict(frame.confidence)
    return obj


def write_frames(frames: Iterable[LandmarkFrame], fh: IO[str]) -> int:
    """Write frames as JSONL; returns the number of lines written."""
    n = 0
    for frame in frames:
        fh.write(json.dumps(frame_to_obj(frame), sort_keys=True))
        fh.write("\n")
        n += 1
    return n


def _fmt(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _result_values(result: FrameResult) -> tuple:
    v_mid = result.v_mid or (None, None)
    v_left = result.v_left or (None, None)
    v_right = result.v_right or (None, None)
    future = result.predicted_future or (None, None)
    return (
        result.t,
        result.skipped_reason.value if result.skipped_reason else None,
        result.theta_rad,
        result.phi_deg,
        result.phi_clamped,
        v_mid[0],
        v_mid[1],
        v_left[0],
        v_left[1],
        v_right[0],
        v_right[1],
        future[0],
        future[1],
        result.movement_class.value if result.movement_class else None,
        result.collision_imminent,
        result.latency_us,
    )


def result_to_row(result: FrameResult) -> list[str]:
    return [_fmt(v) for v in _result_values(result)]


def write_results_csv(results: Iterable[FrameResult], fh: IO[str]) -> int:
    """Write one CSV row per result under a fixed header; returns rows."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(RESULT_COLUMNS)
    n = 0
    for result in results:
        writer.writerow(result_to_row(result))
        n += 1
    return n


def result_to_obj(result: FrameResult) -> dict:
    return dict(zip(RESULT_COLUMNS, _result_values(result)))


def write_results_jsonl(results: Iterable[FrameResult], fh: IO[str]) -> int:
    n = 0
    for result in results:
        fh.write(json.dumps(result_to_obj(result), sort_keys=True))
        fh.write("\n")
        n += 1
    return n
