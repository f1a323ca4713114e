"""Exception types raised across the package."""


class PedintentError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateLandmarks(PedintentError):
    """Shoulder landmarks coincide or align with the vertical axis."""


class NearPiRotation(PedintentError):
    """Rotation too close to a half turn for the quaternion conversion."""


class ZeroQuaternion(PedintentError):
    """Quaternion norm too small to define an axis angle."""


class InsufficientSamples(PedintentError):
    """Not enough distinct calibration samples for a line fit."""


class NonMonotonicTimestamp(PedintentError):
    """Observation timestamp not strictly greater than the previous one."""


class InsufficientHistory(PedintentError):
    """Track too short for the requested velocity window."""


class InsufficientHorizon(PedintentError):
    """Track does not extend far enough into the future to derive a label."""


class EmptyDataset(PedintentError):
    """An entropy or tree-building operation received no samples."""


class EmptyEvaluation(PedintentError):
    """An evaluation or benchmark received no usable frames."""


class MalformedTreeFile(PedintentError):
    """Tree file failed to parse or validate.

    ``position`` describes where the problem was found: either a
    ``line:column`` pair from the JSON parser or a path such as
    ``tree.children.pos`` into the decoded document.
    """

    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (at {position})")
        self.position = position


class DataError(PedintentError):
    """Malformed external input (stream line, config file, CSV row)."""
