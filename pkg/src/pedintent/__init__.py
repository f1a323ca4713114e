"""Monocular pedestrian intent classification from landmark streams.

Per-frame 2D shoulder landmarks become a facing angle (via a look-at
rotation and its quaternion), on-frame pixel velocities, a discrete
movement class from a trained decision tree, and a linear
future-position estimate checked against a collision zone. No depth
information is used anywhere.
"""

from .config import PipelineConfig, load_config, save_config
from .errors import (
    DataError,
    DegenerateLandmarks,
    EmptyDataset,
    EmptyEvaluation,
    InsufficientHistory,
    InsufficientHorizon,
    InsufficientSamples,
    MalformedTreeFile,
    NearPiRotation,
    NonMonotonicTimestamp,
    PedintentError,
    ZeroQuaternion,
)
from .features import (
    DiscretizationConfig,
    DiscreteFeatures,
    FeatureDiscretizer,
    FeatureVector,
    MovementClass,
    PhiBin,
    SpeedBin,
    discretize,
    label_from_displacement,
    movement_class_from_bins,
)
from .geometry import (
    CalibrationFit,
    OrientationAngle,
    fit_calibration,
    look_at_rotation,
    orientation_from_shoulders,
    phi_from_theta,
    quaternion_from_matrix,
    theta_from_quaternion,
)
from .id3 import (
    ATTRIBUTES,
    Id3Classifier,
    Internal,
    Leaf,
    classify,
    dump_tree,
    entropy,
    grow_tree,
    information_gain,
    load_tree,
    read_tree,
    save_tree,
)
from .kinematics import FrameGeometry, Track, extrapolate, pixels_to_meters
from .pipeline import (
    CollisionZone,
    FrameResult,
    LandmarkFrame,
    PathProjection,
    Pipeline,
    SkipReason,
    check_collision,
    observed_midpoints,
    project_path,
    run_stream,
)
from .streamio import (
    read_frames,
    validate_stream,
    write_frames,
    write_results_csv,
    write_results_jsonl,
)
from .synth import SyntheticScenario, scenario_frames
from .training import (
    GainReport,
    build_training_set,
    default_corpus_scenarios,
    default_training_set,
    train_from_files,
    train_tree,
    write_corpus,
)
from .evaluation import (
    AccuracyReport,
    LatencyStats,
    MarginCurve,
    OpCount,
    accuracy_at,
    accuracy_report,
    accuracy_vs_margin,
    classification_accuracy,
    count_classification_ops,
    latency_bench,
    multi_file_eval,
    prediction_errors,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyReport",
    "ATTRIBUTES",
    "CalibrationFit",
    "CollisionZone",
    "DataError",
    "DegenerateLandmarks",
    "DiscreteFeatures",
    "DiscretizationConfig",
    "EmptyDataset",
    "EmptyEvaluation",
    "FeatureDiscretizer",
    "FeatureVector",
    "FrameGeometry",
    "FrameResult",
    "GainReport",
    "Id3Classifier",
    "InsufficientHistory",
    "InsufficientHorizon",
    "InsufficientSamples",
    "Internal",
    "LandmarkFrame",
    "LatencyStats",
    "Leaf",
    "MalformedTreeFile",
    "MarginCurve",
    "MovementClass",
    "NearPiRotation",
    "NonMonotonicTimestamp",
    "OpCount",
    "OrientationAngle",
    "PathProjection",
    "PedintentError",
    "PhiBin",
    "Pipeline",
    "PipelineConfig",
    "SkipReason",
    "SpeedBin",
    "SyntheticScenario",
    "Track",
    "ZeroQuaternion",
    "accuracy_at",
    "accuracy_report",
    "accuracy_vs_margin",
    "build_training_set",
    "check_collision",
    "classification_accuracy",
    "classify",
    "count_classification_ops",
    "default_corpus_scenarios",
    "default_training_set",
    "discretize",
    "dump_tree",
    "entropy",
    "extrapolate",
    "fit_calibration",
    "grow_tree",
    "information_gain",
    "label_from_displacement",
    "latency_bench",
    "load_config",
    "load_tree",
    "look_at_rotation",
    "movement_class_from_bins",
    "multi_file_eval",
    "observed_midpoints",
    "orientation_from_shoulders",
    "phi_from_theta",
    "pixels_to_meters",
    "prediction_errors",
    "project_path",
    "quaternion_from_matrix",
    "read_frames",
    "read_tree",
    "run_stream",
    "save_config",
    "save_tree",
    "scenario_frames",
    "theta_from_quaternion",
    "train_from_files",
    "train_tree",
    "validate_stream",
    "write_corpus",
    "write_frames",
    "write_results_csv",
    "write_results_jsonl",
]
