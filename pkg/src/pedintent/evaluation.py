"""Evaluation surfaces: accuracy-vs-margin, per-file reports, latency,
and a transparent arithmetic-operation count of the classification path.

Prediction error for a frame is the Euclidean pixel distance between
its extrapolated future midpoint and the midpoint actually observed one
horizon later in the same stream, so evaluation needs no annotation
beyond the landmark stream itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .config import PipelineConfig
from .errors import EmptyEvaluation
from .features import (
    DiscretizationConfig,
    FeatureVector,
    MovementClass,
    PhiBin,
    SpeedBin,
)
from .id3 import Internal, Leaf, Node
from .kinematics import Point
from .pipeline import (
    FrameResult,
    LandmarkFrame,
    observed_midpoints,
    run_stream,
)
from .synth import SyntheticScenario, scenario_frames

_HORIZON_FUZZ = 1e-9


@dataclass(frozen=True)
class MarginCurve:
    """(margin_px, accuracy) samples; checked monotone on construction."""

    points: tuple[tuple[float, float], ...]

    def __post_init__(self):
        margins = [m for m, _ in self.points]
        accs = [a for _, a in self.points]
        if any(m1 >= m2 for m1, m2 in zip(margins, margins[1:])):
            raise ValueError("margins must be strictly increasing")
        if any(a1 > a2 + 1e-12 for a1, a2 in zip(accs, accs[1:])):
            raise ValueError("accuracy must be nondecreasing in margin")
        if any(not 0.0 <= a <= 1.0 for a in accs):
            raise ValueError("accuracy must lie in [0, 1]")

    def to_rows(self) -> list[list[float]]:
        return [[m, a] for m, a in self.points]


@dataclass(frozen=True)
class AccuracyReport:
    """Per-file mean accuracies with overall mean and population variance."""

    per_file: tuple[tuple[str, float], ...]
    mean: float
    variance: float

    def to_dict(self) -> dict:
        return {
            "per_file": {name: acc for name, acc in self.per_file},
            "mean": self.mean,
            "variance": self.variance,
        }


@dataclass(frozen=True)
class LatencyStats:
    mean_us: float
    p50_us: float
    p95_us: float
    max_us: float
    n_frames: int

    def to_dict(self) -> dict:
        return {
            "mean": self.mean_us,
            "p50": self.p50_us,
            "p95": self.p95_us,
            "max": self.max_us,
            "n_frames": self.n_frames,
        }


def euclidean(a: Point, b: Point) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def realized_future(
    mids: Sequence[tuple[float, Point]], t: float, horizon_s: float
) -> Optional[Point]:
    """First observed midpoint at least one horizon after ``t``."""
    for mid_t, mid in mids:
        if mid_t - t >= horizon_s - _HORIZON_FUZZ:
            return mid
    return None


def prediction_errors(
    results: Iterable[FrameResult],
    mids: Sequence[tuple[float, Point]],
    horizon_s: float,
) -> list[float]:
    """Pixel errors for every frame with both a prediction and a future."""
    errors = []
    future_idx = 0
    for result in results:
        if result.predicted_future is None:
            continue
        while (
            future_idx < len(mids)
            and mids[future_idx][0] - result.t < horizon_s - _HORIZON_FUZZ
        ):
            future_idx += 1
        if future_idx >= len(mids):
            break
        errors.append(euclidean(result.predicted_future, mids[future_idx][1]))
    return errors


def accuracy_at(errors: Sequence[float], margin_px: float) -> float:
    """Fraction of predictions within the margin.

    Raises:
        EmptyEvaluation: no errors to aggregate.
    """
    if not errors:
        raise EmptyEvaluation("no prediction errors to evaluate")
    return sum(1 for e in errors if e <= margin_px) / len(errors)


def accuracy_vs_margin(
    errors: Sequence[float], margins: Sequence[float]
) -> MarginCurve:
    """Accuracy at each margin; margins are sorted and deduplicated.

    Raises:
        EmptyEvaluation: no errors or no margins.
    """
    margins = sorted(set(margins))
    if not margins:
        raise EmptyEvaluation("no margins requested")
    return MarginCurve(
        points=tuple((m, accuracy_at(errors, m)) for m in margins)
    )


def accuracy_report(per_file: Sequence[tuple[str, float]]) -> AccuracyReport:
    """Aggregate per-file accuracies; variance is population (N) form.

    Raises:
        EmptyEvaluation: no files.
    """
    if not per_file:
        raise EmptyEvaluation("no per-file accuracies")
    values = np.array([acc for _, acc in per_file], dtype=float)
    return AccuracyReport(
        per_file=tuple(per_file),
        mean=float(values.mean()),
        variance=float(values.var(ddof=0)),
    )


def classification_accuracy(
    results: Iterable[FrameResult], expected: MovementClass
) -> float:
    """Fraction of classified frames matching the expected class.

    Raises:
        EmptyEvaluation: no frame carried a class.
    """
    total = 0
    hits = 0
    for result in results:
        if result.movement_class is None:
            continue
        total += 1
        hits += result.movement_class is expected
    if total == 0:
        raise EmptyEvaluation("no classified frames")
    return hits / total


def latency_bench(
    frames: Sequence[LandmarkFrame],
    cfg: PipelineConfig,
    tree: Optional[Node] = None,
    warmup: int = 20,
) -> LatencyStats:
    """Per-frame compute-time distribution, excluding warm-up frames.

    Raises:
        EmptyEvaluation: the stream has no frames beyond the warm-up.
    """
    latencies = [r.latency_us for r in run_stream(frames, cfg, tree)][warmup:]
    if not latencies:
        raise EmptyEvaluation("no frames beyond the warm-up window")
    arr = np.array(latencies, dtype=float)
    return LatencyStats(
        mean_us=float(arr.mean()),
        p50_us=float(np.percentile(arr, 50)),
        p95_us=float(np.percentile(arr, 95)),
        max_us=float(arr.max()),
        n_frames=len(latencies),
    )


@dataclass
class OpCount:
    """Arithmetic and comparison tallies for one prediction."""

    additions: int = 0
    subtractions: int = 0
    multiplications: int = 0
    comparisons: int = 0

    @property
    def total(self) -> int:
        return (
            self.additions
            + self.subtractions
            + self.multiplications
            + self.comparisons
        )

    def to_dict(self) -> dict:
        return {
            "additions": self.additions,
            "subtractions": self.subtractions,
            "multiplications": self.multiplications,
            "comparisons": self.comparisons,
            "total": self.total,
        }


def count_classification_ops(
    fv: FeatureVector,
    tree: Node,
    disc: DiscretizationConfig,
    mid: Point,
    velocity: Point,
    horizon_s: float,
) -> tuple[OpCount, dict]:
    """Replay the per-prediction path with every operation tallied.

    Covers discretization, the tree walk, and the future-position
    extrapolation. Returns the tally plus the replayed outputs so
    callers can pin them against the production code path.
    """
    ops = OpCount()

    def counted_speed_bin(v: float, deadzone: float) -> SpeedBin:
        ops.comparisons += 1
        if v > deadzone:
            return SpeedBin.POS
        ops.subtractions += 1  # negating the deadzone
        ops.comparisons += 1
        if v < -deadzone:
            return SpeedBin.NEG
        return SpeedBin.ZERO

    def counted_phi_sector(phi: float, edges: tuple[float, float]) -> PhiBin:
        ops.comparisons += 1
        if phi < edges[0]:
            return PhiBin.RIGHT
        ops.comparisons += 1
        if phi < edges[1]:
            return PhiBin.FRONT
        return PhiBin.LEFT

    vx_bin = counted_speed_bin(fv.vx, disc.speed_deadzone)
    vy_bin = counted_speed_bin(fv.vy, disc.speed_deadzone)
    phi_bin = counted_phi_sector(fv.phi_deg, disc.phi_bin_edges)
    sample = {
        "vx_bin": vx_bin.value,
        "vy_bin": vy_bin.value,
        "phi_bin": phi_bin.value,
    }

    node = tree
    while isinstance(node, Internal):
        ops.comparisons += 1  # one attribute dispatch per level
        child = node.children.get(sample[node.attribute])
        node = child if child is not None else node.default
    label = node.label

    ops.multiplications += 2  # vx*h, vy*h
    ops.additions += 2  # mid + step per axis
    future = (mid[0] + velocity[0] * horizon_s, mid[1] + velocity[1] * horizon_s)

    return ops, {
        "vx_bin": vx_bin,
        "vy_bin": vy_bin,
        "phi_bin": phi_bin,
        "label": label,
        "future": future,
    }


EVAL_CLASSES: tuple[MovementClass, ...] = (
    MovementClass.PERP_RIGHT,
    MovementClass.PERP_LEFT,
    MovementClass.TOWARD_CAMERA,
    MovementClass.OBLIQUE_RIGHT_WITH,
    MovementClass.OBLIQUE_LEFT_WITH,
    MovementClass.OBLIQUE_RIGHT_AGAINST,
    MovementClass.OBLIQUE_LEFT_AGAINST,
)


def eval_scenarios(
    n_files: int, noise_sigma_px: float
) -> list[SyntheticScenario]:
    """Walker set for the multi-file evaluation regime."""
    return [
        SyntheticScenario(
            movement=EVAL_CLASSES[i % len(EVAL_CLASSES)],
            speed_px_s=10.0,
            duration_s=30.0,
            noise_sigma_px=noise_sigma_px,
            phi_sway_deg=25.0,
        )
        for i in range(n_files)
    ]


def multi_file_eval(
    cfg: PipelineConfig,
    tree: Optional[Node] = None,
    n_seeds: int = 10,
    n_files: int = 7,
    noise_sigma_px: float = 3.0,
    margin_px: float = 50.0,
    margins: Optional[Sequence[float]] = None,
    velocity_window: int = 2,
    base_seed: int = 0,
) -> dict:
    """Noisy multi-file, multi-seed accuracy evaluation.

    The default regime (7 files, sigma 3 px, margin 50 px, 10 seeds)
    uses a 2-frame velocity window: with so short a baseline the
    landmark noise dominates prediction error, which is the operating
    point the accuracy figures describe.
    """
    eval_cfg = cfg.with_overrides(velocity_window=velocity_window)
    geom = eval_cfg.geometry()
    if margins is None:
        margins = [float(m) for m in range(10, 160, 10)]

    per_seed = []
    all_errors: list[float] = []
    for s in range(n_seeds):
        file_accs = []
        for i, scenario in enumerate(eval_scenarios(n_files, noise_sigma_px)):
            frames = scenario_frames(
                scenario, geom, seed=base_seed + 1000 * s + i
            )
            mids = observed_midpoints(frames, eval_cfg)
            results = run_stream(frames, eval_cfg, tree)
            errors = prediction_errors(results, mids, eval_cfg.horizon_s)
            all_errors.extend(errors)
            file_accs.append(
                (
                    f"seed{s}_file{i}_{scenario.movement.value}",
                    accuracy_at(errors, margin_px),
                )
            )
        per_seed.append(accuracy_report(file_accs))

    curve = accuracy_vs_margin(all_errors, margins)
    return {
        "noise_sigma_px": noise_sigma_px,
        "margin_px": margin_px,
        "n_files": n_files,
        "n_seeds": n_seeds,
        "velocity_window": velocity_window,
        "mean_accuracy": float(np.mean([r.mean for r in per_seed])),
        "across_file_variance_mean": float(
            np.mean([r.variance for r in per_seed])
        ),
        "across_file_variance_max": float(
            np.max([r.variance for r in per_seed])
        ),
        "per_seed": [r.to_dict() for r in per_seed],
        "margin_curve": curve.to_rows(),
    }
