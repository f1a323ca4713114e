"""Tree training: label derivation, gain reporting, corpus assembly.

Training needs no manual annotation: the label for a frame is the
movement class of the displacement the subject actually realized over
the prediction horizon, so any landmark stream that extends past a
frame's horizon yields a supervised sample for it.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .config import PipelineConfig
from .errors import DataError, EmptyDataset
from .features import FeatureVector, MovementClass, discretize, displacement_label
from .id3 import ATTRIBUTES, Node, Sample, grow_tree, information_gain
from .pipeline import LandmarkFrame, Pipeline, observed_midpoints
from .streamio import read_frames, write_frames
from .synth import SyntheticScenario, scenario_frames


@dataclass(frozen=True)
class GainReport:
    """Per-attribute information gain on the training set."""

    gains: tuple[tuple[str, float], ...]
    n_samples: int

    def ranking(self) -> tuple[str, ...]:
        return tuple(
            name for name, _ in sorted(self.gains, key=lambda kv: -kv[1])
        )

    def to_dict(self) -> dict:
        return {
            "gains": {name: gain for name, gain in self.gains},
            "ranking": list(self.ranking()),
            "n_samples": self.n_samples,
        }


def build_training_set(
    frames: Sequence[LandmarkFrame], cfg: PipelineConfig
) -> tuple[list[dict[str, str]], list[str]]:
    """Paired (discrete features, realized-displacement label) samples.

    A frame contributes a sample when the pipeline produced velocities
    and orientation for it and the stream contains an observation at
    least ``horizon_s`` later to label it with.
    """
    disc = cfg.discretization()
    mids = observed_midpoints(frames, cfg)
    pipeline = Pipeline(cfg, tree=None)

    samples: list[dict[str, str]] = []
    labels: list[str] = []
    ref_idx = 0
    future_idx = 0
    for result in pipeline.run(frames):
        if result.skipped_reason is not None or result.v_mid is None:
            continue
        feats = discretize(
            FeatureVector(
                vx=result.v_mid[0], vy=result.v_mid[1], phi_deg=result.phi_deg
            ),
            disc,
        )
        # every classifiable frame is a pose frame, so it appears in mids
        while mids[ref_idx][0] < result.t:
            ref_idx += 1
        while future_idx < len(mids) and mids[future_idx][0] - result.t < cfg.horizon_s:
            future_idx += 1
        if future_idx >= len(mids):
            break
        ref_t, ref_mid = mids[ref_idx]
        fut_t, fut_mid = mids[future_idx]
        label = displacement_label(
            fut_mid[0] - ref_mid[0], fut_mid[1] - ref_mid[1], fut_t - ref_t, disc
        )
        samples.append(
            {
                "vx_bin": feats.vx_bin.value,
                "vy_bin": feats.vy_bin.value,
                "phi_bin": feats.phi_bin.value,
            }
        )
        labels.append(label.value)
    return samples, labels


def gain_report(samples: Sequence[Sample], labels: Sequence[str]) -> GainReport:
    if not samples:
        raise EmptyDataset("no training samples")
    gains = tuple(
        (attr, information_gain(samples, labels, attr)) for attr in ATTRIBUTES
    )
    return GainReport(gains=gains, n_samples=len(samples))


def train_tree(
    samples: Sequence[Sample], labels: Sequence[str], max_depth: int = 3
) -> tuple[Node, GainReport]:
    report = gain_report(samples, labels)
    return grow_tree(samples, labels, max_depth=max_depth), report


def train_from_files(
    paths: Iterable, cfg: PipelineConfig, max_depth: int = 3
) -> tuple[Node, GainReport]:
    """Train over several streams, one independent track per file.

    Raises:
        DataError: a file is unreadable, malformed, or holds no frames.
        EmptyDataset: the files yielded no labeled samples.
    """
    samples: list[dict[str, str]] = []
    labels: list[str] = []
    for path in paths:
        frames = read_frames(path)
        if not frames:
            raise DataError(f"no frames in {path}")
        file_samples, file_labels = build_training_set(frames, cfg)
        samples.extend(file_samples)
        labels.extend(file_labels)
    return train_tree(samples, labels, max_depth=max_depth)


def default_corpus_scenarios() -> list[SyntheticScenario]:
    """The standard training corpus: every class once, plus faster
    perpendicular walkers so horizontal speed separates classes a
    little better than vertical speed does."""
    scenarios = [
        SyntheticScenario(movement=mc, speed_px_s=10.0, phi_sway_deg=25.0)
        for mc in MovementClass
    ]
    scenarios += [
        SyntheticScenario(
            movement=mc, speed_px_s=14.0, duration_s=20.0, phi_sway_deg=25.0
        )
        for mc in (MovementClass.PERP_RIGHT, MovementClass.PERP_LEFT)
    ]
    return scenarios


def corpus_file_name(index: int, scenario: SyntheticScenario) -> str:
    return f"train_{index:02d}_{scenario.movement.value}.jsonl"


def write_corpus(out_dir, cfg: PipelineConfig, seed: int = 0) -> list[Path]:
    """Materialize the default corpus as JSONL files; returns the paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    geom = cfg.geometry()
    paths = []
    for i, scenario in enumerate(default_corpus_scenarios()):
        path = out_dir / corpus_file_name(i, scenario)
        with open(path, "w", encoding="utf-8") as fh:
            write_frames(scenario_frames(scenario, geom, seed=seed + i), fh)
        paths.append(path)
    return paths


def default_training_set(
    cfg: PipelineConfig, seed: int = 0
) -> tuple[list[dict[str, str]], list[str]]:
    """In-memory training set from the default corpus."""
    geom = cfg.geometry()
    samples: list[dict[str, str]] = []
    labels: list[str] = []
    for i, scenario in enumerate(default_corpus_scenarios()):
        frames = scenario_frames(scenario, geom, seed=seed + i)
        file_samples, file_labels = build_training_set(frames, cfg)
        samples.extend(file_samples)
        labels.extend(file_labels)
    return samples, labels
