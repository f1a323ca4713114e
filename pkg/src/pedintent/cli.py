"""Command-line interface.

Subcommands: train, classify, eval, bench, gen, calibrate. All
defaults live in a JSON config file; flags override individual keys,
and every report echoes the effective configuration it ran under.

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
Log verbosity comes from the PEDINTENT_LOG_LEVEL environment variable.
"""

from __future__ import annotations

import csv as csv_mod
import json
import logging
import os
import sys
from pathlib import Path

import click

from .config import PipelineConfig, load_config
from .errors import DataError, InsufficientSamples, NonMonotonicTimestamp, PedintentError
from .evaluation import (
    count_classification_ops,
    latency_bench,
    multi_file_eval,
)
from .features import FeatureVector, MovementClass
from .geometry import fit_calibration
from .id3 import read_tree, save_tree
from .pipeline import Pipeline
from .streamio import (
    RESULT_COLUMNS,
    iter_frames,
    result_to_obj,
    result_to_row,
    write_frames,
)
from .synth import SyntheticScenario, scenario_frames
from .training import train_from_files, write_corpus

LOG_ENV = "PEDINTENT_LOG_LEVEL"

# hand-tallied arithmetic budget this design targets per prediction
TARGET_OPS = 23

log = logging.getLogger("pedintent")


def _echo_json(payload: dict, out_path) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out_path:
        Path(out_path).write_text(text + "\n", encoding="utf-8")
    click.echo(text)


def _load_cfg(config_path, **overrides) -> PipelineConfig:
    cfg = load_config(config_path) if config_path else PipelineConfig()
    try:
        return cfg.with_overrides(**overrides)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc


def _load_tree(cfg: PipelineConfig, required: bool):
    if cfg.tree_path is None:
        if required:
            raise click.UsageError("a decision tree is required; pass --tree")
        return None
    return read_tree(cfg.tree_path)


@click.group()
def cli():
    """Pedestrian intent classification over landmark streams."""
    logging.basicConfig(
        level=os.environ.get(LOG_ENV, "WARNING").upper(),
        format="%(levelname)s %(name)s: %(message)s",
    )


@cli.command()
@click.argument("inputs", nargs=-1, type=click.Path(exists=True, dir_okay=False))
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--max-depth", type=click.IntRange(min=1), default=3, show_default=True)
@click.option("--horizon", "horizon_s", type=float, default=None)
def train(inputs, config_path, out_path, max_depth, horizon_s):
    """Grow a decision tree from labeled-by-displacement JSONL streams."""
    if not inputs:
        raise click.UsageError("at least one landmark JSONL file is required")
    cfg = _load_cfg(config_path, horizon_s=horizon_s)
    tree, report = train_from_files(inputs, cfg, max_depth=max_depth)
    save_tree(tree, out_path)
    _echo_json(
        {
            "tree_path": str(out_path),
            **report.to_dict(),
            "config": cfg.to_dict(),
        },
        None,
    )


@cli.command()
@click.argument(
    "input_path",
    type=click.Path(exists=True, dir_okay=False, allow_dash=True),
    required=True,
)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--tree", "tree_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--variant", type=click.IntRange(1, 3), default=1, show_default=True,
              help="1: full rows with collision flag, 2: path projection, 3: class only")
@click.option("--horizon", "horizon_s", type=float, default=None)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "jsonl"]), default="csv",
              show_default=True)
def classify(input_path, config_path, tree_path, variant, horizon_s, out_path, fmt):
    """Stream a JSONL landmark file through the classifier.

    Malformed lines and out-of-order frames are logged and skipped; the
    stream never aborts. The exit code is 2 if any frame was bad.
    """
    cfg = _load_cfg(config_path, tree_path=tree_path, horizon_s=horizon_s)
    tree = _load_tree(cfg, required=variant == 3)
    pipeline = Pipeline(cfg, tree=tree)

    bad_frames = 0

    def on_error(exc: DataError) -> None:
        nonlocal bad_frames
        bad_frames += 1
        log.warning("skipping frame: %s", exc)

    out_fh = open(out_path, "w", encoding="utf-8") if out_path else sys.stdout
    try:
        writer = csv_mod.writer(out_fh, lineterminator="\n") if fmt == "csv" else None
        if fmt == "csv":
            if variant == 1:
                writer.writerow(RESULT_COLUMNS)
            elif variant == 2:
                writer.writerow(("t", "step_index", "x", "y"))
            else:
                writer.writerow(("t", "movement_class"))
        with click.open_file(input_path, "r") as in_fh:
            source = iter_frames(in_fh, source=str(input_path), on_error=on_error)
            for frame in source:
                try:
                    result = pipeline.process_frame(frame)
                except NonMonotonicTimestamp as exc:
                    bad_frames += 1
                    log.warning("skipping frame: %s", exc)
                    continue
                if variant == 1:
                    if fmt == "csv":
                        writer.writerow(result_to_row(result))
                    else:
                        out_fh.write(json.dumps(result_to_obj(result), sort_keys=True) + "\n")
                elif variant == 2:
                    if result.v_mid is None:
                        continue
                    proj = pipeline.project()
                    if fmt == "csv":
                        for k, (x, y) in enumerate(proj.points):
                            writer.writerow(
                                (repr(result.t), k, repr(x), repr(y))
                            )
                    else:
                        out_fh.write(
                            json.dumps(
                                {
                                    "t": result.t,
                                    "step_s": proj.step_s,
                                    "points": [[x, y] for x, y in proj.points],
                                },
                                sort_keys=True,
                            )
                            + "\n"
                        )
                else:
                    cls = result.movement_class.value if result.movement_class else ""
                    if fmt == "csv":
                        writer.writerow((repr(result.t), cls))
                    else:
                        out_fh.write(
                            json.dumps(
                                {"t": result.t, "movement_class": cls or None},
                                sort_keys=True,
                            )
                            + "\n"
                        )
    finally:
        if out_path:
            out_fh.close()
    if bad_frames:
        log.error("%d frame(s) were malformed or out of order", bad_frames)
        raise DataError(f"{bad_frames} frame(s) were malformed or out of order")


@cli.command("eval")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--tree", "tree_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--seeds", type=click.IntRange(min=1), default=10, show_default=True)
@click.option("--files", "n_files", type=click.IntRange(min=1), default=7, show_default=True)
@click.option("--noise-sigma", type=click.FloatRange(min=0), default=3.0, show_default=True)
@click.option("--margin", "margin_px", type=click.FloatRange(min=0), default=50.0,
              show_default=True)
@click.option("--velocity-window", type=click.IntRange(min=1), default=2, show_default=True,
              help="velocity window for the evaluation runs")
@click.option("--seed", "base_seed", type=int, default=0, show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None)
@click.option("--curve-out", type=click.Path(dir_okay=False), default=None,
              help="also write the margin curve as CSV")
def eval_cmd(config_path, tree_path, seeds, n_files, noise_sigma, margin_px,
             velocity_window, base_seed, out_path, curve_out):
    """Accuracy evaluation over noisy multi-file synthetic runs."""
    cfg = _load_cfg(config_path, tree_path=tree_path)
    tree = _load_tree(cfg, required=False)
    summary = multi_file_eval(
        cfg,
        tree=tree,
        n_seeds=seeds,
        n_files=n_files,
        noise_sigma_px=noise_sigma,
        margin_px=margin_px,
        velocity_window=velocity_window,
        base_seed=base_seed,
    )
    summary["config"] = cfg.to_dict()
    if curve_out:
        with open(curve_out, "w", encoding="utf-8", newline="") as fh:
            writer = csv_mod.writer(fh, lineterminator="\n")
            writer.writerow(("margin_px", "accuracy"))
            for m, a in summary["margin_curve"]:
                writer.writerow((repr(m), repr(a)))
    _echo_json(summary, out_path)


@cli.command()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--tree", "tree_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--frames", "n_frames", type=click.IntRange(min=1), default=1000,
              show_default=True)
@click.option("--warmup", type=click.IntRange(min=0), default=20, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None)
def bench(config_path, tree_path, n_frames, warmup, seed, out_path):
    """Per-frame latency benchmark over a generated stream."""
    cfg = _load_cfg(config_path, tree_path=tree_path)
    tree = _load_tree(cfg, required=False)
    fps = 15.0
    scenario = SyntheticScenario(
        movement=MovementClass.STATIONARY,
        duration_s=n_frames / fps,
        fps=fps,
        phi_sway_deg=25.0,
    )
    frames = scenario_frames(scenario, cfg.geometry(), seed=seed)
    stats = latency_bench(frames, cfg, tree=tree, warmup=warmup)
    payload = {
        "latency_us": stats.to_dict(),
        "config": cfg.to_dict(),
    }
    if tree is not None:
        ops, _ = count_classification_ops(
            FeatureVector(vx=30.0, vy=0.0, phi_deg=72.0),
            tree,
            cfg.discretization(),
            mid=(216.0, 216.0),
            velocity=(30.0, 0.0),
            horizon_s=cfg.horizon_s,
        )
        payload["ops_per_prediction"] = ops.to_dict()
        payload["target_ops"] = TARGET_OPS
    _echo_json(payload, out_path)


@cli.command()
@click.option("--class", "movement_name", default="all", show_default=True,
              help="movement class name, or 'all' for one file per class")
@click.option("--out-dir", type=click.Path(file_okay=False), default=".",
              show_default=True)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--speed", type=click.FloatRange(min=0), default=10.0, show_default=True)
@click.option("--duration", type=click.FloatRange(min=0, min_open=True), default=30.0,
              show_default=True)
@click.option("--fps", type=click.FloatRange(min=0, min_open=True), default=15.0,
              show_default=True)
@click.option("--noise-sigma", type=click.FloatRange(min=0), default=0.0,
              show_default=True)
@click.option("--phi-sway", type=click.FloatRange(min=0), default=0.0, show_default=True)
@click.option("--corpus", is_flag=True,
              help="write the default training corpus instead")
def gen(movement_name, out_dir, config_path, seed, speed, duration, fps,
        noise_sigma, phi_sway, corpus):
    """Generate synthetic labeled landmark streams as JSONL files."""
    cfg = _load_cfg(config_path)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if corpus:
        paths = write_corpus(out, cfg, seed=seed)
        _echo_json({"files": [str(p) for p in paths], "config": cfg.to_dict()}, None)
        return

    if movement_name == "all":
        movements = list(MovementClass)
    else:
        try:
            movements = [MovementClass(movement_name)]
        except ValueError as exc:
            names = ", ".join(m.value for m in MovementClass)
            raise click.UsageError(
                f"unknown class {movement_name!r}; choose from: {names}, all"
            ) from exc

    geom = cfg.geometry()
    paths = []
    for i, mc in enumerate(movements):
        scenario = SyntheticScenario(
            movement=mc,
            speed_px_s=speed,
            duration_s=duration,
            fps=fps,
            noise_sigma_px=noise_sigma,
            phi_sway_deg=phi_sway,
        )
        path = out / f"gen_{mc.value}.jsonl"
        with open(path, "w", encoding="utf-8") as fh:
            write_frames(scenario_frames(scenario, geom, seed=seed + i), fh)
        paths.append(str(path))
    _echo_json({"files": paths, "config": cfg.to_dict()}, None)


@cli.command()
@click.argument("csv_path", type=click.Path(exists=True, dir_okay=False))
def calibrate(csv_path):
    """Least-squares facing-angle fit from a (theta_deg, phi_deg) CSV."""
    pairs = []
    with open(csv_path, "r", encoding="utf-8", newline="") as fh:
        for row in csv_mod.reader(fh):
            if len(row) < 2:
                continue
            try:
                pairs.append((float(row[0]), float(row[1])))
            except ValueError:
                continue  # header or comment row
    if len(pairs) < 2:
        raise InsufficientSamples(
            f"{csv_path}: need at least two numeric (theta_deg, phi_deg) rows"
        )
    fit = fit_calibration(pairs)
    _echo_json(
        {"slope": fit.slope, "intercept": fit.intercept, "n_samples": len(pairs)},
        None,
    )


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except PedintentError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except Exception as exc:  # internal invariant violation
        click.echo(f"internal error: {exc}", err=True)
        return 3
