"""Command-line entry point."""

import json
import logging
import sys
from pathlib import Path
from typing import Optional

import click

from .backends import BackendUnavailable, MediapipeBackend, PoseBackend
from .extract import ExtractionJob, VideoUnreadable, extract


@click.command()
@click.option(
    "--video",
    "video_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Input video file.",
)
@click.option(
    "--out",
    "out_path",
    required=True,
    type=click.Path(dir_okay=False, path_type=Path),
    help="Output JSONL landmark stream.",
)
@click.option(
    "--min-confidence",
    default=0.5,
    show_default=True,
    type=click.FloatRange(0.0, 1.0, min_open=True),
    help="Detections scoring below this become no-pose lines.",
)
@click.option(
    "--fps-override",
    default=None,
    type=click.FloatRange(0.0, min_open=True),
    help="Frame rate to use when container metadata is wrong or missing.",
)
def extract_cmd(
    video_path: Path,
    out_path: Path,
    min_confidence: float,
    fps_override: Optional[float],
):
    """Convert a video into a JSONL landmark stream, one line per frame."""
    job = ExtractionJob(
        video_path=video_path,
        out_path=out_path,
        min_confidence=min_confidence,
        fps_override=fps_override,
    )
    backend = click.get_current_context().obj or MediapipeBackend()
    try:
        stats = extract(job, backend)
    finally:
        backend.close()
    summary = dict(stats.to_dict(), out=str(out_path))
    click.echo(json.dumps(summary, sort_keys=True))


def main(argv=None, backend: Optional[PoseBackend] = None) -> int:
    """Run the CLI; 0 ok, 1 usage error, 2 extraction error, 3 unexpected.

    ``backend`` overrides the default detector, letting tests and
    embedders run without mediapipe installed.
    """
    logging.basicConfig(level=logging.WARNING)
    try:
        extract_cmd.main(args=argv, standalone_mode=False, obj=backend)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except (VideoUnreadable, BackendUnavailable, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except Exception as exc:
        click.echo(f"internal error: {exc}", err=True)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
