import cv2
import pytest

from video_fixtures import BlobBackend, N_FRAMES, blank, write_video


@pytest.fixture(scope="session")
def walker_video(tmp_path_factory):
    """A white square sweeping left to right, one step per frame."""
    path = tmp_path_factory.mktemp("videos") / "walker.avi"
    frames = []
    for i in range(N_FRAMES):
        frame = blank()
        cv2.rectangle(frame, (4 + i, 18), (12 + i, 26), (255, 255, 255), -1)
        frames.append(frame)
    write_video(path, frames)
    return path


@pytest.fixture(scope="session")
def empty_scene_video(tmp_path_factory):
    path = tmp_path_factory.mktemp("videos") / "empty.avi"
    write_video(path, [blank() for _ in range(10)])
    return path


@pytest.fixture
def blob_backend():
    return BlobBackend()
