"""Frame extraction from video files or image-sequence directories."""

from dataclasses import dataclass
from pathlib import Path

import cv2
import numpy as np

from ..errors import ConfigError, DecodeError, InsufficientFramesError, ShapeError

IMAGE_SUFFIXES = {".png", ".jpg", ".jpeg", ".bmp"}


@dataclass
class FrameSequence:
    """An ordered list of same-sized RGB frames at a known rate."""

    frames: list
    fps: int
    source_id: str = ""

    def __post_init__(self):
        if self.fps <= 0:
            raise ConfigError("fps must be positive")
        if len(self.frames) < 2:
            raise InsufficientFramesError(
                f"{self.source_id or 'sequence'}: need >= 2 frames, got {len(self.frames)}"
            )
        shape = np.asarray(self.frames[0]).shape
        for i, f in enumerate(self.frames):
            if np.asarray(f).shape != shape:
                raise ShapeError(f"frame {i} shape {np.asarray(f).shape} != {shape}")

    def __len__(self):
        return len(self.frames)


def resample_indices(n_source: int, source_fps: int, target_fps: int):
    """Source indices floor(k * source_fps / target_fps) while in range."""
    indices = []
    k = 0
    while True:
        idx = (k * source_fps) // target_fps
        if idx >= n_source:
            break
        indices.append(idx)
        k += 1
    return indices


def _read_video_file(path: Path):
    cap = cv2.VideoCapture(str(path))
    if not cap.isOpened():
        raise DecodeError(f"cannot open video file {path}")
    src_fps = cap.get(cv2.CAP_PROP_FPS)
    frames = []
    while True:
        ok, frame = cap.read()
        if not ok:
            break
        frames.append(cv2.cvtColor(frame, cv2.COLOR_BGR2RGB))
    cap.release()
    if not frames:
        raise DecodeError(f"no decodable frames in {path}")
    return frames, int(round(src_fps)) if src_fps and src_fps > 0 else None


def _read_frame_dir(path: Path):
    files = sorted(p for p in path.iterdir() if p.suffix.lower() in IMAGE_SUFFIXES)
    if not files:
        raise DecodeError(f"no image frames in directory {path}")
    frames = []
    for p in files:
        img = cv2.imread(str(p), cv2.IMREAD_COLOR)
        if img is None:
            raise DecodeError(f"cannot decode frame {p}")
        frames.append(cv2.cvtColor(img, cv2.COLOR_BGR2RGB))
    return frames


def extract_frames(video_path, target_fps: int, source_fps: int | None = None) -> FrameSequence:
    """Decode a video and resample it uniformly to ``target_fps``.

    ``video_path`` is either a video file or a directory of numbered image
    frames (in which case ``source_fps`` defaults to ``target_fps``). Frames
    are sampled at source indices floor(k * source_fps / target_fps), order
    preserved.
    """
    if target_fps <= 0:
        raise ConfigError("target_fps must be positive")
    path = Path(video_path)
    if not path.exists():
        raise DecodeError(f"no such video: {path}")
    if path.is_dir():
        frames = _read_frame_dir(path)
        src = source_fps or target_fps
    else:
        frames, detected = _read_video_file(path)
        src = source_fps or detected or target_fps
    if len(frames) < 2:
        raise InsufficientFramesError(
            f"{path}: need >= 2 frames, got {len(frames)}"
        )
    picked = [frames[i] for i in resample_indices(len(frames), src, target_fps)]
    if len(picked) < 2:
        raise InsufficientFramesError(
            f"{path}: resampling to {target_fps} fps left {len(picked)} frame(s)"
        )
    return FrameSequence(frames=picked, fps=target_fps, source_id=str(path))
