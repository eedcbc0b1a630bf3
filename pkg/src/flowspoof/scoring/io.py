"""CSV emission for frame scores and video-level reports."""

import csv
import os
import tempfile
from pathlib import Path

from .mmd import ScoreDistribution


def atomic_write_text(path, text: str) -> None:
    """Write a file via temp + rename so readers never see a partial file."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".")
    try:
        with os.fdopen(fd, "w", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_frame_scores_csv(path, distributions) -> None:
    """One row per frame: video_id,frame_idx,score."""
    lines = ["video_id,frame_idx,score\n"]
    for dist in distributions:
        for i, s in enumerate(dist.samples):
            lines.append(f"{dist.video_id},{i},{float(s)!r}\n")
    atomic_write_text(path, "".join(lines))


def read_frame_scores_csv(path):
    """Inverse of write_frame_scores_csv; returns ScoreDistributions in file order."""
    by_video = {}
    with open(path, newline="") as f:
        reader = csv.DictReader(f)
        for row in reader:
            by_video.setdefault(row["video_id"], []).append(float(row["score"]))
    return [ScoreDistribution(samples=s, video_id=vid)
            for vid, s in by_video.items()]


def write_video_report_csv(path, rows) -> None:
    """One row per video: video_id,mmd_score,has_motion,label."""
    lines = ["video_id,mmd_score,has_motion,label\n"]
    for video_id, mmd_score, has_motion, label in rows:
        lines.append(f"{video_id},{float(mmd_score)!r},"
                     f"{str(bool(has_motion)).lower()},{label}\n")
    atomic_write_text(path, "".join(lines))
