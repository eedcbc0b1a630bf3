"""Threshold calibration and the video-level decision rule."""

import json
from dataclasses import dataclass

import numpy as np

from ..errors import DataError, NumericError
from .mmd import KernelSpec

LIVE, SPOOF = "live", "spoof"


@dataclass(frozen=True)
class CalibrationResult:
    """Decision threshold plus the dev-set error rates it achieves."""

    threshold: float
    dev_far: float
    dev_frr: float
    dev_hter: float
    kernel: KernelSpec | None = None

    def __post_init__(self):
        if abs(self.dev_hter - (self.dev_far + self.dev_frr) / 2.0) > 1e-12:
            raise NumericError("dev_hter must equal (dev_far + dev_frr)/2")


def _split_scores(scored):
    live = np.array([s for s, lab in scored if lab == LIVE], dtype=np.float64)
    spoof = np.array([s for s, lab in scored if lab == SPOOF], dtype=np.float64)
    bad = {lab for _, lab in scored} - {LIVE, SPOOF}
    if bad:
        raise DataError(f"unknown labels {sorted(bad)}; use 'live'/'spoof'")
    if live.size == 0 or spoof.size == 0:
        raise DataError("both live and spoof examples are required")
    return live, spoof


def rates_at(live, spoof, threshold):
    """(FAR, FRR) under the rule: spoof iff score > threshold."""
    far = float(np.mean(spoof <= threshold))   # spoof accepted as live
    frr = float(np.mean(live > threshold))     # live rejected as spoof
    return far, frr


def classify_video(score_video: float, cal: CalibrationResult) -> str:
    """Spoof iff the video score strictly exceeds the threshold."""
    if not np.isfinite(score_video):
        raise NumericError(f"non-finite video score {score_video}")
    return SPOOF if score_video > cal.threshold else LIVE


def calibrate_threshold(dev_scores, kernel: KernelSpec | None = None) -> CalibrationResult:
    """Pick the HTER-minimizing threshold on labeled dev scores.

    Candidates are midpoints between adjacent sorted scores plus sentinels
    below the minimum and above the maximum; ties break toward the smallest
    threshold.
    """
    live, spoof = _split_scores(dev_scores)
    all_scores = np.sort(np.unique(np.concatenate([live, spoof])))
    candidates = [all_scores[0] - 1.0]
    candidates += list((all_scores[:-1] + all_scores[1:]) / 2.0)
    candidates.append(all_scores[-1] + 1.0)

    best = None
    for t in candidates:
        far, frr = rates_at(live, spoof, t)
        hter = (far + frr) / 2.0
        if best is None or hter < best[0]:
            best = (hter, t, far, frr)
    hter, t, far, frr = best
    return CalibrationResult(threshold=float(t), dev_far=far, dev_frr=frr,
                             dev_hter=hter, kernel=kernel)


def save_calibration(cal: CalibrationResult, path) -> None:
    record = {
        "threshold": cal.threshold,
        "dev_far": cal.dev_far,
        "dev_frr": cal.dev_frr,
        "dev_hter": cal.dev_hter,
        "kernel": cal.kernel.to_dict() if cal.kernel else None,
    }
    with open(path, "w") as f:
        json.dump(record, f, indent=2)
        f.write("\n")


def load_calibration(path) -> CalibrationResult:
    with open(path) as f:
        record = json.load(f)
    kernel = KernelSpec.from_dict(record["kernel"]) if record.get("kernel") else None
    return CalibrationResult(threshold=record["threshold"],
                             dev_far=record["dev_far"],
                             dev_frr=record["dev_frr"],
                             dev_hter=record["dev_hter"],
                             kernel=kernel)
