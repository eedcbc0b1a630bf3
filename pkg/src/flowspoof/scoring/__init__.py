"""Spoof detection from a trained generator: scores, MMD, calibration, metrics."""

from .calibrate import (
    LIVE,
    SPOOF,
    CalibrationResult,
    calibrate_threshold,
    classify_video,
    load_calibration,
    save_calibration,
)
from .metrics import MetricsReport, auc_score, compute_metrics
from .mmd import (
    KernelSpec,
    ScoreDistribution,
    median_heuristic_kernel,
    mmd,
)
from .motion import motion_judgment
from .scores import (
    PrepSettings,
    flow_maps_of,
    frame_score,
    reference_distribution,
    video_distribution,
)

__all__ = [
    "LIVE",
    "SPOOF",
    "CalibrationResult",
    "KernelSpec",
    "MetricsReport",
    "PrepSettings",
    "ScoreDistribution",
    "auc_score",
    "calibrate_threshold",
    "classify_video",
    "compute_metrics",
    "flow_maps_of",
    "frame_score",
    "load_calibration",
    "median_heuristic_kernel",
    "mmd",
    "motion_judgment",
    "reference_distribution",
    "save_calibration",
    "video_distribution",
]
