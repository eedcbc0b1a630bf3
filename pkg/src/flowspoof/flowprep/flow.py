"""Dense optical-flow estimation between consecutive frames.

Estimators are registered by name so a learned estimator can be plugged in
later; the default is classical dense polynomial-expansion (Farneback) flow.
"""

from dataclasses import dataclass

import cv2
import numpy as np

from ..errors import ConfigError, NumericError, ShapeError


@dataclass
class FlowField:
    """Per-pixel displacement field: u horizontal, v vertical (pixels)."""

    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        self.u = np.asarray(self.u, dtype=np.float32)
        self.v = np.asarray(self.v, dtype=np.float32)
        if self.u.shape != self.v.shape or self.u.ndim != 2:
            raise ShapeError(
                f"u and v must be equal 2-D shapes, got {self.u.shape} / {self.v.shape}"
            )
        if not (np.isfinite(self.u).all() and np.isfinite(self.v).all()):
            raise NumericError("flow field contains non-finite values")

    @property
    def shape(self):
        return self.u.shape

    def magnitude(self) -> np.ndarray:
        return np.hypot(self.u, self.v)


def _farneback(frame_a: np.ndarray, frame_b: np.ndarray) -> FlowField:
    gray_a = cv2.cvtColor(frame_a, cv2.COLOR_RGB2GRAY)
    gray_b = cv2.cvtColor(frame_b, cv2.COLOR_RGB2GRAY)
    if np.array_equal(gray_a, gray_b):
        # identical frames have exactly zero flow; the solver only gets
        # there up to polynomial-expansion noise
        return FlowField(u=np.zeros(gray_a.shape, np.float32),
                         v=np.zeros(gray_a.shape, np.float32))
    flow = cv2.calcOpticalFlowFarneback(
        gray_a, gray_b, None,
        pyr_scale=0.5, levels=3, winsize=15,
        iterations=3, poly_n=5, poly_sigma=1.2, flags=0,
    )
    return FlowField(u=flow[..., 0], v=flow[..., 1])


_ESTIMATORS = {"farneback": _farneback}

DEFAULT_ESTIMATOR = "farneback"


def register_estimator(name: str, fn) -> None:
    """Register ``fn(frame_a, frame_b) -> FlowField`` under ``name``."""
    _ESTIMATORS[name] = fn


def available_estimators():
    return sorted(_ESTIMATORS)


def estimate_flow(frame_a, frame_b, estimator: str = DEFAULT_ESTIMATOR) -> FlowField:
    """Estimate dense flow from ``frame_a`` to ``frame_b``.

    Both frames must be RGB uint8 arrays of identical shape. Deterministic
    for a fixed estimator and inputs.
    """
    frame_a = np.asarray(frame_a)
    frame_b = np.asarray(frame_b)
    if frame_a.shape != frame_b.shape:
        raise ShapeError(
            f"frame shapes differ: {frame_a.shape} vs {frame_b.shape}"
        )
    if estimator not in _ESTIMATORS:
        raise ConfigError(
            f"unknown flow estimator {estimator!r}; available: {available_estimators()}"
        )
    return _ESTIMATORS[estimator](frame_a, frame_b)
