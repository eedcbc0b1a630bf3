"""Synthetic live/spoof video generation for end-to-end tests.

Three motion models mirror the phenomenology of real footage: live videos
drift smoothly with small jitter, fixed spoofs are static up to sensor
noise, and hand-held spoofs shake with globally coherent but jerky motion
plus heavy noise.
"""

from dataclasses import dataclass

import cv2
import numpy as np

from ..errors import ConfigError
from ..flowprep.video import FrameSequence

KINDS = ("live", "spoof_fixed", "spoof_hand")
_MARGIN = 16


@dataclass(frozen=True)
class SyntheticVideoSpec:
    kind: str = "live"
    n_frames: int = 24
    size: int = 64
    fps: int = 30
    noise_level: float | None = None  # per-kind default when None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"kind must be one of {KINDS}")
        if self.n_frames < 2:
            raise ConfigError("n_frames must be >= 2")
        if self.size < 32:
            raise ConfigError("size must be >= 32 (one patch window)")

    @property
    def label(self) -> str:
        return "live" if self.kind == "live" else "spoof"


def _texture(rng, size: int) -> np.ndarray:
    """Smooth random texture with enough gradient for flow estimation."""
    canvas = rng.normal(size=(size, size, 3))
    canvas = np.stack([cv2.GaussianBlur(canvas[..., c], (0, 0), 3.0)
                       for c in range(3)], axis=-1)
    lo, hi = canvas.min(), canvas.max()
    return 30.0 + (canvas - lo) / (hi - lo) * 190.0


def _positions(spec: SyntheticVideoSpec, rng) -> np.ndarray:
    t = np.arange(spec.n_frames)
    if spec.kind == "live":
        # bounded sinusoidal drift, velocity ~2 px/frame, slowly turning
        amp = rng.uniform(7.0, 10.0, size=2)
        omega = rng.uniform(0.2, 0.3, size=2)
        phase = rng.uniform(0, 2 * np.pi, size=2)
        pos = np.stack([amp[i] * np.sin(omega[i] * t + phase[i]) for i in (0, 1)],
                       axis=1)
        pos += rng.normal(scale=0.05, size=pos.shape)
    elif spec.kind == "spoof_hand":
        # jerky shake: iid frame positions, direction uncorrelated
        pos = rng.normal(scale=3.0, size=(spec.n_frames, 2))
    else:  # spoof_fixed
        pos = np.zeros((spec.n_frames, 2))
    return np.clip(pos, -(_MARGIN - 2), _MARGIN - 2)


def generate_synthetic_video(spec: SyntheticVideoSpec):
    """Render a deterministic synthetic video; returns (FrameSequence, label)."""
    rng = np.random.default_rng(spec.seed)
    canvas = _texture(rng, spec.size + 2 * _MARGIN)
    noise = spec.noise_level
    if noise is None:
        noise = {"live": 1.0, "spoof_fixed": 2.0, "spoof_hand": 10.0}[spec.kind]

    frames = []
    for pos in _positions(spec, rng):
        m = np.float32([[1, 0, -pos[0]], [0, 1, -pos[1]]])
        shifted = cv2.warpAffine(canvas.astype(np.float32), m,
                                 (canvas.shape[1], canvas.shape[0]),
                                 flags=cv2.INTER_LINEAR,
                                 borderMode=cv2.BORDER_REFLECT)
        frame = shifted[_MARGIN:_MARGIN + spec.size, _MARGIN:_MARGIN + spec.size]
        frame = frame + rng.normal(scale=noise, size=frame.shape)
        frames.append(np.clip(np.rint(frame), 0, 255).astype(np.uint8))

    seq = FrameSequence(frames=frames, fps=spec.fps,
                        source_id=f"synthetic/{spec.kind}/seed{spec.seed}")
    return seq, spec.label
