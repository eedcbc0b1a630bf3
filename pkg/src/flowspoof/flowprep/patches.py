"""Sliding-window patch extraction from flow-map images."""

from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError, ShapeError, SizeError
from .color import FlowMapImage


@dataclass
class PatchBatch:
    """N patches scaled to [-1, 1] with per-patch (frame, row, col) provenance."""

    patches: np.ndarray
    provenance: list = field(default_factory=list)

    def __post_init__(self):
        self.patches = np.asarray(self.patches, dtype=np.float32)
        if self.patches.ndim != 4:
            raise ShapeError(f"expected NxHxWxC patches, got {self.patches.shape}")
        if self.patches.shape[0] < 1:
            raise ShapeError("patch batch must be non-empty")
        if len(self.provenance) != self.patches.shape[0]:
            raise ShapeError("provenance length must match patch count")
        if np.abs(self.patches).max() > 1.0 + 1e-6:
            raise ShapeError("patch values must lie in [-1, 1]")

    def __len__(self):
        return self.patches.shape[0]


def patch_grid(height, width, window, stride):
    """Top-left offsets of every full window, row-major; partials dropped."""
    rows = range(0, height - window + 1, stride)
    cols = range(0, width - window + 1, stride)
    return [(r, c) for r in rows for c in cols]


def extract_patches(image, window: int = 32, stride: int = 32,
                    frame_index: int = 0) -> PatchBatch:
    """Cut an image into non-padded sliding-window patches in [-1, 1].

    ``image`` may be a FlowMapImage or a HxWx3 uint8 array. Pixel values are
    rescaled by x/127.5 - 1.
    """
    if window <= 0 or stride <= 0:
        raise ConfigError("window and stride must be positive")
    pixels = image.pixels if isinstance(image, FlowMapImage) else np.asarray(image)
    h, w = pixels.shape[:2]
    if h < window or w < window:
        raise SizeError(f"image {h}x{w} smaller than window {window}")
    offsets = patch_grid(h, w, window, stride)
    scaled = pixels.astype(np.float32) / 127.5 - 1.0
    patches = np.stack([scaled[r:r + window, c:c + window] for r, c in offsets])
    provenance = [(frame_index, r, c) for r, c in offsets]
    return PatchBatch(patches=patches, provenance=provenance)


def concat_batches(batches) -> PatchBatch:
    """Concatenate patch batches, preserving order and provenance."""
    batches = list(batches)
    if not batches:
        raise ShapeError("no batches to concatenate")
    return PatchBatch(
        patches=np.concatenate([b.patches for b in batches]),
        provenance=[p for b in batches for p in b.provenance],
    )
