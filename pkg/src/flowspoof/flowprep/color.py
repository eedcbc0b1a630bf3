"""Color-coding of flow fields on the standard optical-flow wheel.

Hue encodes direction atan2(v, u), saturation scales linearly with the
clipped magnitude, and zero displacement maps to the achromatic center
(white). Value is fixed at 1.
"""

from dataclasses import dataclass

import numpy as np
from matplotlib.colors import hsv_to_rgb

from ..errors import ConfigError, DataError, ShapeError
from .flow import FlowField


@dataclass
class FlowMapImage:
    """A flow field rendered as an 8-bit RGB image."""

    pixels: np.ndarray
    max_magnitude: float

    def __post_init__(self):
        self.pixels = np.asarray(self.pixels, dtype=np.uint8)
        if self.pixels.ndim != 3 or self.pixels.shape[2] != 3:
            raise ShapeError(f"expected HxWx3 pixels, got {self.pixels.shape}")
        if self.max_magnitude <= 0:
            raise ConfigError("max_magnitude must be > 0")


def flow_to_color(field: FlowField, max_magnitude="auto") -> FlowMapImage:
    """Render ``field`` as a color-wheel image.

    ``max_magnitude`` sets the saturation normalization radius; "auto" uses
    the field's own maximum flow norm (1.0 if the field is all zero). Pass a
    fixed value when maps from different videos must be comparable.
    """
    u, v = field.u.astype(np.float64), field.v.astype(np.float64)
    if not (np.isfinite(u).all() and np.isfinite(v).all()):
        raise DataError("flow field contains non-finite values")
    norm = np.hypot(u, v)
    if max_magnitude == "auto":
        max_magnitude = float(norm.max()) or 1.0
    else:
        max_magnitude = float(max_magnitude)
        if max_magnitude <= 0:
            raise ConfigError("max_magnitude must be > 0")

    hsv = np.empty(u.shape + (3,), dtype=np.float64)
    hsv[..., 0] = (np.arctan2(v, u) % (2.0 * np.pi)) / (2.0 * np.pi)
    hsv[..., 1] = np.minimum(norm / max_magnitude, 1.0)
    hsv[..., 2] = 1.0
    rgb = np.clip(np.rint(hsv_to_rgb(hsv) * 255.0), 0, 255).astype(np.uint8)
    return FlowMapImage(pixels=rgb, max_magnitude=max_magnitude)
