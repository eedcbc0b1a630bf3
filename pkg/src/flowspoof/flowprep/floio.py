"""Reading and writing `.flo` optical-flow files.

Layout (little-endian): a float32 magic number 202021.25 ("PIEH"), then
int32 width, int32 height, then height*width interleaved (u, v) float32
pairs in row-major order.
"""

import numpy as np

from ..errors import FormatError, NumericError
from .flow import FlowField

FLO_MAGIC = np.float32(202021.25)


def write_flo(field: FlowField, path) -> None:
    """Write a flow field to ``path`` in `.flo` format."""
    u = np.asarray(field.u, dtype=np.float32)
    v = np.asarray(field.v, dtype=np.float32)
    if not (np.isfinite(u).all() and np.isfinite(v).all()):
        raise NumericError("flow field contains non-finite values")
    h, w = u.shape
    with open(path, "wb") as f:
        np.array([FLO_MAGIC], dtype="<f4").tofile(f)
        np.array([w, h], dtype="<i4").tofile(f)
        interleaved = np.empty((h, w, 2), dtype="<f4")
        interleaved[..., 0] = u
        interleaved[..., 1] = v
        interleaved.tofile(f)


def read_flo(path) -> FlowField:
    """Read a `.flo` file back into a :class:`FlowField`.

    Raises :class:`FormatError` on a bad magic number or truncated payload.
    """
    with open(path, "rb") as f:
        header = np.fromfile(f, dtype="<f4", count=1)
        if header.size != 1 or header[0] != FLO_MAGIC:
            raise FormatError(f"{path}: bad magic number (expected 202021.25)")
        dims = np.fromfile(f, dtype="<i4", count=2)
        if dims.size != 2:
            raise FormatError(f"{path}: truncated header")
        w, h = int(dims[0]), int(dims[1])
        if w <= 0 or h <= 0:
            raise FormatError(f"{path}: invalid dimensions {w}x{h}")
        data = np.fromfile(f, dtype="<f4", count=2 * h * w)
        if data.size != 2 * h * w:
            raise FormatError(f"{path}: truncated payload")
    data = data.reshape(h, w, 2)
    return FlowField(u=data[..., 0].copy(), v=data[..., 1].copy())
