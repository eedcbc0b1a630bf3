"""flowspoof: one-class adversarial liveness detection on optical-flow maps.

Train a convolutional encoder-decoder generator (with a discriminator) on
live-class flow patches only, then flag spoof videos by reconstruction-error
distributions compared against a live reference via MMD.
"""

from . import bench, flowprep, gan, report, scoring
from .errors import (
    ConfigError,
    DataError,
    DatasetUnavailableError,
    DecodeError,
    DivergenceError,
    FlowSpoofError,
    FormatError,
    InsufficientFramesError,
    NumericError,
    ShapeError,
    SizeError,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DataError",
    "DatasetUnavailableError",
    "DecodeError",
    "DivergenceError",
    "FlowSpoofError",
    "FormatError",
    "InsufficientFramesError",
    "NumericError",
    "ShapeError",
    "SizeError",
    "bench",
    "flowprep",
    "gan",
    "report",
    "scoring",
]
