"""Video-to-patch preprocessing: frames, dense flow, color coding, patches."""

from .color import FlowMapImage, flow_to_color
from .containers import load_patch_batch, save_patch_batch
from .floio import read_flo, write_flo
from .flow import (
    DEFAULT_ESTIMATOR,
    FlowField,
    available_estimators,
    estimate_flow,
    register_estimator,
)
from .patches import PatchBatch, concat_batches, extract_patches, patch_grid
from .video import FrameSequence, extract_frames, resample_indices

__all__ = [
    "DEFAULT_ESTIMATOR",
    "FlowField",
    "FlowMapImage",
    "FrameSequence",
    "PatchBatch",
    "available_estimators",
    "concat_batches",
    "estimate_flow",
    "extract_frames",
    "extract_patches",
    "flow_to_color",
    "load_patch_batch",
    "patch_grid",
    "read_flo",
    "register_estimator",
    "resample_indices",
    "save_patch_batch",
    "write_flo",
]
