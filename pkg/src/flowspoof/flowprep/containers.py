"""On-disk containers for patch batches: npz arrays + CSV provenance sidecar."""

import csv
from pathlib import Path

import numpy as np

from ..errors import FormatError
from .patches import PatchBatch


def provenance_path(container_path) -> Path:
    p = Path(container_path)
    return p.with_name(p.stem + ".provenance.csv")


def save_patch_batch(batch: PatchBatch, path) -> None:
    """Write patches to an npz container and provenance to a CSV sidecar."""
    path = Path(path)
    np.savez_compressed(path, patches=batch.patches)
    # np.savez appends .npz if missing; mirror that for the sidecar
    if path.suffix != ".npz":
        path = path.with_suffix(path.suffix + ".npz")
    with open(provenance_path(path), "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["frame_idx", "row", "col"])
        writer.writerows(batch.provenance)


def load_patch_batch(path) -> PatchBatch:
    path = Path(path)
    with np.load(path) as data:
        if "patches" not in data:
            raise FormatError(f"{path}: missing 'patches' array")
        patches = data["patches"]
    sidecar = provenance_path(path)
    if not sidecar.exists():
        raise FormatError(f"missing provenance sidecar {sidecar}")
    with open(sidecar, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != ["frame_idx", "row", "col"]:
            raise FormatError(f"{sidecar}: bad provenance header {header}")
        provenance = [(int(a), int(b), int(c)) for a, b, c in reader]
    return PatchBatch(patches=patches, provenance=provenance)
