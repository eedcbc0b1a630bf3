"""Checkpoint container: named weight arrays plus a JSON metadata record."""

import json

import numpy as np
import torch

from ..errors import FormatError
from .arch import ArchitectureConfig
from .models import (
    DiscriminatorNet,
    DiscriminatorParams,
    GeneratorNet,
    GeneratorParams,
)

FORMAT_VERSION = 1


def save_checkpoint(path, g: GeneratorParams, d: DiscriminatorParams | None = None,
                    epoch: int = 0, loss_weights=None, extra: dict | None = None):
    meta = {
        "format_version": FORMAT_VERSION,
        "arch": g.arch.to_dict(),
        "seed": g.seed,
        "epoch": epoch,
        "loss_weights": None if loss_weights is None
        else {"w_i": loss_weights.w_i, "w_a": loss_weights.w_a},
        "extra": extra or {},
    }
    arrays = {"__meta__": np.frombuffer(json.dumps(meta).encode(), dtype=np.uint8)}
    for k, v in g.state_arrays().items():
        arrays[f"g/{k}"] = v
    if d is not None:
        for k, v in d.state_arrays().items():
            arrays[f"d/{k}"] = v
    np.savez_compressed(path, **arrays)


def _load_into(net, arrays, prefix):
    state = {k[len(prefix):]: torch.from_numpy(v)
             for k, v in arrays.items() if k.startswith(prefix)}
    net.load_state_dict(state)
    net.eval()


def load_checkpoint(path):
    """Load a checkpoint; returns (GeneratorParams, DiscriminatorParams | None, meta)."""
    with np.load(path) as data:
        if "__meta__" not in data:
            raise FormatError(f"{path}: missing checkpoint metadata")
        arrays = {k: data[k] for k in data.files}
    meta = json.loads(bytes(arrays.pop("__meta__")).decode())
    if meta.get("format_version") != FORMAT_VERSION:
        raise FormatError(
            f"{path}: unsupported checkpoint version {meta.get('format_version')}"
        )
    arch = ArchitectureConfig.from_dict(meta["arch"])
    g_net = GeneratorNet(arch)
    _load_into(g_net, arrays, "g/")
    g = GeneratorParams(arch, meta["seed"], g_net)
    d = None
    if any(k.startswith("d/") for k in arrays):
        d_net = DiscriminatorNet(arch)
        _load_into(d_net, arrays, "d/")
        d = DiscriminatorParams(arch, meta["seed"], d_net)
    return g, d, meta
