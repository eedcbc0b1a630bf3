"""Benchmark dataset loading from a local cache.

MNIST and CIFAR10 are read from the cache directory (``FLOWSPOOF_DATA_DIR``,
default ``~/.cache/flowspoof/datasets``); there is no downloader here, so a
missing dataset raises an actionable error naming the expected path. The
``digits`` dataset ships with scikit-learn and always works offline.
"""

import os
import pickle
from pathlib import Path

import cv2
import numpy as np

from ..errors import ConfigError, DatasetUnavailableError

CACHE_ENV = "FLOWSPOOF_DATA_DIR"
SUPPORTED = ("mnist", "cifar10", "digits")


def cache_dir() -> Path:
    return Path(os.environ.get(CACHE_ENV,
                               Path.home() / ".cache" / "flowspoof" / "datasets"))


def prepare_images(x: np.ndarray) -> np.ndarray:
    """Normalize a stack of images to Nx32x32x3 uint8.

    28x28 inputs are zero-padded to 32x32; other sizes are nearest-neighbor
    resized; grayscale is channel-replicated.
    """
    x = np.asarray(x)
    if x.ndim == 3:
        x = x[..., None]
    n, h, w, c = x.shape
    if (h, w) == (28, 28):
        x = np.pad(x, ((0, 0), (2, 2), (2, 2), (0, 0)))
    elif (h, w) != (32, 32):
        x = np.stack([cv2.resize(img, (32, 32), interpolation=cv2.INTER_NEAREST)
                      for img in x])
        if x.ndim == 3:
            x = x[..., None]
    if x.shape[-1] == 1:
        x = np.repeat(x, 3, axis=-1)
    return x.astype(np.uint8)


def load_mnist():
    path = cache_dir() / "mnist.npz"
    if not path.exists():
        raise DatasetUnavailableError(
            f"MNIST not found; place an mnist.npz archive (arrays x_train, "
            f"y_train, x_test, y_test) at {path}, or set ${CACHE_ENV}"
        )
    with np.load(path) as d:
        return d["x_train"], d["y_train"], d["x_test"], d["y_test"]


def load_cifar10():
    root = cache_dir() / "cifar-10-batches-py"
    if not root.exists():
        raise DatasetUnavailableError(
            f"CIFAR10 not found; extract cifar-10-python.tar.gz so that "
            f"{root} exists, or set ${CACHE_ENV}"
        )

    def read_batch(name):
        with open(root / name, "rb") as f:
            d = pickle.load(f, encoding="bytes")
        x = d[b"data"].reshape(-1, 3, 32, 32).transpose(0, 2, 3, 1)
        return x, np.asarray(d[b"labels"])

    xs, ys = zip(*(read_batch(f"data_batch_{i}") for i in range(1, 6)))
    x_test, y_test = read_batch("test_batch")
    return np.concatenate(xs), np.concatenate(ys), x_test, y_test


def load_digits_dataset(train_fraction: float = 0.7):
    """The 8x8 scikit-learn digits, split per class in stable order."""
    from sklearn.datasets import load_digits

    bunch = load_digits()
    images = np.clip(np.rint(bunch.images * (255.0 / 16.0)), 0, 255).astype(np.uint8)
    labels = bunch.target
    train_idx, test_idx = [], []
    for cls in np.unique(labels):
        idx = np.flatnonzero(labels == cls)
        cut = int(len(idx) * train_fraction)
        train_idx.extend(idx[:cut])
        test_idx.extend(idx[cut:])
    train_idx, test_idx = np.array(train_idx), np.array(test_idx)
    return (images[train_idx], labels[train_idx],
            images[test_idx], labels[test_idx])


def load_dataset(name: str):
    """Returns (x_train, y_train, x_test, y_test) with raw image sizes."""
    if name == "mnist":
        return load_mnist()
    if name == "cifar10":
        return load_cifar10()
    if name == "digits":
        return load_digits_dataset()
    raise ConfigError(f"unknown dataset {name!r}; supported: {list(SUPPORTED)}")
