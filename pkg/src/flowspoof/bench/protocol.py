"""One-class outlier-detection benchmark: train on one class, test on all."""

import hashlib
import json
import time
from dataclasses import dataclass, field

import numpy as np

from ..errors import DataError, NumericError
from ..gan.arch import ArchitectureConfig
from ..gan.models import generator_forward
from ..gan.train import TrainingConfig, train
from ..scoring.metrics import auc_score
from .datasets import load_dataset, prepare_images


@dataclass
class OneClassSplit:
    """Unlabeled normal-only train set plus a normal/abnormal test set."""

    normal_class: int
    train_images: np.ndarray        # Nx32x32x3 uint8, labels stripped
    test_images: np.ndarray
    test_is_abnormal: np.ndarray    # bool per test image

    def __post_init__(self):
        if self.train_images.shape[0] == 0:
            raise DataError(f"no training images for class {self.normal_class}")
        if not (self.test_is_abnormal.any() and (~self.test_is_abnormal).any()):
            raise DataError("test split must contain both normal and abnormal")


@dataclass
class BenchReport:
    per_class_auc: dict
    mean_auc: float
    runtime_seconds: float
    config_fingerprint: str

    def __post_init__(self):
        recomputed = float(np.mean(list(self.per_class_auc.values())))
        if abs(recomputed - self.mean_auc) > 1e-12:
            raise NumericError("mean_auc must equal the mean of per-class AUCs")

    def to_csv(self, path):
        with open(path, "w", newline="") as f:
            f.write("class,auc\n")
            for cls in sorted(self.per_class_auc):
                f.write(f"{cls},{self.per_class_auc[cls]!r}\n")
            f.write(f"mean,{self.mean_auc!r}\n")

    def summary(self) -> str:
        lines = [f"class {cls}: AUC {auc:.4f}"
                 for cls, auc in sorted(self.per_class_auc.items())]
        lines.append(f"mean AUC {self.mean_auc:.4f} "
                     f"({self.runtime_seconds:.1f}s, cfg {self.config_fingerprint})")
        return "\n".join(lines)


def make_one_class_split(x_train, y_train, x_test, y_test,
                         normal_class: int, seed: int = 0) -> OneClassSplit:
    """Strip labels from the normal-class train images; relabel the test set."""
    y_train = np.asarray(y_train)
    y_test = np.asarray(y_test)
    if normal_class not in set(np.unique(y_train)):
        raise DataError(f"class {normal_class} absent from training labels")
    train_images = prepare_images(np.asarray(x_train)[y_train == normal_class])
    rng = np.random.default_rng(seed)
    train_images = train_images[rng.permutation(train_images.shape[0])]
    return OneClassSplit(
        normal_class=int(normal_class),
        train_images=train_images,
        test_images=prepare_images(x_test),
        test_is_abnormal=(y_test != normal_class),
    )


def image_scores(g, images_pm1: np.ndarray, batch_size: int = 256) -> np.ndarray:
    """Per-image mean L1 reconstruction error for whole 32x32 images."""
    scores = []
    for start in range(0, images_pm1.shape[0], batch_size):
        x = images_pm1[start:start + batch_size]
        scores.append(np.abs(x - generator_forward(g, x)).mean(axis=(1, 2, 3)))
    return np.concatenate(scores)


def _fingerprint(cfg: TrainingConfig, arch: ArchitectureConfig, classes) -> str:
    blob = json.dumps({
        "lr": cfg.learning_rate, "epochs": cfg.epochs, "batch": cfg.batch_size,
        "seed": cfg.seed, "w_i": cfg.loss_weights.w_i, "w_a": cfg.loss_weights.w_a,
        "arch": arch.to_dict(), "classes": list(classes),
    }, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


def run_one_class_benchmark(dataset, classes=None,
                            cfg: TrainingConfig | None = None,
                            arch: ArchitectureConfig | None = None,
                            max_train_images: int | None = None,
                            progress=None) -> BenchReport:
    """Train one detector per normal class and report per-class/mean AUC.

    ``dataset`` is a name ("mnist", "cifar10", "digits") or a 4-tuple of
    arrays. Benchmark images are scored directly, without flow preprocessing.
    """
    if isinstance(dataset, str):
        data = load_dataset(dataset)
    else:
        data = dataset
    x_train, y_train, x_test, y_test = data
    if classes is None:
        classes = sorted(int(c) for c in np.unique(y_train))
    cfg = cfg or TrainingConfig(epochs=10)
    arch = arch or ArchitectureConfig()

    start = time.monotonic()
    per_class = {}
    for cls in classes:
        split = make_one_class_split(x_train, y_train, x_test, y_test, cls,
                                     seed=cfg.seed)
        train_images = split.train_images
        if max_train_images is not None:
            train_images = train_images[:max_train_images]
        train_pm1 = train_images.astype(np.float32) / 127.5 - 1.0
        try:
            g, _, _ = train(train_pm1, cfg, arch=arch)
        except Exception as exc:
            exc.args = (f"class {cls}: {exc}",)
            raise
        test_pm1 = split.test_images.astype(np.float32) / 127.5 - 1.0
        scores = image_scores(g, test_pm1)
        per_class[cls] = auc_score(live=scores[~split.test_is_abnormal],
                                   spoof=scores[split.test_is_abnormal])
        if progress is not None:
            progress(cls, per_class[cls])
    return BenchReport(
        per_class_auc=per_class,
        mean_auc=float(np.mean(list(per_class.values()))),
        runtime_seconds=time.monotonic() - start,
        config_fingerprint=_fingerprint(cfg, arch, classes),
    )
