"""Structured run configuration: one YAML file, command-line overrides.

Precedence is flag > file > default. Validation is fail-fast: every value is
checked against the target module's preconditions before any work starts.
"""

import hashlib
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .errors import ConfigError
from .flowprep.flow import available_estimators
from .gan.losses import LossWeights
from .gan.train import TrainingConfig
from .scoring.mmd import DEFAULT_BANDWIDTH_FACTORS
from .scoring.scores import PrepSettings


def derive_seed(global_seed: int, stage: str) -> int:
    """Stable per-stage seed derived from the one global seed."""
    digest = hashlib.sha256(f"{global_seed}:{stage}".encode()).digest()
    return int.from_bytes(digest[:4], "big")


@dataclass(frozen=True)
class ScoreConfig:
    kernel_family: str = "rbf"
    bandwidth_factors: tuple = DEFAULT_BANDWIDTH_FACTORS
    bandwidths: tuple | None = None  # explicit bandwidths bypass the heuristic
    motion_judgment: bool = True
    motion_epsilon: float = 2.0
    motion_pairs: int = 10
    score_mode: str = "pixel"
    reference_max_samples: int = 10_000

    def __post_init__(self):
        if self.kernel_family not in ("rbf", "linear"):
            raise ConfigError(f"unknown kernel family {self.kernel_family!r}")
        if self.bandwidths is not None and any(b <= 0 for b in self.bandwidths):
            raise ConfigError("bandwidths must be positive")
        if not self.bandwidth_factors or any(f <= 0 for f in self.bandwidth_factors):
            raise ConfigError("bandwidth_factors must be positive")
        if self.motion_epsilon < 0:
            raise ConfigError("motion_epsilon must be non-negative")
        if self.motion_pairs <= 0:
            raise ConfigError("motion_pairs must be positive")
        if self.score_mode not in ("pixel", "latent"):
            raise ConfigError(f"unknown score_mode {self.score_mode!r}")
        if self.reference_max_samples <= 0:
            raise ConfigError("reference_max_samples must be positive")


@dataclass(frozen=True)
class BenchConfig:
    dataset: str = "mnist"
    classes: tuple | None = None  # None means all
    epochs: int = 10
    batch_size: int = 64
    max_train_images: int | None = None

    def __post_init__(self):
        if self.epochs <= 0 or self.batch_size <= 0:
            raise ConfigError("bench epochs and batch_size must be positive")
        if self.max_train_images is not None and self.max_train_images <= 0:
            raise ConfigError("max_train_images must be positive")


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    out: Path = Path("runs/default")
    workers: int = 1
    fps: int = 30
    prep: PrepSettings = field(default_factory=PrepSettings)
    train: TrainingConfig = field(default_factory=TrainingConfig)
    score: ScoreConfig = field(default_factory=ScoreConfig)
    bench: BenchConfig = field(default_factory=BenchConfig)

    def __post_init__(self):
        if self.workers <= 0:
            raise ConfigError("workers must be positive")
        if self.fps <= 0:
            raise ConfigError("fps must be positive")
        if self.prep.estimator not in available_estimators():
            raise ConfigError(
                f"unknown flow estimator {self.prep.estimator!r}; "
                f"available: {available_estimators()}"
            )


def _classes_tuple(value):
    if value in (None, "all"):
        return None
    if isinstance(value, str):
        value = value.split(",")
    elif isinstance(value, int):
        value = [value]
    return tuple(int(v) for v in value)


def load_run_config(path=None, overrides: dict | None = None) -> RunConfig:
    """Build a validated RunConfig from an optional YAML file plus overrides."""
    raw = {}
    if path is not None:
        with open(path) as f:
            raw = yaml.safe_load(f) or {}
        if not isinstance(raw, dict):
            raise ConfigError(f"{path}: top level must be a mapping")
    overrides = overrides or {}

    def pick(section, key, default):
        if key in overrides and overrides[key] is not None:
            return overrides[key]
        return (raw.get(section) or {}).get(key, default) if section \
            else raw.get(key, default)

    seed = int(pick(None, "seed", 0))
    prep = PrepSettings(
        estimator=pick("preprocess", "estimator", "farneback"),
        window=int(pick("preprocess", "window", 32)),
        stride=int(pick("preprocess", "stride", 32)),
        max_magnitude=pick("preprocess", "max_magnitude", "auto"),
    )
    train_cfg = TrainingConfig(
        learning_rate=float(pick("train", "learning_rate", 0.02)),
        epochs=int(pick("train", "epochs", 40)),
        batch_size=int(pick("train", "batch_size", 64)),
        seed=derive_seed(seed, "train"),
        loss_weights=LossWeights(
            w_i=float(pick("train", "w_i", 50.0)),
            w_a=float(pick("train", "w_a", 1.0)),
        ),
        saturating_adversarial=bool(pick("train", "saturating_adversarial", False)),
    )
    bandwidths = pick("score", "bandwidths", None)
    score_cfg = ScoreConfig(
        kernel_family=pick("score", "kernel_family", "rbf"),
        bandwidth_factors=tuple(pick("score", "bandwidth_factors",
                                     DEFAULT_BANDWIDTH_FACTORS)),
        bandwidths=tuple(bandwidths) if bandwidths else None,
        motion_judgment=bool(pick("score", "motion_judgment", True)),
        motion_epsilon=float(pick("score", "motion_epsilon", 2.0)),
        motion_pairs=int(pick("score", "motion_pairs", 10)),
        score_mode=pick("score", "score_mode", "pixel"),
        reference_max_samples=int(pick("score", "reference_max_samples", 10_000)),
    )
    bench_cfg = BenchConfig(
        dataset=pick("bench", "dataset", "mnist"),
        classes=_classes_tuple(pick("bench", "classes", None)),
        epochs=int(pick("bench", "epochs", 10)),
        batch_size=int(pick("bench", "batch_size", 64)),
        max_train_images=pick("bench", "max_train_images", None),
    )
    return RunConfig(
        seed=seed,
        out=Path(pick(None, "out", "runs/default")),
        workers=int(pick(None, "workers", 1)),
        fps=int(pick("preprocess", "fps", 30)),
        prep=prep,
        train=train_cfg,
        score=score_cfg,
        bench=bench_cfg,
    )
