"""One-class benchmarks and synthetic video generation."""

from .datasets import CACHE_ENV, SUPPORTED, cache_dir, load_dataset, prepare_images
from .protocol import (
    BenchReport,
    OneClassSplit,
    image_scores,
    make_one_class_split,
    run_one_class_benchmark,
)
from .synth import KINDS, SyntheticVideoSpec, generate_synthetic_video

__all__ = [
    "CACHE_ENV",
    "KINDS",
    "SUPPORTED",
    "BenchReport",
    "OneClassSplit",
    "SyntheticVideoSpec",
    "cache_dir",
    "generate_synthetic_video",
    "image_scores",
    "load_dataset",
    "make_one_class_split",
    "prepare_images",
    "run_one_class_benchmark",
]
