"""Per-frame and per-video anomaly scores from a trained generator."""

from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError
from ..flowprep import (
    DEFAULT_ESTIMATOR,
    FlowMapImage,
    FrameSequence,
    estimate_flow,
    extract_patches,
    flow_to_color,
)
from ..gan.models import GeneratorParams, generator_encode, generator_forward
from .mmd import ScoreDistribution


@dataclass(frozen=True)
class PrepSettings:
    """Flow-map preprocessing knobs shared by training and scoring."""

    estimator: str = DEFAULT_ESTIMATOR
    window: int = 32
    stride: int = 32
    # "auto" normalizes each flow map by its own max norm; a fixed float is
    # required for cross-video comparability
    max_magnitude: object = "auto"

    def __post_init__(self):
        if self.window <= 0 or self.stride <= 0:
            raise ConfigError("window and stride must be positive")
        if self.max_magnitude != "auto" and float(self.max_magnitude) <= 0:
            raise ConfigError("max_magnitude must be 'auto' or > 0")


def frame_score(g: GeneratorParams, flow_map: FlowMapImage,
                window: int = 32, stride: int = 32,
                score_mode: str = "pixel") -> float:
    """Mean reconstruction error over all patches of one flow map.

    ``score_mode='pixel'`` is the per-patch L1 between input and
    reconstruction; ``'latent'`` compares encoder codes of the input and its
    reconstruction instead, reusing the generator's own encoder to score in
    feature space rather than training a separate one.
    """
    batch = extract_patches(flow_map, window=window, stride=stride)
    recon = generator_forward(g, batch)
    if score_mode == "pixel":
        per_patch = np.abs(batch.patches - recon).mean(axis=(1, 2, 3))
    elif score_mode == "latent":
        z_in = generator_encode(g, batch)
        z_out = generator_encode(g, recon)
        per_patch = np.abs(z_in - z_out).mean(axis=1)
    else:
        raise ConfigError(f"unknown score_mode {score_mode!r}")
    return float(per_patch.mean())


def flow_maps_of(video: FrameSequence, prep: PrepSettings):
    """Color-coded flow maps of every consecutive frame pair (N-1 maps)."""
    maps = []
    for a, b in zip(video.frames, video.frames[1:]):
        field = estimate_flow(a, b, estimator=prep.estimator)
        maps.append(flow_to_color(field, max_magnitude=prep.max_magnitude))
    return maps


def video_distribution(g: GeneratorParams, video: FrameSequence,
                       prep: PrepSettings = PrepSettings(),
                       score_mode: str = "pixel",
                       source_tag: str = "test") -> ScoreDistribution:
    """Per-frame score distribution of one video, order preserved."""
    scores = [
        frame_score(g, m, window=prep.window, stride=prep.stride,
                    score_mode=score_mode)
        for m in flow_maps_of(video, prep)
    ]
    return ScoreDistribution(samples=np.asarray(scores),
                             source_tag=source_tag,
                             video_id=video.source_id)


def reference_distribution(g: GeneratorParams, videos,
                           prep: PrepSettings = PrepSettings(),
                           score_mode: str = "pixel",
                           max_samples: int = 10_000,
                           seed: int = 0) -> ScoreDistribution:
    """Pooled frame scores of the training live videos.

    Capped at ``max_samples`` by seeded subsampling to bound the kernel cost
    of every MMD evaluation against it.
    """
    pooled = np.concatenate([
        video_distribution(g, v, prep, score_mode).samples for v in videos
    ])
    if pooled.size > max_samples:
        rng = np.random.default_rng(seed)
        pooled = pooled[np.sort(rng.choice(pooled.size, max_samples, replace=False))]
    return ScoreDistribution(samples=pooled, source_tag="reference",
                             video_id="reference")
