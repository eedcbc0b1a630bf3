"""Maximum mean discrepancy between per-frame score distributions.

The estimator is the biased V-statistic: the RKHS norm of the difference of
empirical mean embeddings, computed through the kernel trick and clamped at
zero before the square root to absorb rounding.
"""

from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError, DataError, NumericError

DEFAULT_BANDWIDTH_FACTORS = (0.5, 1.0, 2.0, 4.0, 8.0)


@dataclass
class ScoreDistribution:
    """Per-frame reconstruction errors of one video or one reference pool."""

    samples: np.ndarray
    source_tag: str = "test"  # reference | test
    video_id: str = ""

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.float64).ravel()
        if self.samples.size == 0:
            raise DataError("score distribution must be non-empty")
        if not np.isfinite(self.samples).all() or (self.samples < 0).any():
            raise NumericError("scores must be finite and non-negative")
        if self.source_tag not in ("reference", "test"):
            raise ConfigError(f"bad source_tag {self.source_tag!r}")

    def __len__(self):
        return self.samples.size


@dataclass(frozen=True)
class KernelSpec:
    """A convex combination of basis kernels (rbf mixture or linear)."""

    family: str = "rbf"
    bandwidths: tuple = (1.0,)
    mixture_weights: tuple | None = None

    def __post_init__(self):
        if self.family not in ("rbf", "linear"):
            raise ConfigError(f"unknown kernel family {self.family!r}")
        if self.family == "rbf":
            if not self.bandwidths or any(b <= 0 for b in self.bandwidths):
                raise ConfigError("rbf bandwidths must be positive")
            weights = self.mixture_weights
            if weights is None:
                weights = (1.0 / len(self.bandwidths),) * len(self.bandwidths)
                object.__setattr__(self, "mixture_weights", weights)
            if len(weights) != len(self.bandwidths):
                raise ConfigError("one mixture weight per bandwidth required")
            if any(w < 0 for w in weights) or abs(sum(weights) - 1.0) > 1e-9:
                raise ConfigError("mixture weights must be convex (>= 0, sum 1)")

    def gram(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Kernel matrix k(x_i, y_j) for 1-D sample vectors."""
        x = np.asarray(x, dtype=np.float64)[:, None]
        y = np.asarray(y, dtype=np.float64)[None, :]
        if self.family == "linear":
            return x * y
        sq = (x - y) ** 2
        k = np.zeros_like(sq)
        for w, h in zip(self.mixture_weights, self.bandwidths):
            k += w * np.exp(-sq / (2.0 * h * h))
        return k

    def to_dict(self):
        return {"family": self.family,
                "bandwidths": list(self.bandwidths),
                "mixture_weights": list(self.mixture_weights or [])}

    @classmethod
    def from_dict(cls, d):
        return cls(family=d["family"],
                   bandwidths=tuple(d.get("bandwidths") or (1.0,)),
                   mixture_weights=tuple(d["mixture_weights"]) or None
                   if d.get("mixture_weights") else None)


def median_heuristic_kernel(pooled_samples,
                            factors=DEFAULT_BANDWIDTH_FACTORS) -> KernelSpec:
    """rbf mixture with bandwidths = factors x median pairwise distance.

    Falls back to bandwidth 1 when all pooled samples coincide.
    """
    x = np.asarray(pooled_samples, dtype=np.float64).ravel()
    if x.size < 2:
        raise DataError("median heuristic needs >= 2 pooled samples")
    dists = np.abs(x[:, None] - x[None, :])[np.triu_indices(x.size, k=1)]
    med = float(np.median(dists))
    if med <= 0:
        med = 1.0
    return KernelSpec(family="rbf", bandwidths=tuple(f * med for f in factors))


def mmd(a: ScoreDistribution, b: ScoreDistribution,
        kernel: KernelSpec | None = None) -> float:
    """Biased MMD V-statistic between two sample sets.

    sqrt of mean k(a,a) - 2 mean k(a,b) + mean k(b,b), clamped at 0.
    Defaults to the median-heuristic rbf mixture over the pooled samples.
    """
    if kernel is None:
        kernel = median_heuristic_kernel(np.concatenate([a.samples, b.samples]))
    kaa = kernel.gram(a.samples, a.samples).mean()
    kbb = kernel.gram(b.samples, b.samples).mean()
    kab = kernel.gram(a.samples, b.samples).mean()
    return float(np.sqrt(max(kaa - 2.0 * kab + kbb, 0.0)))
