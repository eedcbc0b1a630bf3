"""Training losses: L1 reconstruction, adversarial terms, weighted total."""

from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError, NumericError, ShapeError


@dataclass(frozen=True)
class LossWeights:
    """Weights of the reconstruction and adversarial terms in the total loss."""

    w_i: float = 50.0
    w_a: float = 1.0

    def __post_init__(self):
        if self.w_i < 0 or self.w_a < 0:
            raise ConfigError("loss weights must be non-negative")
        if self.w_i + self.w_a <= 0:
            raise ConfigError("at least one loss weight must be positive")


def reconstruction_loss(x, x_hat) -> float:
    """Mean absolute difference over all elements (batch L1)."""
    x = np.asarray(x, dtype=np.float64)
    x_hat = np.asarray(x_hat, dtype=np.float64)
    if x.shape != x_hat.shape:
        raise ShapeError(f"shape mismatch: {x.shape} vs {x_hat.shape}")
    return float(np.mean(np.abs(x - x_hat)))


def adversarial_losses(d_real, d_fake):
    """Losses of the adversarial game from discriminator probabilities.

    Returns (generator_adv_loss, discriminator_loss) where
    discriminator_loss = -mean(log d_real) - mean(log(1 - d_fake)) and the
    generator term is the non-saturating surrogate -mean(log d_fake).
    """
    d_real = np.asarray(d_real, dtype=np.float64)
    d_fake = np.asarray(d_fake, dtype=np.float64)
    for name, p in (("d_real", d_real), ("d_fake", d_fake)):
        if p.size == 0 or np.any(p <= 0.0) or np.any(p >= 1.0):
            raise NumericError(f"{name} values must lie strictly in (0, 1)")
    discriminator_loss = float(-np.mean(np.log(d_real)) - np.mean(np.log1p(-d_fake)))
    generator_adv_loss = float(-np.mean(np.log(d_fake)))
    return generator_adv_loss, discriminator_loss


def total_generator_loss(l_irec: float, l_adv: float, weights: LossWeights) -> float:
    """Weighted sum w_i * l_irec + w_a * l_adv."""
    if not (np.isfinite(l_irec) and np.isfinite(l_adv)):
        raise NumericError("loss terms must be finite")
    return weights.w_i * float(l_irec) + weights.w_a * float(l_adv)
