"""Adversarially trained encoder-decoder reconstructor for normal-class data."""

from .arch import ArchitectureConfig
from .checkpoint import load_checkpoint, save_checkpoint
from .losses import (
    LossWeights,
    adversarial_losses,
    reconstruction_loss,
    total_generator_loss,
)
from .models import (
    DiscriminatorParams,
    GeneratorParams,
    discriminator_forward,
    generator_encode,
    generator_forward,
    init_models,
)
from .train import TrainingConfig, TrainingHistory, train

__all__ = [
    "ArchitectureConfig",
    "DiscriminatorParams",
    "GeneratorParams",
    "LossWeights",
    "TrainingConfig",
    "TrainingHistory",
    "adversarial_losses",
    "discriminator_forward",
    "generator_encode",
    "generator_forward",
    "init_models",
    "load_checkpoint",
    "reconstruction_loss",
    "save_checkpoint",
    "total_generator_loss",
    "train",
]
