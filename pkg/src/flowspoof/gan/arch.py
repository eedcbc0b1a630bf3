"""Architecture configuration for the generator and discriminator."""

from dataclasses import dataclass, field

from ..errors import ConfigError


@dataclass(frozen=True)
class ArchitectureConfig:
    """DCGAN-style conv stack for square inputs.

    The encoder halves the spatial size at every stage (kernel 4, stride 2,
    padding 1); the decoder mirrors it with transposed convolutions and a
    tanh output. The discriminator mirrors the encoder and ends in a single
    logistic unit.
    """

    input_size: int = 32
    input_channels: int = 3
    encoder_filters: tuple = (64, 128, 256)
    latent_dim: int = 100
    discriminator_filters: tuple = (64, 128, 256)

    def __post_init__(self):
        if self.input_size < 2:
            raise ConfigError("input_size must be >= 2")
        if self.input_channels < 1:
            raise ConfigError("input_channels must be >= 1")
        if self.latent_dim < 1:
            raise ConfigError("latent_dim must be >= 1")
        for name, filters in (("encoder", self.encoder_filters),
                              ("discriminator", self.discriminator_filters)):
            if not filters or any(f < 1 for f in filters):
                raise ConfigError(f"{name}_filters must be non-empty positive")
        if self.bottleneck_size < 1:
            raise ConfigError(
                f"input_size {self.input_size} collapses below 1px after "
                f"{len(self.encoder_filters)} downsampling stages"
            )
        if self.bottleneck_size * 2 ** len(self.encoder_filters) != self.input_size:
            raise ConfigError(
                "input_size must be divisible by 2**len(encoder_filters) so the "
                "decoder reproduces the input shape"
            )

    @property
    def bottleneck_size(self) -> int:
        return self.input_size >> len(self.encoder_filters)

    def to_dict(self):
        return {
            "input_size": self.input_size,
            "input_channels": self.input_channels,
            "encoder_filters": list(self.encoder_filters),
            "latent_dim": self.latent_dim,
            "discriminator_filters": list(self.discriminator_filters),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            input_size=int(d["input_size"]),
            input_channels=int(d["input_channels"]),
            encoder_filters=tuple(d["encoder_filters"]),
            latent_dim=int(d["latent_dim"]),
            discriminator_filters=tuple(d["discriminator_filters"]),
        )
