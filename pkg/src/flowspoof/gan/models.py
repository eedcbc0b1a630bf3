"""Generator (conv encoder-decoder) and discriminator networks."""

from dataclasses import dataclass

import numpy as np
import torch
from torch import nn

from ..errors import ShapeError
from .arch import ArchitectureConfig

# keep the logistic output strictly inside (0, 1) in float32
_LOGIT_CLAMP = 16.0


class Encoder(nn.Module):
    def __init__(self, arch: ArchitectureConfig):
        super().__init__()
        layers = []
        in_ch = arch.input_channels
        for i, out_ch in enumerate(arch.encoder_filters):
            layers.append(nn.Conv2d(in_ch, out_ch, 4, stride=2, padding=1, bias=False))
            if i > 0:
                layers.append(nn.BatchNorm2d(out_ch))
            layers.append(nn.LeakyReLU(0.2))
            in_ch = out_ch
        self.conv = nn.Sequential(*layers)
        side = arch.bottleneck_size
        self.fc = nn.Linear(in_ch * side * side, arch.latent_dim)

    def forward(self, x):
        h = self.conv(x)
        return self.fc(h.flatten(1))


class Decoder(nn.Module):
    def __init__(self, arch: ArchitectureConfig):
        super().__init__()
        filters = arch.encoder_filters
        side = arch.bottleneck_size
        self._unflatten = (filters[-1], side, side)
        self.fc = nn.Linear(arch.latent_dim, filters[-1] * side * side)
        layers = [nn.BatchNorm2d(filters[-1]), nn.ReLU()]
        channels = list(filters[::-1]) + [arch.input_channels]
        for i in range(len(channels) - 1):
            layers.append(nn.ConvTranspose2d(channels[i], channels[i + 1], 4,
                                             stride=2, padding=1, bias=False))
            if i < len(channels) - 2:
                layers.append(nn.BatchNorm2d(channels[i + 1]))
                layers.append(nn.ReLU())
        layers.append(nn.Tanh())
        self.deconv = nn.Sequential(*layers)

    def forward(self, z):
        h = self.fc(z).view(-1, *self._unflatten)
        return self.deconv(h)


class GeneratorNet(nn.Module):
    def __init__(self, arch: ArchitectureConfig):
        super().__init__()
        self.encoder = Encoder(arch)
        self.decoder = Decoder(arch)

    def forward(self, x):
        return self.decoder(self.encoder(x))


class DiscriminatorNet(nn.Module):
    def __init__(self, arch: ArchitectureConfig):
        super().__init__()
        layers = []
        in_ch = arch.input_channels
        for i, out_ch in enumerate(arch.discriminator_filters):
            layers.append(nn.Conv2d(in_ch, out_ch, 4, stride=2, padding=1, bias=False))
            if i > 0:
                layers.append(nn.BatchNorm2d(out_ch))
            layers.append(nn.LeakyReLU(0.2))
            in_ch = out_ch
        self.conv = nn.Sequential(*layers)
        side = arch.bottleneck_size
        self.fc = nn.Linear(in_ch * side * side, 1)

    def logits(self, x):
        h = self.conv(x)
        return self.fc(h.flatten(1)).squeeze(1)

    def forward(self, x):
        return torch.sigmoid(self.logits(x).clamp(-_LOGIT_CLAMP, _LOGIT_CLAMP))


@dataclass
class GeneratorParams:
    """Trained generator weights plus the seed they were initialized from."""

    arch: ArchitectureConfig
    seed: int
    net: GeneratorNet

    def state_arrays(self):
        return {k: v.detach().cpu().numpy() for k, v in self.net.state_dict().items()}


@dataclass
class DiscriminatorParams:
    arch: ArchitectureConfig
    seed: int
    net: DiscriminatorNet

    def state_arrays(self):
        return {k: v.detach().cpu().numpy() for k, v in self.net.state_dict().items()}


def _init_weights(module: nn.Module, generator: torch.Generator):
    for m in module.modules():
        if isinstance(m, (nn.Conv2d, nn.ConvTranspose2d, nn.Linear)):
            with torch.no_grad():
                m.weight.normal_(0.0, 0.02, generator=generator)
                if m.bias is not None:
                    m.bias.zero_()
        elif isinstance(m, nn.BatchNorm2d):
            with torch.no_grad():
                m.weight.normal_(1.0, 0.02, generator=generator)
                m.bias.zero_()


def init_models(arch: ArchitectureConfig, seed: int):
    """Build generator/discriminator with Gaussian(0, 0.02) weights.

    Deterministic given the seed.
    """
    gen = torch.Generator().manual_seed(int(seed))
    g_net = GeneratorNet(arch)
    d_net = DiscriminatorNet(arch)
    _init_weights(g_net, gen)
    _init_weights(d_net, gen)
    g_net.eval()
    d_net.eval()
    return (GeneratorParams(arch, seed, g_net),
            DiscriminatorParams(arch, seed, d_net))


def _to_tensor(batch, arch: ArchitectureConfig, dtype) -> torch.Tensor:
    arr = batch.patches if hasattr(batch, "patches") else np.asarray(batch)
    if arr.ndim == 3:
        arr = arr[None]
    expected = (arch.input_size, arch.input_size, arch.input_channels)
    if arr.ndim != 4 or arr.shape[1:] != expected:
        raise ShapeError(f"expected Nx{expected} batch, got {arr.shape}")
    return torch.from_numpy(np.ascontiguousarray(arr, dtype=np.float32)) \
        .permute(0, 3, 1, 2).to(dtype)


def generator_forward(g: GeneratorParams, batch) -> np.ndarray:
    """Reconstruct a batch; output shape equals input shape, values in [-1, 1]."""
    dtype = next(g.net.parameters()).dtype
    x = _to_tensor(batch, g.arch, dtype)
    g.net.eval()
    with torch.no_grad():
        y = g.net(x)
    return y.permute(0, 2, 3, 1).cpu().numpy().astype(np.float32)


def generator_encode(g: GeneratorParams, batch) -> np.ndarray:
    """Latent codes from the generator's encoder (for latent-space scoring)."""
    dtype = next(g.net.parameters()).dtype
    x = _to_tensor(batch, g.arch, dtype)
    g.net.eval()
    with torch.no_grad():
        z = g.net.encoder(x)
    return z.cpu().numpy().astype(np.float32)


def discriminator_forward(d: DiscriminatorParams, batch) -> np.ndarray:
    """Per-item probability that an input is real, strictly inside (0, 1)."""
    dtype = next(d.net.parameters()).dtype
    x = _to_tensor(batch, d.arch, dtype)
    d.net.eval()
    with torch.no_grad():
        p = d.net(x)
    return p.cpu().numpy().astype(np.float64)
