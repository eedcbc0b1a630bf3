"""Adversarial training of the generator on normal-class patches only.

The training interface takes unlabeled patch batches; there is deliberately
no label-bearing type anywhere on this path.
"""

import csv
from dataclasses import dataclass, field

import numpy as np
import torch
import torch.nn.functional as F

from ..errors import ConfigError, DataError, DivergenceError
from .arch import ArchitectureConfig
from .losses import LossWeights
from .models import DiscriminatorNet, GeneratorNet, init_models


@dataclass(frozen=True)
class TrainingConfig:
    learning_rate: float = 0.02
    epochs: int = 40
    batch_size: int = 64
    seed: int = 0
    beta1: float = 0.5
    beta2: float = 0.999
    loss_weights: LossWeights = field(default_factory=LossWeights)
    # literal min-max generator term log(1 - D(G(x))) instead of the
    # non-saturating -log D(G(x)) surrogate
    saturating_adversarial: bool = False

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise ConfigError("learning_rate must be positive")
        if self.epochs <= 0:
            raise ConfigError("epochs must be positive")
        if self.batch_size <= 0:
            raise ConfigError("batch_size must be positive")


@dataclass
class TrainingHistory:
    """Per-epoch mean losses, plus optional held-out reconstruction probes."""

    recon_loss: list = field(default_factory=list)
    g_adv_loss: list = field(default_factory=list)
    d_loss: list = field(default_factory=list)
    monitors: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.recon_loss)

    def to_csv(self, path):
        with open(path, "w", newline="") as f:
            writer = csv.writer(f)
            monitor_names = sorted(self.monitors)
            writer.writerow(["epoch", "recon_loss", "g_adv_loss", "d_loss"]
                            + [f"monitor_{m}" for m in monitor_names])
            for i in range(len(self)):
                row = [i + 1, repr(self.recon_loss[i]), repr(self.g_adv_loss[i]),
                       repr(self.d_loss[i])]
                row += [repr(self.monitors[m][i]) for m in monitor_names]
                writer.writerow(row)

    @classmethod
    def from_csv(cls, path):
        hist = cls()
        with open(path, newline="") as f:
            reader = csv.reader(f)
            header = next(reader)
            monitor_names = [h[len("monitor_"):] for h in header[4:]]
            hist.monitors = {m: [] for m in monitor_names}
            for row in reader:
                hist.recon_loss.append(float(row[1]))
                hist.g_adv_loss.append(float(row[2]))
                hist.d_loss.append(float(row[3]))
                for m, v in zip(monitor_names, row[4:]):
                    hist.monitors[m].append(float(v))
        return hist


def _as_array(patches) -> np.ndarray:
    arr = patches.patches if hasattr(patches, "patches") else np.asarray(patches)
    arr = np.asarray(arr, dtype=np.float32)
    if arr.ndim != 4 or arr.shape[0] == 0:
        raise DataError("training stream must be a non-empty NxHxWxC batch")
    return arr


def _check_finite(value, epoch, batch_idx):
    if not np.isfinite(value):
        raise DivergenceError(epoch, batch_idx)
    return value


def train(patches, cfg: TrainingConfig, arch: ArchitectureConfig | None = None,
          monitor: dict | None = None, checkpoint_hook=None):
    """Train generator and discriminator on normal-class patches.

    Per batch: one discriminator ascent step on the adversarial objective,
    then one generator descent step on the weighted reconstruction +
    adversarial loss. Deterministic given ``cfg.seed`` (single worker).

    ``monitor`` maps names to held-out batches whose mean reconstruction
    loss is recorded each epoch. ``checkpoint_hook(epoch, g, d, history)``
    runs after every epoch when given.
    """
    data = _as_array(patches)
    if arch is None:
        arch = ArchitectureConfig(input_size=data.shape[1],
                                  input_channels=data.shape[3])
    g, d = init_models(arch, cfg.seed)
    g.net.train()
    d.net.train()

    x_all = torch.from_numpy(np.ascontiguousarray(data)).permute(0, 3, 1, 2)
    w = cfg.loss_weights
    opt_g = torch.optim.Adam(g.net.parameters(), lr=cfg.learning_rate,
                             betas=(cfg.beta1, cfg.beta2))
    opt_d = torch.optim.Adam(d.net.parameters(), lr=cfg.learning_rate,
                             betas=(cfg.beta1, cfg.beta2))
    rng = np.random.default_rng(cfg.seed)
    history = TrainingHistory(monitors={m: [] for m in (monitor or {})})

    n = x_all.shape[0]
    for epoch in range(1, cfg.epochs + 1):
        order = rng.permutation(n)
        epoch_recon, epoch_gadv, epoch_dloss = [], [], []
        for batch_idx, start in enumerate(range(0, n, cfg.batch_size)):
            x = x_all[order[start:start + cfg.batch_size]]

            # discriminator step: real up, reconstructed down
            x_hat = g.net(x)
            z_real = d.net.logits(x)
            z_fake = d.net.logits(x_hat.detach())
            d_loss = F.softplus(-z_real).mean() + F.softplus(z_fake).mean()
            opt_d.zero_grad()
            d_loss.backward()
            opt_d.step()

            # generator step on the weighted total loss
            x_hat = g.net(x)
            recon = (x - x_hat).abs().mean()
            z_fake = d.net.logits(x_hat)
            if cfg.saturating_adversarial:
                g_adv = -F.softplus(z_fake).mean()
            else:
                g_adv = F.softplus(-z_fake).mean()
            g_total = w.w_i * recon + w.w_a * g_adv
            opt_g.zero_grad()
            g_total.backward()
            opt_g.step()

            epoch_recon.append(_check_finite(recon.item(), epoch, batch_idx))
            epoch_gadv.append(_check_finite(g_adv.item(), epoch, batch_idx))
            epoch_dloss.append(_check_finite(d_loss.item(), epoch, batch_idx))

        history.recon_loss.append(float(np.mean(epoch_recon)))
        history.g_adv_loss.append(float(np.mean(epoch_gadv)))
        history.d_loss.append(float(np.mean(epoch_dloss)))
        if monitor:
            g.net.eval()
            with torch.no_grad():
                for name, probe in monitor.items():
                    xm = torch.from_numpy(
                        np.ascontiguousarray(_as_array(probe))).permute(0, 3, 1, 2)
                    history.monitors[name].append(
                        float((xm - g.net(xm)).abs().mean().item()))
            g.net.train()
        if checkpoint_hook is not None:
            checkpoint_hook(epoch, g, d, history)

    g.net.eval()
    d.net.eval()
    return g, d, history
