"""Figure rendering for reports: loss curves, score histograms, AUC bars."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def plot_training_history(history, path):
    """Loss-vs-epoch curves, including any held-out monitor probes."""
    epochs = np.arange(1, len(history) + 1)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(epochs, history.recon_loss, label="reconstruction")
    ax.plot(epochs, history.g_adv_loss, label="generator adversarial")
    ax.plot(epochs, history.d_loss, label="discriminator")
    for name, values in sorted(history.monitors.items()):
        ax.plot(epochs, values, linestyle="--", label=f"monitor: {name}")
    ax.set_xlabel("epoch")
    ax.set_ylabel("loss")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_score_histogram(scores_by_label, path, title="video scores"):
    """Overlaid score histograms, one per label."""
    fig, ax = plt.subplots(figsize=(6, 4))
    for label, scores in sorted(scores_by_label.items()):
        ax.hist(scores, bins=20, alpha=0.6, label=label)
    ax.set_xlabel("score")
    ax.set_ylabel("count")
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_bench_aucs(report, path):
    """Per-class AUC bars with the mean marked."""
    classes = sorted(report.per_class_auc)
    aucs = [report.per_class_auc[c] for c in classes]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar([str(c) for c in classes], aucs)
    ax.axhline(report.mean_auc, color="k", linestyle="--",
               label=f"mean {report.mean_auc:.3f}")
    ax.set_xlabel("normal class")
    ax.set_ylabel("AUC")
    ax.set_ylim(0, 1.05)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
