"""Biometric decision metrics: FAR, FRR, HTER and AUC."""

from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from ..errors import NumericError
from .calibrate import _split_scores, rates_at


@dataclass(frozen=True)
class MetricsReport:
    far: float
    frr: float
    hter: float
    auc: float
    n_live: int
    n_spoof: int

    def __post_init__(self):
        if abs(self.hter - (self.far + self.frr) / 2.0) > 1e-12:
            raise NumericError("hter must equal (far + frr)/2")


def auc_score(live, spoof) -> float:
    """Probability a random spoof outscores a random live; ties count 1/2.

    Computed from the rank-sum statistic, which equals the all-pairs count.
    """
    live = np.asarray(live, dtype=np.float64)
    spoof = np.asarray(spoof, dtype=np.float64)
    ranks = rankdata(np.concatenate([spoof, live]))
    r_spoof = ranks[: spoof.size].sum()
    u = r_spoof - spoof.size * (spoof.size + 1) / 2.0
    return float(u / (spoof.size * live.size))


def compute_metrics(test_scores, threshold: float) -> MetricsReport:
    """FAR/FRR/HTER at a fixed threshold plus threshold-free AUC.

    ``test_scores`` is a list of (score, label) with labels 'live'/'spoof';
    higher scores mean more spoof-like.
    """
    live, spoof = _split_scores(test_scores)
    far, frr = rates_at(live, spoof, threshold)
    return MetricsReport(
        far=far, frr=frr, hter=(far + frr) / 2.0,
        auc=auc_score(live, spoof),
        n_live=int(live.size), n_spoof=int(spoof.size),
    )
