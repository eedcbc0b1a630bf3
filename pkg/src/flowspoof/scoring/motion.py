"""Motion-judgment pre-filter for fixed (static) presentation attacks.

A video whose flow maps show no average pixel difference between randomly
sampled pairs carries no motion information and is reported spoof before
any MMD scoring.
"""

import numpy as np

from ..errors import ConfigError, DataError
from ..flowprep import FlowMapImage

DEFAULT_N_PAIRS = 10
DEFAULT_EPSILON = 2.0  # 8-bit pixel units


def motion_judgment(flow_maps, n_pairs: int = DEFAULT_N_PAIRS,
                    epsilon: float = DEFAULT_EPSILON, seed: int = 0) -> bool:
    """True when the maps differ enough, on average, to indicate motion.

    Draws ``n_pairs`` seeded random positions and compares each map with its
    successor; has_motion is (mean over pairs of mean absolute pixel
    difference) > ``epsilon`` (strict).
    """
    if n_pairs <= 0:
        raise ConfigError("n_pairs must be positive")
    if epsilon < 0:
        raise ConfigError("epsilon must be non-negative")
    maps = [m.pixels if isinstance(m, FlowMapImage) else np.asarray(m)
            for m in flow_maps]
    if len(maps) < 2:
        raise DataError("motion judgment needs >= 2 flow maps")
    rng = np.random.default_rng(seed)
    diffs = []
    for i in rng.integers(0, len(maps) - 1, size=n_pairs):
        diffs.append(np.mean(np.abs(maps[i].astype(np.float64)
                                    - maps[i + 1].astype(np.float64))))
    return float(np.mean(diffs)) > epsilon
