import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flowspoof.errors import ConfigError, DataError, NumericError
from flowspoof.scoring import (
    KernelSpec,
    ScoreDistribution,
    median_heuristic_kernel,
    mmd,
)


def dist(samples, tag="test"):
    return ScoreDistribution(samples=np.asarray(samples, float), source_tag=tag)


def mmd_loop_oracle(a, b, kernel: KernelSpec):
    """Brute-force scalar-loop V-statistic, independent of the gram path."""
    def k(x, y):
        if kernel.family == "linear":
            return x * y
        return sum(w * math.exp(-((x - y) ** 2) / (2 * h * h))
                   for w, h in zip(kernel.mixture_weights, kernel.bandwidths))

    kaa = sum(k(x, y) for x in a for y in a) / (len(a) ** 2)
    kbb = sum(k(x, y) for x in b for y in b) / (len(b) ** 2)
    kab = sum(k(x, y) for x in a for y in b) / (len(a) * len(b))
    return math.sqrt(max(kaa - 2 * kab + kbb, 0.0))


class TestKernelSpec:
    def test_default_equal_mixture(self):
        spec = KernelSpec(bandwidths=(1.0, 2.0))
        assert spec.mixture_weights == (0.5, 0.5)

    def test_bad_family(self):
        with pytest.raises(ConfigError):
            KernelSpec(family="polynomial")

    def test_bad_bandwidth(self):
        with pytest.raises(ConfigError):
            KernelSpec(bandwidths=(0.0,))

    def test_nonconvex_weights(self):
        with pytest.raises(ConfigError):
            KernelSpec(bandwidths=(1.0, 2.0), mixture_weights=(0.7, 0.7))

    def test_round_trip(self):
        spec = KernelSpec(bandwidths=(0.5, 2.0))
        assert KernelSpec.from_dict(spec.to_dict()) == spec


class TestMedianHeuristic:
    def test_bandwidths_scale_with_median(self):
        samples = np.array([0.0, 1.0, 2.0, 10.0])
        diffs = np.abs(samples[:, None] - samples[None, :])
        med = float(np.median(diffs[np.triu_indices(4, k=1)]))
        spec = median_heuristic_kernel(samples)
        assert spec.bandwidths == tuple(f * med for f in (0.5, 1, 2, 4, 8))

    def test_degenerate_falls_back_to_unit(self):
        spec = median_heuristic_kernel(np.zeros(5))
        assert spec.bandwidths == (0.5, 1.0, 2.0, 4.0, 8.0)

    def test_too_few_samples(self):
        with pytest.raises(DataError):
            median_heuristic_kernel([1.0])


class TestMMD:
    def test_identical_lists_zero(self):
        a = dist([0.1, 0.4, 0.4, 2.0])
        assert mmd(a, dist(a.samples)) <= 1e-12

    def test_linear_kernel_single_points(self):
        assert mmd(dist([1.0]), dist([4.0]), KernelSpec(family="linear")) \
            == pytest.approx(3.0, abs=1e-12)

    def test_matches_loop_oracle_rbf_mixture(self):
        rng = np.random.default_rng(0)
        a = rng.exponential(size=50)
        b = rng.exponential(scale=2.0, size=50)
        kernel = KernelSpec(bandwidths=(0.5, 1.0, 3.0))
        assert mmd(dist(a), dist(b), kernel) == \
            pytest.approx(mmd_loop_oracle(a, b, kernel), abs=1e-10)

    def test_matches_loop_oracle_linear(self):
        rng = np.random.default_rng(1)
        a, b = rng.uniform(0, 3, 20), rng.uniform(0, 3, 35)
        kernel = KernelSpec(family="linear")
        assert mmd(dist(a), dist(b), kernel) == \
            pytest.approx(mmd_loop_oracle(a, b, kernel), abs=1e-10)

    def test_symmetry(self):
        rng = np.random.default_rng(2)
        a, b = dist(rng.uniform(size=30)), dist(rng.uniform(1, 2, 40))
        kernel = KernelSpec(bandwidths=(1.0, 2.0))
        assert abs(mmd(a, b, kernel) - mmd(b, a, kernel)) <= 1e-12

    def test_linear_equals_mean_gap(self):
        rng = np.random.default_rng(3)
        a, b = rng.uniform(0, 5, 17), rng.uniform(0, 5, 23)
        got = mmd(dist(a), dist(b), KernelSpec(family="linear"))
        assert got == pytest.approx(abs(a.mean() - b.mean()), abs=1e-10)

    def test_translation_invariance_rbf(self):
        rng = np.random.default_rng(4)
        a, b = rng.uniform(0, 1, 25), rng.uniform(0, 1, 30)
        kernel = KernelSpec(bandwidths=(0.7, 1.3))
        base = mmd(dist(a), dist(b), kernel)
        shifted = mmd(dist(a + 5.0), dist(b + 5.0), kernel)
        assert shifted == pytest.approx(base, abs=1e-10)
        # the median-heuristic default is translation-invariant too
        assert mmd(dist(a + 5.0), dist(b + 5.0)) == \
            pytest.approx(mmd(dist(a), dist(b)), abs=1e-10)

    def test_empty_rejected(self):
        with pytest.raises(DataError):
            ScoreDistribution(samples=np.array([]))

    def test_negative_scores_rejected(self):
        with pytest.raises(NumericError):
            ScoreDistribution(samples=np.array([-0.5, 1.0]))

    @given(st.integers(0, 10_000))
    @settings(max_examples=200, deadline=None)
    def test_property_nonneg_symmetric_selfzero(self, seed):
        rng = np.random.default_rng(seed)
        a = dist(rng.uniform(0, 3, rng.integers(1, 30)))
        b = dist(rng.uniform(0, 3, rng.integers(1, 30)))
        kernel = KernelSpec(bandwidths=tuple(rng.uniform(0.2, 3, 3)))
        ab = mmd(a, b, kernel)
        assert ab >= 0.0
        assert abs(ab - mmd(b, a, kernel)) <= 1e-12
        assert mmd(a, dist(a.samples), kernel) <= 1e-12
