import numpy as np
import pytest

from flowspoof.errors import DataError, NumericError
from flowspoof.scoring import (
    LIVE,
    SPOOF,
    CalibrationResult,
    KernelSpec,
    auc_score,
    calibrate_threshold,
    classify_video,
    compute_metrics,
    load_calibration,
    save_calibration,
)


def labeled(live_scores, spoof_scores):
    return [(s, LIVE) for s in live_scores] + [(s, SPOOF) for s in spoof_scores]


def hter_at(live, spoof, t):
    far = np.mean(np.asarray(spoof) <= t)
    frr = np.mean(np.asarray(live) > t)
    return (far + frr) / 2.0


def sweep_oracle(live, spoof):
    """Exhaustive threshold sweep over all score values and surroundings."""
    values = sorted(set(live) | set(spoof))
    candidates = [values[0] - 1] + values \
        + [(a + b) / 2 for a, b in zip(values, values[1:])] + [values[-1] + 1]
    return min(hter_at(live, spoof, t) for t in candidates)


def auc_pairwise_oracle(live, spoof):
    total = 0.0
    for s in spoof:
        for l in live:
            if s > l:
                total += 1.0
            elif s == l:
                total += 0.5
    return total / (len(live) * len(spoof))


class TestClassify:
    def test_above_threshold_is_spoof(self):
        cal = CalibrationResult(0.5, 0.0, 0.0, 0.0)
        assert classify_video(0.9, cal) == SPOOF

    def test_equality_is_live(self):
        cal = CalibrationResult(0.5, 0.0, 0.0, 0.0)
        assert classify_video(0.5, cal) == LIVE

    def test_below_threshold_is_live(self):
        cal = CalibrationResult(0.5, 0.0, 0.0, 0.0)
        assert classify_video(0.1, cal) == LIVE

    def test_nonfinite_rejected(self):
        with pytest.raises(NumericError):
            classify_video(float("nan"), CalibrationResult(0.5, 0.0, 0.0, 0.0))


class TestCalibrate:
    def test_separable_midpoint(self):
        cal = calibrate_threshold(labeled([0.1, 0.2], [0.8, 0.9]))
        assert cal.threshold == pytest.approx(0.5)
        assert cal.dev_hter == 0.0

    def test_all_identical_chance_level(self):
        cal = calibrate_threshold(labeled([0.3, 0.3], [0.3, 0.3]))
        assert cal.dev_hter == pytest.approx(0.5)

    def test_matches_exhaustive_sweep_oracle(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            live = list(rng.normal(0.3, 0.2, 100))
            spoof = list(rng.normal(0.5, 0.2, 100))
            cal = calibrate_threshold(labeled(live, spoof))
            assert cal.dev_hter == pytest.approx(sweep_oracle(live, spoof),
                                                 abs=1e-12)

    def test_ties_break_toward_smallest_threshold(self):
        # every candidate below 0.5 separates equally; smallest wins
        cal = calibrate_threshold(labeled([0.1], [0.5, 0.9]))
        assert cal.threshold < 0.5

    def test_single_label_rejected(self):
        with pytest.raises(DataError):
            calibrate_threshold([(0.1, LIVE), (0.2, LIVE)])

    def test_unknown_label_rejected(self):
        with pytest.raises(DataError):
            calibrate_threshold([(0.1, LIVE), (0.2, "genuine")])

    def test_hter_invariant_enforced(self):
        with pytest.raises(NumericError):
            CalibrationResult(0.5, 0.2, 0.2, 0.5)

    def test_round_trip(self, tmp_path):
        cal = calibrate_threshold(labeled([0.1, 0.2], [0.8, 0.9]),
                                  kernel=KernelSpec(bandwidths=(1.0, 2.0)))
        save_calibration(cal, tmp_path / "cal.json")
        assert load_calibration(tmp_path / "cal.json") == cal

    def test_dev_rates_reproduced_by_classifier(self):
        rng = np.random.default_rng(1)
        live = list(rng.normal(0.2, 0.3, 57))
        spoof = list(rng.normal(0.6, 0.3, 43))
        cal = calibrate_threshold(labeled(live, spoof))
        far = np.mean([classify_video(s, cal) == LIVE for s in spoof])
        frr = np.mean([classify_video(s, cal) == SPOOF for s in live])
        assert far == pytest.approx(cal.dev_far, abs=1e-12)
        assert frr == pytest.approx(cal.dev_frr, abs=1e-12)


class TestMetrics:
    def test_hter_direct_substitution(self):
        # 10 spoof with 2 accepted, 10 live with 1 rejected -> FAR .2, FRR .1
        live = [0.1] * 9 + [0.9]
        spoof = [0.3, 0.4] + [0.8] * 8
        report = compute_metrics(labeled(live, spoof), threshold=0.5)
        assert report.far == pytest.approx(0.2)
        assert report.frr == pytest.approx(0.1)
        assert report.hter == pytest.approx(0.15)

    def test_separable_is_perfect(self):
        scored = labeled([0.1, 0.2, 0.3], [0.7, 0.8])
        cal = calibrate_threshold(scored)
        report = compute_metrics(scored, cal.threshold)
        assert report.auc == 1.0
        assert report.hter == 0.0

    def test_auc_matches_pairwise_oracle_exactly(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            live = list(np.round(rng.normal(size=rng.integers(2, 40)), 2))
            spoof = list(np.round(rng.normal(size=rng.integers(2, 40)), 2))
            report = compute_metrics(labeled(live, spoof), threshold=0.0)
            assert report.auc == auc_pairwise_oracle(live, spoof)

    def test_auc_invariant_under_monotone_transform(self):
        rng = np.random.default_rng(3)
        live = rng.uniform(0, 1, 30)
        spoof = rng.uniform(0, 1, 20)
        base = auc_score(live, spoof)
        assert auc_score(np.exp(live), np.exp(spoof)) == pytest.approx(base)
        assert auc_score(live ** 3 + 5, spoof ** 3 + 5) == pytest.approx(base)

    def test_counts(self):
        report = compute_metrics(labeled([0.1] * 4, [0.9] * 6), threshold=0.5)
        assert (report.n_live, report.n_spoof) == (4, 6)

    def test_single_label_rejected(self):
        with pytest.raises(DataError):
            compute_metrics([(0.5, SPOOF)], threshold=0.1)
