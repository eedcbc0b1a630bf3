import csv

import cv2
import pytest

from flowspoof.bench import SyntheticVideoSpec, generate_synthetic_video
from flowspoof.cli import main, read_manifest
from flowspoof.errors import ConfigError
from flowspoof.gan import TrainingHistory
from flowspoof.scoring import load_calibration


def write_video_dir(root, kind, seed, n_frames=10):
    seq, label = generate_synthetic_video(
        SyntheticVideoSpec(kind=kind, n_frames=n_frames, seed=seed))
    d = root / f"{kind}_{seed:03d}"
    d.mkdir(parents=True)
    for i, frame in enumerate(seq.frames):
        cv2.imwrite(str(d / f"frame_{i:04d}.png"),
                    cv2.cvtColor(frame, cv2.COLOR_RGB2BGR))
    return d, label


def write_manifest(path, entries, labeled=True):
    with open(path, "w", newline="") as f:
        f.write("path,label\n" if labeled else "path\n")
        for d, label in entries:
            f.write(f"{d},{label}\n" if labeled else f"{d}\n")
    return path


def read_rows(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


@pytest.fixture(scope="module")
def workspace(tmp_path_factory):
    """Full pipeline on synthetic videos: preprocess -> train -> calibrate -> score."""
    root = tmp_path_factory.mktemp("cli")
    vids = root / "videos"
    train_dirs = [write_video_dir(vids, "live", s)[0] for s in range(4)]
    dev = [write_video_dir(vids, "live", 10 + s) for s in range(2)] \
        + [write_video_dir(vids, "spoof_hand", 12 + s) for s in range(2)]
    test = [write_video_dir(vids, "live", 20 + s) for s in range(2)] \
        + [write_video_dir(vids, "spoof_hand", 22)] \
        + [write_video_dir(vids, "spoof_fixed", 23)]

    cfg = root / "run.yaml"
    cfg.write_text(
        "seed: 7\n"
        "preprocess:\n  fps: 30\n  max_magnitude: 8.0\n"
        "train:\n  epochs: 3\n  batch_size: 16\n"
    )
    base = ["--config", str(cfg)]

    prep_out, train_out = root / "prep", root / "train"
    cal_out, score_out = root / "cal", root / "score"

    assert main(base + ["--out", str(prep_out), "preprocess",
                        *map(str, train_dirs)]) == 0
    patches = sorted(prep_out.glob("*.patches.npz"))
    assert main(base + ["--out", str(train_out), "train",
                        "--patches", *map(str, patches)]) == 0
    ref_manifest = write_manifest(root / "reference.csv",
                                  [(d, "live") for d in train_dirs],
                                  labeled=False)
    dev_manifest = write_manifest(root / "dev.csv", dev)
    assert main(base + ["--out", str(cal_out), "calibrate",
                        "--checkpoint", str(train_out / "checkpoint.npz"),
                        "--reference", str(ref_manifest),
                        "--dev", str(dev_manifest)]) == 0
    test_manifest = write_manifest(root / "test.csv", test)
    score_args = base + ["--out", str(score_out), "score",
                         "--checkpoint", str(train_out / "checkpoint.npz"),
                         "--calibration", str(cal_out / "calibration.json"),
                         "--reference-scores",
                         str(cal_out / "reference_scores.csv"),
                         "--manifest", str(test_manifest)]
    assert main(score_args) == 0
    return {"root": root, "prep": prep_out, "train": train_out,
            "cal": cal_out, "score": score_out, "train_dirs": train_dirs,
            "test": test, "score_args": score_args, "base": base}


class TestPreprocess:
    def test_per_video_outputs(self, workspace):
        for d in workspace["train_dirs"]:
            maps = sorted((workspace["prep"] / d.name).glob("flow_*.png"))
            flos = sorted((workspace["prep"] / d.name).glob("flow_*.flo"))
            assert len(maps) == len(flos) == 9  # 10 frames -> 9 flow fields
            assert (workspace["prep"] / f"{d.name}.patches.npz").exists()

    def test_bad_video_is_isolated(self, workspace, tmp_path):
        good = workspace["train_dirs"][0]
        rc = main(workspace["base"]
                  + ["--out", str(tmp_path), "preprocess",
                     str(good), str(tmp_path / "does_not_exist")])
        assert rc == 1
        assert (tmp_path / f"{good.name}.patches.npz").exists()


class TestTrain:
    def test_artifacts(self, workspace):
        out = workspace["train"]
        assert (out / "checkpoint.npz").exists()
        assert (out / "history.png").exists()
        history = TrainingHistory.from_csv(out / "history.csv")
        assert len(history.recon_loss) == 3


class TestCalibrate:
    def test_artifacts_and_round_trip(self, workspace):
        out = workspace["cal"]
        cal = load_calibration(out / "calibration.json")
        assert cal.kernel is not None
        assert 0.0 <= cal.dev_hter <= 0.5
        assert (out / "reference_scores.csv").exists()
        assert (out / "dev_scores.png").exists()

    def test_unlabeled_dev_rejected(self, workspace, tmp_path):
        bad = write_manifest(tmp_path / "dev.csv",
                             [(d, "") for d in workspace["train_dirs"]],
                             labeled=False)
        rc = main(workspace["base"]
                  + ["--out", str(tmp_path), "calibrate",
                     "--checkpoint", str(workspace["train"] / "checkpoint.npz"),
                     "--reference", str(workspace["root"] / "reference.csv"),
                     "--dev", str(bad)])
        assert rc == 2


class TestScore:
    def test_report_covers_manifest(self, workspace):
        rows = read_rows(workspace["score"] / "video_report.csv")
        assert len(rows) == len(workspace["test"])
        assert all(r["label"] in ("live", "spoof") for r in rows)

    def test_static_video_fails_motion_judgment(self, workspace):
        rows = read_rows(workspace["score"] / "video_report.csv")
        fixed = [r for r in rows if "spoof_fixed" in r["video_id"]]
        assert len(fixed) == 1
        assert fixed[0]["has_motion"] == "false"
        assert fixed[0]["label"] == "spoof"

    def test_metrics_emitted_for_labeled_manifest(self, workspace):
        rows = read_rows(workspace["score"] / "metrics.csv")
        assert set(rows[0]) == {"far", "frr", "hter", "auc"}
        assert (workspace["score"] / "test_scores.png").exists()
        assert (workspace["score"] / "frame_scores.csv").exists()

    def test_rerun_is_byte_identical(self, workspace, tmp_path):
        args = list(workspace["score_args"])
        args[args.index("--out") + 1] = str(tmp_path)
        assert main(args) == 0
        for name in ("video_report.csv", "frame_scores.csv", "metrics.csv"):
            assert (tmp_path / name).read_bytes() \
                == (workspace["score"] / name).read_bytes()


class TestBench:
    def test_digits_smoke(self, tmp_path):
        rc = main(["--out", str(tmp_path), "bench", "--dataset", "digits",
                   "--classes", "0", "--epochs", "2",
                   "--max-train-images", "40"])
        assert rc == 0
        lines = (tmp_path / "bench.csv").read_text().splitlines()
        assert lines[0] == "class,auc"
        assert lines[-1].startswith("mean,")
        assert (tmp_path / "bench_summary.txt").exists()
        assert (tmp_path / "bench_auc.png").exists()

    def test_unknown_dataset_exits_2(self, tmp_path, capsys):
        rc = main(["--out", str(tmp_path), "bench", "--dataset", "svhn"])
        assert rc == 2
        assert "svhn" in capsys.readouterr().err


class TestConfigHandling:
    def test_bad_estimator_fails_fast(self, tmp_path, capsys):
        cfg = tmp_path / "bad.yaml"
        cfg.write_text("preprocess:\n  estimator: deepflow9000\n")
        rc = main(["--config", str(cfg), "--out", str(tmp_path),
                   "bench", "--dataset", "digits"])
        assert rc == 2
        assert "deepflow9000" in capsys.readouterr().err

    def test_manifest_requires_path_column(self, tmp_path):
        bad = tmp_path / "m.csv"
        bad.write_text("video,label\nx,live\n")
        with pytest.raises(ConfigError):
            read_manifest(bad)

    def test_manifest_rejects_unknown_label(self, tmp_path):
        bad = tmp_path / "m.csv"
        bad.write_text("path,label\nx,genuine\n")
        with pytest.raises(ConfigError):
            read_manifest(bad)
