"""Batch command-line interface: preprocess, train, calibrate, score, bench."""

import argparse
import csv
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import cv2
import numpy as np

from . import bench as bench_mod
from . import flowprep, gan, scoring
from .config import derive_seed, load_run_config
from .errors import ConfigError, DataError, FlowSpoofError
from .report import plot_bench_aucs, plot_score_histogram, plot_training_history
from .scoring.io import (
    atomic_write_text,
    read_frame_scores_csv,
    write_frame_scores_csv,
    write_video_report_csv,
)


def read_manifest(path):
    """CSV manifest of videos: a 'path' column and an optional 'label' column."""
    entries = []
    with open(path, newline="") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None or "path" not in reader.fieldnames:
            raise ConfigError(f"{path}: manifest needs a 'path' header column")
        for row in reader:
            label = (row.get("label") or "").strip() or None
            if label is not None and label not in (scoring.LIVE, scoring.SPOOF):
                raise ConfigError(f"{path}: bad label {label!r}")
            entries.append((Path(row["path"]), label))
    if not entries:
        raise DataError(f"{path}: empty manifest")
    return entries


def _pool_map(fn, items, workers):
    if workers <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _build_kernel(cfg, reference_samples):
    if cfg.score.kernel_family == "linear":
        return scoring.KernelSpec(family="linear")
    if cfg.score.bandwidths is not None:
        return scoring.KernelSpec(family="rbf", bandwidths=cfg.score.bandwidths)
    return scoring.median_heuristic_kernel(reference_samples,
                                           factors=cfg.score.bandwidth_factors)


def _video_maps(path, cfg):
    seq = flowprep.extract_frames(path, target_fps=cfg.fps)
    return seq, scoring.flow_maps_of(seq, cfg.prep)


# ---------------------------------------------------------------- preprocess

def cmd_preprocess(cfg, videos):
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    failures = []

    def process(path):
        path = Path(path)
        try:
            seq, maps = _video_maps(path, cfg)
            video_out = out / path.stem
            video_out.mkdir(parents=True, exist_ok=True)
            batches = []
            for i, (m, (a, b)) in enumerate(
                    zip(maps, zip(seq.frames, seq.frames[1:]))):
                cv2.imwrite(str(video_out / f"flow_{i:04d}.png"),
                            cv2.cvtColor(m.pixels, cv2.COLOR_RGB2BGR))
                field = flowprep.estimate_flow(a, b, estimator=cfg.prep.estimator)
                flowprep.write_flo(field, video_out / f"flow_{i:04d}.flo")
                batches.append(flowprep.extract_patches(
                    m, window=cfg.prep.window, stride=cfg.prep.stride,
                    frame_index=i))
            flowprep.save_patch_batch(flowprep.concat_batches(batches),
                                      out / f"{path.stem}.patches.npz")
            return None
        except Exception as exc:  # isolate per-video failures
            return f"{path}: {exc}"

    for err in _pool_map(process, videos, cfg.workers):
        if err:
            failures.append(err)
            print(f"error: {err}", file=sys.stderr)
    print(f"preprocessed {len(videos) - len(failures)}/{len(videos)} videos -> {out}")
    return 1 if failures else 0


# ---------------------------------------------------------------- train

def cmd_train(cfg, containers):
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    batch = flowprep.concat_batches(
        flowprep.load_patch_batch(c) for c in containers)
    arch = gan.ArchitectureConfig(input_size=cfg.prep.window)

    def checkpoint_hook(epoch, g, d, history):
        gan.save_checkpoint(out / "checkpoint.npz", g, d, epoch=epoch,
                            loss_weights=cfg.train.loss_weights)

    g, d, history = gan.train(batch, cfg.train, arch=arch,
                              checkpoint_hook=checkpoint_hook)
    history.to_csv(out / "history.csv")
    plot_training_history(history, out / "history.png")
    print(f"trained {cfg.train.epochs} epochs; "
          f"final reconstruction loss {history.recon_loss[-1]:.4f} -> {out}")
    return 0


# ---------------------------------------------------------------- calibrate

def cmd_calibrate(cfg, checkpoint, reference_manifest, dev_manifest):
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    g, _, _ = gan.load_checkpoint(checkpoint)

    ref_videos = [flowprep.extract_frames(p, target_fps=cfg.fps)
                  for p, _ in read_manifest(reference_manifest)]
    reference = scoring.reference_distribution(
        g, ref_videos, prep=cfg.prep, score_mode=cfg.score.score_mode,
        max_samples=cfg.score.reference_max_samples,
        seed=derive_seed(cfg.seed, "reference"))
    write_frame_scores_csv(out / "reference_scores.csv", [reference])
    kernel = _build_kernel(cfg, reference.samples)

    dev = read_manifest(dev_manifest)
    if any(label is None for _, label in dev):
        raise DataError(f"{dev_manifest}: every dev video needs a label")
    dev_scores = []
    for path, label in dev:
        dist = scoring.video_distribution(
            g, flowprep.extract_frames(path, target_fps=cfg.fps),
            prep=cfg.prep, score_mode=cfg.score.score_mode)
        dev_scores.append((scoring.mmd(reference, dist, kernel), label))

    cal = scoring.calibrate_threshold(dev_scores, kernel=kernel)
    scoring.save_calibration(cal, out / "calibration.json")
    plot_score_histogram(
        {lab: [s for s, l in dev_scores if l == lab]
         for lab in (scoring.LIVE, scoring.SPOOF)},
        out / "dev_scores.png", title="dev MMD scores")
    print(f"threshold {cal.threshold:.6f}  dev FAR {cal.dev_far:.4f}  "
          f"FRR {cal.dev_frr:.4f}  HTER {cal.dev_hter:.4f}")
    return 0


# ---------------------------------------------------------------- score

def cmd_score(cfg, checkpoint, calibration, reference_csv, manifest):
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    g, _, _ = gan.load_checkpoint(checkpoint)
    cal = scoring.load_calibration(calibration)
    if cal.kernel is None:
        raise ConfigError(f"{calibration}: calibration lacks a kernel spec")
    references = read_frame_scores_csv(reference_csv)
    if len(references) != 1:
        raise ConfigError(f"{reference_csv}: expected exactly one reference pool")
    reference = scoring.ScoreDistribution(samples=references[0].samples,
                                          source_tag="reference",
                                          video_id="reference")
    entries = read_manifest(manifest)

    def process(entry):
        path, label = entry
        seq, maps = _video_maps(path, cfg)
        dist = scoring.ScoreDistribution(
            samples=[scoring.frame_score(g, m, window=cfg.prep.window,
                                         stride=cfg.prep.stride,
                                         score_mode=cfg.score.score_mode)
                     for m in maps],
            video_id=str(path))
        has_motion = True
        if cfg.score.motion_judgment:
            has_motion = scoring.motion_judgment(
                maps, n_pairs=cfg.score.motion_pairs,
                epsilon=cfg.score.motion_epsilon,
                seed=derive_seed(cfg.seed, f"motion:{path}"))
        score = scoring.mmd(reference, dist, cal.kernel)
        predicted = scoring.SPOOF if not has_motion \
            else scoring.classify_video(score, cal)
        return dist, score, has_motion, predicted, label

    results = _pool_map(process, entries, cfg.workers)
    write_frame_scores_csv(out / "frame_scores.csv", [r[0] for r in results])
    write_video_report_csv(
        out / "video_report.csv",
        [(r[0].video_id, r[1], r[2], r[3]) for r in results])

    if all(label is not None for _, label in entries):
        truth = [label for _, label in entries]
        predictions = [r[3] for r in results]
        scored = list(zip((r[1] for r in results), truth))
        # FAR/FRR over final decisions, including the motion-judgment path
        far = float(np.mean([p == scoring.LIVE
                             for p, t in zip(predictions, truth)
                             if t == scoring.SPOOF]))
        frr = float(np.mean([p == scoring.SPOOF
                             for p, t in zip(predictions, truth)
                             if t == scoring.LIVE]))
        auc = scoring.auc_score(
            live=[s for s, t in scored if t == scoring.LIVE],
            spoof=[s for s, t in scored if t == scoring.SPOOF])
        hter = (far + frr) / 2.0
        atomic_write_text(out / "metrics.csv",
                          "far,frr,hter,auc\n"
                          f"{far!r},{frr!r},{hter!r},{auc!r}\n")
        plot_score_histogram(
            {lab: [s for s, t in scored if t == lab]
             for lab in (scoring.LIVE, scoring.SPOOF)},
            out / "test_scores.png", title="test MMD scores")
        print(f"FAR {far:.4f}  FRR {frr:.4f}  HTER {hter:.4f}  AUC {auc:.4f}")
    print(f"scored {len(results)} videos -> {out}")
    return 0


# ---------------------------------------------------------------- bench

def cmd_bench(cfg):
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    train_cfg = gan.TrainingConfig(
        learning_rate=cfg.train.learning_rate,
        epochs=cfg.bench.epochs,
        batch_size=cfg.bench.batch_size,
        seed=derive_seed(cfg.seed, "bench"),
        loss_weights=cfg.train.loss_weights,
    )
    report = bench_mod.run_one_class_benchmark(
        cfg.bench.dataset, classes=cfg.bench.classes, cfg=train_cfg,
        max_train_images=cfg.bench.max_train_images,
        progress=lambda cls, auc: print(f"class {cls}: AUC {auc:.4f}"))
    report.to_csv(out / "bench.csv")
    atomic_write_text(out / "bench_summary.txt", report.summary() + "\n")
    plot_bench_aucs(report, out / "bench_auc.png")
    print(report.summary())
    return 0


# ---------------------------------------------------------------- entry point

def build_parser():
    parser = argparse.ArgumentParser(
        prog="flowspoof",
        description="One-class adversarial liveness detection on optical flow")
    parser.add_argument("--config", type=Path, help="YAML run configuration")
    parser.add_argument("--seed", type=int, help="global seed (fans out per stage)")
    parser.add_argument("--out", type=Path, help="output directory")
    parser.add_argument("--workers", type=int, help="worker pool size")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", help="videos -> flow maps + patch containers")
    p.add_argument("videos", nargs="+", type=Path)
    p.add_argument("--fps", type=int)
    p.add_argument("--estimator")
    p.add_argument("--window", type=int)
    p.add_argument("--stride", type=int)

    p = sub.add_parser("train", help="patch containers -> checkpoint + history")
    p.add_argument("--patches", nargs="+", type=Path, required=True)
    p.add_argument("--epochs", type=int)
    p.add_argument("--batch-size", type=int, dest="batch_size")
    p.add_argument("--learning-rate", type=float, dest="learning_rate")
    p.add_argument("--w-i", type=float, dest="w_i")
    p.add_argument("--w-a", type=float, dest="w_a")

    p = sub.add_parser("calibrate", help="pick the decision threshold on dev videos")
    p.add_argument("--checkpoint", type=Path, required=True)
    p.add_argument("--reference", type=Path, required=True,
                   help="manifest of live reference videos")
    p.add_argument("--dev", type=Path, required=True,
                   help="labeled dev-video manifest")

    p = sub.add_parser("score", help="score test videos against the reference")
    p.add_argument("--checkpoint", type=Path, required=True)
    p.add_argument("--calibration", type=Path, required=True)
    p.add_argument("--reference-scores", type=Path, required=True,
                   dest="reference_scores")
    p.add_argument("--manifest", type=Path, required=True)

    p = sub.add_parser("bench", help="one-class image benchmark")
    p.add_argument("--dataset")
    p.add_argument("--classes")
    p.add_argument("--epochs", type=int)
    p.add_argument("--max-train-images", type=int, dest="max_train_images")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {k: v for k, v in vars(args).items()
                 if k not in ("command", "config") and v is not None}
    try:
        cfg = load_run_config(args.config, overrides)
        if args.command == "preprocess":
            return cmd_preprocess(cfg, args.videos)
        if args.command == "train":
            return cmd_train(cfg, args.patches)
        if args.command == "calibrate":
            return cmd_calibrate(cfg, args.checkpoint, args.reference, args.dev)
        if args.command == "score":
            return cmd_score(cfg, args.checkpoint, args.calibration,
                             args.reference_scores, args.manifest)
        if args.command == "bench":
            return cmd_bench(cfg)
        raise ConfigError(f"unknown command {args.command!r}")
    except FlowSpoofError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
