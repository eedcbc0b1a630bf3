from .plots import plot_bench_aucs, plot_score_histogram, plot_training_history

__all__ = ["plot_bench_aucs", "plot_score_histogram", "plot_training_history"]
