"""Batch-means confidence intervals shared by the simulators."""

from __future__ import annotations

import math
import statistics

from scipy.stats import t as student_t

__all__ = ["batch_ci95"]


def batch_ci95(batch_means: list[float]) -> float:
    """95% half-width for the mean of the batch means (Student t).

    Fewer than two usable batches give an infinite half-width: the data
    cannot support an interval estimate.
    """
    k = len(batch_means)
    if k < 2:
        return math.inf
    spread = statistics.stdev(batch_means)
    if spread == 0.0:
        return 0.0
    return float(student_t.ppf(0.975, k - 1)) * spread / math.sqrt(k)
