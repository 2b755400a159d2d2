"""Ensemble statistics over a shot histogram.

The sampled ensemble is described by weights w_i = N_i / N.  The ensemble
average of a property is sum_i w_i * p_i with p_i evaluated once per unique
bitstring (scores are memoized by canonical form).  Purity is one minus the
fraction of distinct bitstrings among the shots.  The optimization loss is

    |p_M - p_0| + regularization,

where the regularization is lambda * (1 - sum_i w_i^2) by default: zero for
a collapsed ensemble and maximal for a uniform one, so minimizing the loss
also purifies the ensemble.  The alternative form -lambda * sum_i w_i^2
(identical argmin, shifted by the constant lambda) is available as
``reg_form="neg_sum_sq"``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .sampler import SampleHistogram

REG_FORMS = ("one_minus_sum_sq", "neg_sum_sq")


@dataclass(frozen=True)
class LossConfig:
    target: float
    reg_lambda: float = 0.0
    reg_form: str = "one_minus_sum_sq"

    def __post_init__(self):
        if self.reg_lambda < 0:
            raise ValueError("lambda must be nonnegative")
        if self.reg_form not in REG_FORMS:
            raise ValueError(f"reg_form must be one of {REG_FORMS}")


@dataclass(frozen=True)
class EnsembleStats:
    """Derived quantities of one sampled ensemble."""

    p_m: float
    purity: float
    loss: float
    unique_count: int
    shots: int
    weights: dict[str, float] = field(repr=False, default_factory=dict)


BitstringScorer = Callable[[str], float]


def ensemble_average(hist: SampleHistogram, score_of: BitstringScorer) -> float:
    """Weighted mean of per-bitstring scores under the shot weights."""
    if hist.shots < 1:
        raise ValueError("empty histogram")
    total = 0.0
    for key, count in hist.counts.items():
        total += count * score_of(key)
    return total / hist.shots


def purity(hist: SampleHistogram) -> float:
    """1 - (number of distinct bitstrings) / shots."""
    if hist.shots < 1:
        raise ValueError("empty histogram")
    return 1.0 - len(hist.counts) / hist.shots


def regularization(hist: SampleHistogram, cfg: LossConfig) -> float:
    if cfg.reg_lambda == 0.0:
        return 0.0
    sum_sq = sum((c / hist.shots) ** 2 for c in hist.counts.values())
    if cfg.reg_form == "one_minus_sum_sq":
        return cfg.reg_lambda * (1.0 - sum_sq)
    return -cfg.reg_lambda * sum_sq


def total_loss(hist: SampleHistogram, cfg: LossConfig,
               score_of: BitstringScorer) -> EnsembleStats:
    """Populates all ensemble statistics for one histogram."""
    p_m = ensemble_average(hist, score_of)
    pure = purity(hist)
    loss = abs(p_m - cfg.target) + regularization(hist, cfg)
    return EnsembleStats(
        p_m=p_m,
        purity=pure,
        loss=loss,
        unique_count=len(hist.counts),
        shots=hist.shots,
        weights=hist.weights(),
    )
