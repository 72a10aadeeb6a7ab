"""Multinomial-weight bootstrap resampling with reproducible substreams.

Each replicate draws integer weights from a multinomial distribution with
uniform probabilities over the sample size; resampling a transform means
expanding the weights into a resampled multiset and recomputing the
transform. Replicate k uses its own counter-based RNG substream keyed by
(seed, k), so serial and parallel execution produce bit-identical streams.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import LengthMismatchError
from .samples import PairedSample, Sample
from .transforms import (
    CurveKind,
    PiecewiseCurve,
    excess_wealth_empirical,
    scaled_ttt,
    ttt_empirical,
)

__all__ = [
    "BootstrapConfig",
    "replicate_rng",
    "draw_weights",
    "resample_values",
    "resample_transform",
    "paired_resample",
    "bootstrap_pvalue",
]

_TRANSFORMS = {
    "ttt": ttt_empirical,
    "scaled_ttt": scaled_ttt,
    "excess_wealth": excess_wealth_empirical,
}


@dataclass(frozen=True)
class BootstrapConfig:
    """Replication count, base seed and sampling scheme for a bootstrap run."""

    n_boot: int = 500
    seed: int = 0
    scheme: str = "independent"  # "independent" or "paired"

    def __post_init__(self):
        if self.n_boot < 1:
            raise ValueError("n_boot must be >= 1")
        if self.scheme not in ("independent", "paired"):
            raise ValueError(f"unknown scheme {self.scheme!r}")


def replicate_rng(seed: int, k: int, stream: int = 0) -> np.random.Generator:
    """Counter-based generator for replicate ``k`` of the run seeded by ``seed``.

    ``stream`` separates independent draws within the same replicate (e.g.
    the two weight vectors of the independent-sampling scheme).
    """
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(stream, k))
    return np.random.Generator(np.random.Philox(ss))


def draw_weights(n: int, rng: np.random.Generator) -> np.ndarray:
    """Multinomial(n; 1/n, ..., 1/n) weight vector; entries sum to n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return rng.multinomial(n, np.full(n, 1.0 / n))


def _check_weights(weights: np.ndarray, n: int) -> np.ndarray:
    weights = np.asarray(weights)
    if weights.size != n:
        raise LengthMismatchError(f"weight vector length {weights.size} != sample size {n}")
    return weights


def resample_values(values: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Expand integer weights over an array of values into the resampled multiset."""
    return np.repeat(values, _check_weights(weights, values.size))


def resample_transform(
    s: Sample, weights: np.ndarray, transform: str = "ttt", kind=CurveKind.STEP
) -> PiecewiseCurve:
    """The chosen empirical transform of the reweighted sample.

    Expanding the weights over the sorted observations keeps the multiset
    sorted, so the transform of the weighted empirical CDF is just the
    transform of the expanded sample.
    """
    try:
        fn = _TRANSFORMS[transform]
    except KeyError:
        raise ValueError(f"unknown transform {transform!r}") from None
    return fn(Sample(resample_values(s.values, weights)), kind)


def paired_resample(ps: PairedSample, weights: np.ndarray) -> tuple[Sample, Sample]:
    """Resample both coordinates with the same weights, preserving dependence."""
    weights = _check_weights(weights, ps.n)
    return (
        Sample(np.repeat(ps.x, weights)),
        Sample(np.repeat(ps.y, weights)),
    )


def bootstrap_pvalue(stat_observed: float, replicate_stats) -> float:
    """Fraction of replicate statistics strictly greater than the observed one.

    Ties count as non-exceedances, which is the conservative direction.
    """
    replicate_stats = np.asarray(replicate_stats, dtype=float)
    if replicate_stats.size < 1:
        raise ValueError("need at least one replicate statistic")
    return float(np.mean(replicate_stats > stat_observed))
