"""Convergence and efficiency diagnostics for chain-separated draws.

Both statistics work on split chains: each chain is halved, so m chains
of length N become 2m sequences of length n = floor(N / 2) (the middle
draw is dropped when N is odd). Splitting makes a trending single chain
show up as between-sequence disagreement.

Reductions across sequences use exact summation, so relabeling chains
permutes intermediate terms without changing either statistic, bit for
bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .draws import ParameterView
from .errors import TooFewIterations, ZeroWithinVariance


@dataclass(frozen=True)
class Diagnostics:
    """Split R-hat and effective sample size for one parameter."""

    parameter: str
    rhat: float
    ess: float


def _split_sequences(per_chain: np.ndarray) -> np.ndarray:
    iterations = per_chain.shape[1]
    if iterations < 4:
        raise TooFewIterations(
            f"need >= 4 iterations per chain so each split half has >= 2, got {iterations}"
        )
    half = iterations // 2
    return np.concatenate([per_chain[:, :half], per_chain[:, iterations - half :]], axis=0)


def _mean_over_sequences(terms: np.ndarray) -> float:
    return math.fsum(terms) / len(terms)


def split_rhat(v: ParameterView) -> float:
    """Potential scale reduction factor over split chains.

    With 2m split sequences of length n, let W be the mean of the
    per-sequence variances (denominator n - 1) and B = n * variance of
    the sequence means (denominator 2m - 1). The statistic is

        sqrt(((n - 1) / n * W + B / n) / W)

    which is exactly sqrt((n - 1) / n) when every sequence mean agrees,
    and grows past 1 as the sequences disagree.

    Raises
    ------
    TooFewIterations
        Fewer than 4 iterations per chain.
    ZeroWithinVariance
        Every split sequence is constant, so the ratio is undefined; a
        constant chain indicates a broken sampler rather than perfect
        convergence.
    """
    seqs = _split_sequences(v.per_chain)
    n = seqs.shape[1]
    within = _mean_over_sequences(seqs.var(axis=1, ddof=1))
    if within == 0.0:
        raise ZeroWithinVariance(v.name)
    means = seqs.mean(axis=1)
    grand = _mean_over_sequences(means)
    between = n * math.fsum((m - grand) ** 2 for m in means) / (len(means) - 1)
    var_plus = (n - 1) / n * within + between / n
    return math.sqrt(var_plus / within)


def ess(v: ParameterView) -> float:
    """Effective sample size from averaged split-chain autocovariances.

    Autocovariances are computed per split sequence around that
    sequence's own mean, averaged across sequences, and normalized by
    the averaged lag-0 value. Lags are summed in adjacent pairs and the
    sum is truncated at the first negative pair (the initial-positive-
    sequence rule), giving

        ESS = (2m * n) / (1 + 2 * sum of retained correlations)

    clamped to [1, 2m * n]. A constant input returns the clamped minimum
    of 1 instead of failing on the zero lag-0 autocovariance.

    Raises :class:`TooFewIterations` for chains shorter than 4.
    """
    seqs = _split_sequences(v.per_chain)
    n_seq, n = seqs.shape
    total = n_seq * n
    centered = seqs - seqs.mean(axis=1, keepdims=True)

    def gamma(lag: int) -> float:
        if lag >= n:
            return 0.0
        prod = centered[:, : n - lag] * centered[:, lag:]
        return _mean_over_sequences(prod.sum(axis=1)) / n

    gamma0 = gamma(0)
    if gamma0 == 0.0:
        return 1.0

    # Pair lags (0,1), (2,3), ... and stop at the first negative pair.
    tau = 0.0
    k = 0
    while 2 * k < n:
        pair = gamma(2 * k) / gamma0 + gamma(2 * k + 1) / gamma0
        if pair < 0.0:
            break
        tau += 2.0 * pair
        k += 1
    tau -= 1.0

    if tau <= 0.0:
        return float(total)
    return float(min(max(total / tau, 1.0), total))


def diagnose(v: ParameterView) -> Diagnostics:
    """Convenience wrapper computing both statistics for one parameter."""
    return Diagnostics(parameter=v.name, rhat=split_rhat(v), ess=ess(v))
