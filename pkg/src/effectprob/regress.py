"""Bayesian linear regression of an outcome on a binary treatment.

Model: y_i ~ Normal(b0 + b1 * d_i, sigma) with independent normal priors
on the intercept b0 and treatment effect b1 and an exponential prior on
the residual scale sigma.

The sampler is Gibbs-within-slice: (b0, b1) are drawn jointly from their
exact bivariate-normal full conditional given sigma (normal likelihood
times independent normal priors is conditionally conjugate), then sigma
is updated by slice sampling on log(sigma). Both updates work from
sufficient statistics accumulated in one pass over the data, so an
iteration costs O(1) and the result depends on the data only through
permutation-invariant totals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .diagnostics import Diagnostics, diagnose
from .draws import Draws, validate, view
from .errors import (
    DegenerateDesign,
    InvalidArgument,
    InvalidSigma,
    NonBinaryTreatment,
    NonFiniteData,
)

_SLICE_WIDTH = 1.0
_SLICE_MAX_STEPOUTS = 50


@dataclass(frozen=True)
class PriorSpec:
    """Prior hyperparameters: two normals and one exponential rate."""

    beta0_mean: float = 50.0
    beta0_sd: float = 20.0
    beta1_mean: float = 0.0
    beta1_sd: float = 5.0
    sigma_rate: float = 0.5

    def __post_init__(self) -> None:
        if not (self.beta0_sd > 0 and self.beta1_sd > 0 and self.sigma_rate > 0):
            raise InvalidArgument("prior sds and the exponential rate must be positive")


@dataclass(frozen=True)
class ModelSpec:
    """Sampler protocol: chains, iterations, warmup, seed, column names.

    Defaults are 4 chains of 10,000 iterations with the first 1,000
    discarded. Chain c draws from an independent stream derived from
    ``(seed, c)``, so a fit is bit-reproducible from the spec alone.
    """

    priors: PriorSpec = field(default_factory=PriorSpec)
    chains: int = 4
    iterations: int = 10_000
    warmup: int = 1_000
    seed: int = 0
    outcome_column: str = "outcome"
    treatment_column: str = "treatment"

    def __post_init__(self) -> None:
        if self.chains < 1:
            raise InvalidArgument(f"chains must be >= 1, got {self.chains}")
        if self.warmup < 0 or self.warmup >= self.iterations:
            raise InvalidArgument(
                f"need 0 <= warmup < iterations, got warmup={self.warmup}, "
                f"iterations={self.iterations}"
            )


@dataclass(frozen=True, eq=False)
class Dataset:
    """Experimental data: a real outcome and a 0/1 treatment per unit."""

    outcome: np.ndarray
    treatment: np.ndarray

    def __post_init__(self) -> None:
        outcome = np.asarray(self.outcome, dtype=float)
        treatment = np.asarray(self.treatment)
        if outcome.ndim != 1 or treatment.ndim != 1 or len(outcome) != len(treatment):
            raise InvalidArgument("outcome and treatment must be equal-length vectors")
        if len(outcome) < 3:
            raise InvalidArgument(f"need at least 3 units, got {len(outcome)}")
        if not np.isin(treatment, (0, 1)).all():
            raise NonBinaryTreatment("treatment values must be 0 or 1")
        if not np.isfinite(outcome).all():
            raise NonFiniteData("outcome contains NaN or infinite values")
        treatment = treatment.astype(np.int64)
        outcome.setflags(write=False)
        treatment.setflags(write=False)
        object.__setattr__(self, "outcome", outcome)
        object.__setattr__(self, "treatment", treatment)

    @property
    def n(self) -> int:
        return len(self.outcome)


@dataclass(frozen=True)
class ChainStats:
    """Per-chain slice-sampler effort, averaged over iterations."""

    chain: int
    slice_evals_per_iteration: float
    stepouts_per_iteration: float


@dataclass(frozen=True, eq=False)
class FitResult:
    """Posterior draws, per-parameter diagnostics, per-chain sampler stats."""

    draws: Draws
    diagnostics: dict[str, Diagnostics]
    chain_stats: tuple[ChainStats, ...]


class _SuffStats:
    """One-pass totals the conditional updates need.

    Sums use exact (fsum) accumulation so that any permutation of the
    rows yields bit-identical statistics, hence bit-identical chains.
    """

    __slots__ = ("n", "n_treated", "sum_y", "sum_y_treated", "sum_sq", "sum_sq_treated")

    def __init__(self, n, n_treated, sum_y, sum_y_treated, sum_sq, sum_sq_treated):
        self.n = n
        self.n_treated = n_treated
        self.sum_y = sum_y
        self.sum_y_treated = sum_y_treated
        self.sum_sq = sum_sq
        self.sum_sq_treated = sum_sq_treated

    @classmethod
    def from_dataset(cls, data: Dataset) -> "_SuffStats":
        treated = data.treatment == 1
        y = data.outcome
        y_sq = y * y
        return cls(
            n=int(data.n),
            n_treated=int(np.count_nonzero(treated)),
            sum_y=math.fsum(y),
            sum_y_treated=math.fsum(y[treated]),
            sum_sq=math.fsum(y_sq),
            sum_sq_treated=math.fsum(y_sq[treated]),
        )

    @classmethod
    def empty(cls) -> "_SuffStats":
        return cls(0, 0, 0.0, 0.0, 0.0, 0.0)

    def ssr(self, beta0: float, beta1: float) -> float:
        """Sum of squared residuals at (beta0, beta1), in O(1)."""
        n_ctrl = self.n - self.n_treated
        s1_ctrl = self.sum_y - self.sum_y_treated
        s2_ctrl = self.sum_sq - self.sum_sq_treated
        mu_trt = beta0 + beta1
        ctrl = s2_ctrl - 2.0 * beta0 * s1_ctrl + n_ctrl * beta0 * beta0
        trt = self.sum_sq_treated - 2.0 * mu_trt * self.sum_y_treated + self.n_treated * mu_trt * mu_trt
        return ctrl + trt


def simulate_experiment(
    n: int, beta0: float, beta1: float, resid_sd: float, seed: int
) -> Dataset:
    """Synthesize a balanced two-arm experiment.

    floor(n / 2) units are randomly assigned to treatment; outcomes are
    ``beta0 + beta1 * d + Normal(0, resid_sd)`` noise. Deterministic for
    a given seed.
    """
    n = int(n)
    if n < 3:
        raise InvalidArgument(f"need n >= 3 to form a dataset, got {n}")
    if not resid_sd > 0:
        raise InvalidArgument(f"resid_sd must be positive, got {resid_sd!r}")
    rng = np.random.default_rng(seed)
    treatment = np.zeros(n, dtype=np.int64)
    treatment[: n // 2] = 1
    treatment = rng.permutation(treatment)
    outcome = beta0 + beta1 * treatment + rng.normal(0.0, resid_sd, size=n)
    return Dataset(outcome=outcome, treatment=treatment)


def log_posterior(
    data: Dataset, priors: PriorSpec, beta0: float, beta1: float, sigma: float
) -> float:
    """Joint log density of data and parameters, constants included.

    Sum of the normal log-likelihood over units plus the three log-prior
    terms. Raises :class:`InvalidSigma` unless ``sigma`` is positive and
    finite.
    """
    if not (math.isfinite(sigma) and sigma > 0):
        raise InvalidSigma(f"sigma must be positive and finite, got {sigma!r}")
    resid = data.outcome - (beta0 + beta1 * data.treatment)
    n = data.n
    loglik = -0.5 * n * math.log(2.0 * math.pi) - n * math.log(sigma) - float(
        resid @ resid
    ) / (2.0 * sigma * sigma)
    lp = loglik
    lp += _normal_logpdf(beta0, priors.beta0_mean, priors.beta0_sd)
    lp += _normal_logpdf(beta1, priors.beta1_mean, priors.beta1_sd)
    lp += math.log(priors.sigma_rate) - priors.sigma_rate * sigma
    return lp


def _normal_logpdf(x: float, mean: float, sd: float) -> float:
    z = (x - mean) / sd
    return -0.5 * math.log(2.0 * math.pi) - math.log(sd) - 0.5 * z * z


def fit(
    data: Dataset | None,
    spec: ModelSpec,
    *,
    fixed_sigma: float | None = None,
    prior_only: bool = False,
) -> FitResult:
    """Run the Gibbs-within-slice sampler and assemble post-warmup draws.

    Each chain is initialized from the priors and advanced for
    ``spec.iterations`` iterations; the first ``spec.warmup`` are
    discarded. Chains use independent RNG streams seeded from
    ``(spec.seed, chain_index)``, so identical inputs give bit-identical
    results.

    Two test modes bypass parts of the kernel:

    - ``fixed_sigma`` holds the residual scale constant, making each
      (b0, b1) draw an exact sample from the conjugate posterior; the
      constant scale is omitted from the emitted draws.
    - ``prior_only`` drops the likelihood entirely (``data`` may be
      None), so the kernel should reproduce the priors.

    Raises
    ------
    DegenerateDesign
        All units share one arm, leaving the effect unidentified.
    InvalidSigma
        ``fixed_sigma`` is not a positive finite number.
    """
    if prior_only:
        stats = _SuffStats.empty()
    else:
        if data is None:
            raise InvalidArgument("data is required unless prior_only=True")
        arms = np.unique(data.treatment)
        if len(arms) < 2:
            raise DegenerateDesign(
                f"all {data.n} units are in arm {int(arms[0])}; the effect is unidentified"
            )
        stats = _SuffStats.from_dataset(data)
    if fixed_sigma is not None and not (math.isfinite(fixed_sigma) and fixed_sigma > 0):
        raise InvalidSigma(f"fixed_sigma must be positive and finite, got {fixed_sigma!r}")

    kept = spec.iterations - spec.warmup
    names = ("beta0", "beta1") if fixed_sigma is not None else ("beta0", "beta1", "sigma")
    values = np.empty((len(names), spec.chains, kept))
    chain_stats = []
    for c in range(spec.chains):
        rng = np.random.default_rng([spec.seed, c])
        out, evals, stepouts = _run_chain(stats, spec, rng, fixed_sigma)
        values[:, c, :] = out[: len(names)]
        chain_stats.append(
            ChainStats(chain=c, slice_evals_per_iteration=evals, stepouts_per_iteration=stepouts)
        )

    draws = validate({name: values[i] for i, name in enumerate(names)})
    diagnostics = {name: diagnose(view(draws, name)) for name in names}
    return FitResult(draws=draws, diagnostics=diagnostics, chain_stats=tuple(chain_stats))


def _run_chain(
    stats: _SuffStats,
    spec: ModelSpec,
    rng: np.random.Generator,
    fixed_sigma: float | None,
) -> tuple[np.ndarray, float, float]:
    priors = spec.priors
    prec0 = 1.0 / (priors.beta0_sd * priors.beta0_sd)
    prec1 = 1.0 / (priors.beta1_sd * priors.beta1_sd)

    if fixed_sigma is not None:
        sigma = fixed_sigma
    else:
        sigma = rng.exponential(1.0 / priors.sigma_rate)
        while sigma == 0.0:
            sigma = rng.exponential(1.0 / priors.sigma_rate)
    log_sigma = math.log(sigma)

    kept = spec.iterations - spec.warmup
    out = np.empty((3, kept))
    total_evals = 0
    total_stepouts = 0
    for i in range(spec.iterations):
        beta0, beta1 = _draw_coefficients(stats, priors, prec0, prec1, sigma, rng)
        if fixed_sigma is None:
            ssr = stats.ssr(beta0, beta1)
            log_sigma, evals, stepouts = _slice_log_sigma(
                log_sigma, stats.n, ssr, priors.sigma_rate, rng
            )
            sigma = math.exp(log_sigma)
            total_evals += evals
            total_stepouts += stepouts
        if i >= spec.warmup:
            j = i - spec.warmup
            out[0, j] = beta0
            out[1, j] = beta1
            out[2, j] = sigma
    return out, total_evals / spec.iterations, total_stepouts / spec.iterations


def _draw_coefficients(
    stats: _SuffStats,
    priors: PriorSpec,
    prec0: float,
    prec1: float,
    sigma: float,
    rng: np.random.Generator,
) -> tuple[float, float]:
    """Exact draw from the bivariate-normal full conditional of (b0, b1).

    Posterior precision is X'X / sigma^2 + prior precision; with a binary
    treatment X'X reduces to [[n, n1], [n1, n1]], so everything is scalar
    2x2 algebra: solve for the mean, Cholesky the precision, and apply
    the inverse-transpose factor to a standard normal pair.
    """
    inv_s2 = 1.0 / (sigma * sigma)
    a = stats.n * inv_s2 + prec0
    b = stats.n_treated * inv_s2
    c = stats.n_treated * inv_s2 + prec1
    e0 = stats.sum_y * inv_s2 + priors.beta0_mean * prec0
    e1 = stats.sum_y_treated * inv_s2 + priors.beta1_mean * prec1
    det = a * c - b * b
    mu0 = (c * e0 - b * e1) / det
    mu1 = (a * e1 - b * e0) / det
    l11 = math.sqrt(a)
    l21 = b / l11
    l22 = math.sqrt(c - l21 * l21)
    z0, z1 = rng.standard_normal(2)
    x1 = z1 / l22
    x0 = (z0 - l21 * x1) / l11
    return mu0 + x0, mu1 + x1


def _log_sigma_target(u: float, n: int, ssr: float, rate: float) -> float:
    """Log density of u = log(sigma) under the conditional of sigma.

    p(sigma | rest) is proportional to sigma^(-n) * exp(-ssr / (2 sigma^2))
    * exp(-rate * sigma); the change of variables adds +u, giving
    -(n - 1) u - ssr / (2 e^(2u)) - rate e^u.
    """
    if u > 700.0:
        return -math.inf
    sigma = math.exp(u)
    value = -(n - 1.0) * u - rate * sigma
    if ssr > 0.0:
        two_u = math.exp(2.0 * u) if u > -360.0 else 0.0
        if two_u == 0.0:
            return -math.inf
        value -= ssr / (2.0 * two_u)
    return value


def _slice_log_sigma(
    u0: float, n: int, ssr: float, rate: float, rng: np.random.Generator
) -> tuple[float, int, int]:
    """One slice-sampling update of log(sigma): step out, then shrink."""
    evals = 0

    def target(u: float) -> float:
        nonlocal evals
        evals += 1
        return _log_sigma_target(u, n, ssr, rate)

    log_height = _log_sigma_target(u0, n, ssr, rate) - rng.standard_exponential()
    evals += 1

    width = _SLICE_WIDTH
    left = u0 - width * rng.uniform()
    right = left + width
    # Randomly allocate the step-out budget between the two directions.
    budget_left = int(_SLICE_MAX_STEPOUTS * rng.uniform())
    budget_right = (_SLICE_MAX_STEPOUTS - 1) - budget_left
    stepouts = 0
    while budget_left > 0 and target(left) > log_height:
        left -= width
        budget_left -= 1
        stepouts += 1
    while budget_right > 0 and target(right) > log_height:
        right += width
        budget_right -= 1
        stepouts += 1

    while True:
        if right - left < 1e-15 * (abs(u0) + 1.0):
            return u0, evals, stepouts
        u1 = rng.uniform(left, right)
        if target(u1) > log_height:
            return u1, evals, stepouts
        if u1 < u0:
            left = u1
        else:
            right = u1
