"""Jackknife confidence intervals, permutation independence tests, power.

The sampling variance of the Gini correlation estimate has a closed
asymptotic form that depends on the unknown class distributions, so the
standard error is estimated by the delete-one jackknife instead:

    SE = sqrt((n-1)/n * sum_i (r_(-i) - rbar)^2),

with r_(-i) the estimate recomputed without observation i. Independence is
tested by permutation: the label column is reshuffled M times with seeded,
replicate-indexed generator streams, the statistic recomputed each time, and
the p-value taken as (1 + #{replicates >= observed}) / (M + 1). The add-one
convention keeps p-values strictly positive; the critical value is the
ceiling-rank empirical (1-gamma) quantile of the replicates. Given a target
correlation rho0, the normal-approximation power of the test is
1 - Phi((q_gamma - rho0) / SE).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist
from scipy.special import ndtr, ndtri

from .data import (
    DataValidationError,
    DegenerateDataError,
    LabeledDataset,
    check_alpha,
    check_kind,
)
from .distance import _FULL_MATRIX_N, _u_centered, _unbiased_sums_chunked
from .gmd import _pair_mean, _pair_sum, _powered, _sorted_pair_sum
from .correlation import gcor

__all__ = [
    "JackknifeInterval",
    "PermutationTestResult",
    "jackknife_ci",
    "permutation_test",
    "power_at",
]

_STATISTICS = {"gcor": "gcor", "dcor": "dcor-unbiased", "dcor-unbiased": "dcor-unbiased"}


@dataclass(frozen=True)
class JackknifeInterval:
    """Normal-approximation confidence interval from delete-one estimates.

    ``lower``/``upper`` are estimate -/+ z * se, truncated to [0, 1] for
    reporting (the target correlation lives there). ``loo_estimates`` keeps
    the n delete-one recomputations for auditing.
    """

    estimate: float
    se: float
    level: float
    lower: float
    upper: float
    loo_estimates: np.ndarray


@dataclass(frozen=True)
class PermutationTestResult:
    """Observed statistic, permutation replicates and the derived quantities."""

    observed: float
    replicates: np.ndarray
    p_value: float
    critical_value: float
    gamma: float
    seed: int
    statistic: str
    power: float | None = None


def _resolve_seed(seed) -> int:
    if seed is None:
        return int.from_bytes(os.urandom(8), "big")
    s = int(seed)
    if s < 0:
        raise DataValidationError("seed must be a nonnegative integer")
    return s


def _replicate_rng(seed: int, replicate: int) -> np.random.Generator:
    # one independent stream per replicate index: results do not depend on
    # how replicates are scheduled or batched
    return np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(replicate,))
    )


def jackknife_ci(
    dataset: LabeledDataset,
    alpha: float = 1.0,
    kind: str = "v",
    level: float = 0.95,
) -> JackknifeInterval:
    """Jackknife standard error and confidence interval for the Gini correlation.

    Each leave-one-out estimate is a full recomputation of ``gcor`` on the
    reduced dataset, so the reported ``loo_estimates`` match direct subset
    recomputation bit for bit.

    Parameters
    ----------
    dataset : LabeledDataset
        Every class needs at least 2 members for kind 'v' (3 for 'u') so
        that deleting any single observation leaves a valid dataset.
    alpha : float
        Distance exponent.
    kind : {'v', 'u'}
        Estimator kind passed through to ``gcor``.
    level : float
        Confidence level in (0, 1), e.g. 0.95.
    """
    alpha = check_alpha(alpha)
    kind = check_kind(kind)
    if not 0.0 < level < 1.0:
        raise DataValidationError(f"level must be in (0, 1), got {level!r}")
    min_count = int(dataset.groups.counts.min())
    needed = 2 if kind == "v" else 3
    if min_count < needed:
        raise DataValidationError(
            f"jackknife with kind '{kind}' needs every class to have at least "
            f"{needed} members (smallest has {min_count})"
        )
    n = dataset.n_observations
    estimate = gcor(dataset, alpha, kind).estimate
    loo = np.empty(n)
    for i in range(n):
        loo[i] = gcor(dataset.drop_row(i), alpha, kind).estimate
    se = float(np.sqrt((n - 1) / n * np.sum((loo - loo.mean()) ** 2)))
    z = float(ndtri(1.0 - (1.0 - level) / 2.0))
    loo.flags.writeable = False
    return JackknifeInterval(
        estimate=estimate,
        se=se,
        level=level,
        lower=max(0.0, estimate - z * se),
        upper=min(1.0, estimate + z * se),
        loo_estimates=loo,
    )


class _GcorSortedEngine:
    """Gini correlation under label permutation, d=1 / alpha=1 fast path.

    The pooled GMD is permutation invariant; only the within-class terms
    move, each an O(m log m) sorted pair sum.
    """

    def __init__(self, dataset: LabeledDataset):
        self.col = dataset.features[:, 0]
        self.n = dataset.n_observations
        self.counts = dataset.groups.counts
        self.total = _pair_mean(_sorted_pair_sum(self.col), self.n, "v")
        if self.total <= 0.0:
            raise DegenerateDataError("total GMD is zero: all feature rows identical")

    def stat(self, codes: np.ndarray) -> float:
        within = 0.0
        for k in range(len(self.counts)):
            vals = self.col[codes == k]
            m = vals.shape[0]
            if m > 1:
                within += (m / self.n) * _pair_mean(_sorted_pair_sum(vals), m, "v")
        return 1.0 - within / self.total


class _GcorMatrixEngine:
    """Gini correlation under label permutation via a fixed distance matrix."""

    def __init__(self, dataset: LabeledDataset, alpha: float):
        feats = dataset.features
        self.n = dataset.n_observations
        self.n_classes = dataset.n_classes
        self.alpha = alpha
        self.feats = feats
        if self.n <= _FULL_MATRIX_N:
            self.dist = _powered(cdist(feats, feats, "sqeuclidean"), alpha)
            total_sum = float(self.dist.sum())
        else:
            self.dist = None
            total_sum = 2.0 * _pair_sum(feats, alpha)
        self.total = total_sum / (self.n * self.n)
        if self.total <= 0.0:
            raise DegenerateDataError("total GMD is zero: all feature rows identical")

    def stat(self, codes: np.ndarray) -> float:
        within = 0.0
        for k in range(self.n_classes):
            idx = np.flatnonzero(codes == k)
            m = idx.shape[0]
            if m < 2:
                continue
            if self.dist is not None:
                group_sum = float(self.dist[np.ix_(idx, idx)].sum())
            else:
                group_sum = 2.0 * _pair_sum(self.feats[idx], self.alpha)
            within += (m / self.n) * group_sum / (m * m)
        return 1.0 - within / self.total


class _DcorEngine:
    """Unbiased distance correlation under label permutation.

    The U-centered feature matrix and both variance terms are permutation
    invariant (permuting labels permutes the label matrix symmetrically), so
    only the cross sum is recomputed per permutation.
    """

    def __init__(self, dataset: LabeledDataset, alpha: float):
        n = dataset.n_observations
        if n < 4:
            raise DataValidationError("the unbiased estimator needs at least 4 observations")
        self.n = n
        self.alpha = alpha
        self.feats = dataset.features
        self.counts = dataset.groups.counts
        if n <= _FULL_MATRIX_N:
            self.A = _u_centered(_powered(cdist(self.feats, self.feats, "sqeuclidean"), alpha))
            sxx = float((self.A * self.A).sum())
            codes = dataset.codes
            b = _u_centered((codes[:, None] != codes[None, :]).astype(np.float64))
            syy = float((b * b).sum())
        else:
            self.A = None
            _, sxx, syy = _unbiased_sums_chunked(self.feats, dataset.codes, alpha)
        scale = 1.0 / (n * (n - 3))
        self.dxx = sxx * scale
        self.dyy = syy * scale
        if self.dxx <= 0.0 or self.dyy <= 0.0:
            raise DegenerateDataError(
                "distance correlation undefined: a distance variance term is nonpositive"
            )
        self.denom = math.sqrt(self.dxx * self.dyy)

    def stat(self, codes: np.ndarray) -> float:
        n = self.n
        if self.A is not None:
            b = _u_centered((codes[:, None] != codes[None, :]).astype(np.float64))
            sxy = float((self.A * b).sum())
        else:
            sxy, _, _ = _unbiased_sums_chunked(self.feats, codes, self.alpha)
        return sxy / (n * (n - 3)) / self.denom


def permutation_test(
    dataset: LabeledDataset,
    alpha: float = 1.0,
    statistic: str = "gcor",
    n_permutations: int = 200,
    gamma: float = 0.05,
    seed: int | None = None,
    rho0: float | None = None,
) -> PermutationTestResult:
    """Permutation test of independence between features and label.

    The label column is permuted ``n_permutations`` times; replicate m uses
    its own generator stream derived from (seed, m), so the result is
    identical however the replicates are executed.

    Parameters
    ----------
    dataset : LabeledDataset
    alpha : float
        Distance exponent for the chosen statistic.
    statistic : {'gcor', 'dcor-unbiased'}
        Test statistic; 'dcor' is accepted as shorthand for the unbiased
        distance correlation.
    n_permutations : int
        Number of label permutations M (>= 1).
    gamma : float
        Significance level used for the reported critical value.
    seed : int, optional
        Nonnegative seed; drawn from OS entropy (and reported) when omitted.
    rho0 : float, optional
        Alternative-hypothesis correlation. When given (gcor statistic
        only), the normal-approximation power at rho0 is attached, with the
        jackknife SE standing in for the unknown sampling scale.

    Returns
    -------
    PermutationTestResult
    """
    alpha = check_alpha(alpha)
    if statistic not in _STATISTICS:
        raise DataValidationError(
            f"statistic must be one of {sorted(set(_STATISTICS))}, got {statistic!r}"
        )
    statistic = _STATISTICS[statistic]
    n_permutations = int(n_permutations)
    if n_permutations < 1:
        raise DataValidationError("n_permutations must be at least 1")
    if not 0.0 < gamma < 1.0:
        raise DataValidationError(f"gamma must be in (0, 1), got {gamma!r}")
    if dataset.n_classes < 2:
        raise DataValidationError("the independence test needs at least two classes")
    seed = _resolve_seed(seed)

    if statistic == "gcor":
        if dataset.n_features == 1 and alpha == 1.0:
            engine = _GcorSortedEngine(dataset)
        else:
            engine = _GcorMatrixEngine(dataset, alpha)
    else:
        engine = _DcorEngine(dataset, alpha)

    codes = dataset.codes
    n = dataset.n_observations
    observed = engine.stat(codes)
    replicates = np.empty(n_permutations)
    for m in range(n_permutations):
        perm = _replicate_rng(seed, m).permutation(n)
        replicates[m] = engine.stat(codes[perm])

    p_value = (1.0 + float(np.sum(replicates >= observed))) / (n_permutations + 1.0)
    rank = max(1, math.ceil((1.0 - gamma) * n_permutations))
    critical = float(np.sort(replicates)[rank - 1])

    power = None
    if rho0 is not None:
        if statistic != "gcor":
            raise DataValidationError("power at an alternative is defined for the gcor statistic")
        se = jackknife_ci(dataset, alpha, "v", level=0.95).se
        power = power_at(rho0, critical, se)

    replicates.flags.writeable = False
    return PermutationTestResult(
        observed=observed,
        replicates=replicates,
        p_value=p_value,
        critical_value=critical,
        gamma=gamma,
        seed=seed,
        statistic=statistic,
        power=power,
    )


def power_at(rho0: float, critical_value: float, se: float) -> float:
    """Normal-approximation power 1 - Phi((critical_value - rho0) / se).

    ``se`` is the standard error of the estimate at the alternative (the
    jackknife SE in practice, already scaled by 1/sqrt(n)).
    """
    if not rho0 > 0.0:
        raise DataValidationError("rho0 must be positive")
    if not se > 0.0:
        raise DataValidationError("se must be positive")
    return float(1.0 - ndtr((critical_value - rho0) / se))
