"""Distance covariance and correlation with a 0/1 metric on the label.

Class labels carry no geometry, so the label side uses the set-difference
metric d(y, y') = 1 if y != y' else 0 (the same for every exponent, since
0^a = 0 and 1^a = 1). Two estimator flavors are kept strictly separate:

``dcov_unbiased``
    The U-centered estimator: pairwise distance matrices are centered with
    n-2 row/column divisors and an (n-1)(n-2) grand divisor, diagonals
    zeroed, and the products averaged with 1/(n(n-3)). Unbiased for the
    population distance covariance; needs n >= 4 and can go slightly
    negative on small samples.

``dcov_plugin``
    The plug-in (V-statistic) estimator. Exact finite-sample identities
    link it to the Gini covariance: gCov >= dCov, gCov = K dCov for
    balanced classes, and for two classes gCov = dCov / sqrt(dCov(Y,Y))
    with dCov(Y,Y) = 4 p1^2 p2^2. Those identities hold only at plug-in
    level, which is why the flavors are never mixed silently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .data import DataValidationError, LabeledDataset, _factorize, check_alpha
from .gmd import _cross_sum, _pair_mean, _pair_sum, _powered

__all__ = ["DistanceReport", "dcov_plugin", "dcov_unbiased", "label_metric"]

# Above this sample size the n x n distance matrix is processed in row
# chunks instead of being materialized (same arithmetic, bounded memory).
_FULL_MATRIX_N = 3000
_ROW_CHUNK = 1024


@dataclass(frozen=True)
class DistanceReport:
    """Distance covariance components and their correlation.

    ``dcor = dcov_xy / sqrt(dcov_xx * dcov_yy)`` whenever both variance
    terms are positive; otherwise ``dcor`` is reported as 0.0 with
    ``dcor_defined=False``.
    """

    dcov_xy: float
    dcov_xx: float
    dcov_yy: float
    dcor: float
    alpha: float
    flavor: str
    dcor_defined: bool = True


def label_metric(labels) -> np.ndarray:
    """Pairwise 0/1 distance matrix I(y_i != y_j) for a label sequence."""
    codes, _ = _factorize(labels)
    return (codes[:, None] != codes[None, :]).astype(np.float64)


def _alpha_distance_matrix(features: np.ndarray, alpha: float) -> np.ndarray:
    return _powered(cdist(features, features, "sqeuclidean"), alpha)


def _u_centered(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    row = m.sum(axis=1, keepdims=True)
    col = m.sum(axis=0, keepdims=True)
    grand = m.sum()
    out = m - row / (n - 2) - col / (n - 2) + grand / ((n - 1) * (n - 2))
    np.fill_diagonal(out, 0.0)
    return out


def _unbiased_sums_full(features, codes, alpha):
    n = features.shape[0]
    a = _u_centered(_alpha_distance_matrix(features, alpha))
    b = _u_centered((codes[:, None] != codes[None, :]).astype(np.float64))
    return float((a * b).sum()), float((a * a).sum()), float((b * b).sum())


def _unbiased_sums_chunked(features, codes, alpha):
    """Two-pass U-centered sums without materializing the n x n matrices."""
    n = features.shape[0]
    counts = np.bincount(codes)
    row_a = np.empty(n)
    for start in range(0, n, _ROW_CHUNK):
        block = _powered(
            cdist(features[start : start + _ROW_CHUNK], features, "sqeuclidean"), alpha
        )
        row_a[start : start + block.shape[0]] = block.sum(axis=1)
    grand_a = float(row_a.sum())
    row_b = (n - counts[codes]).astype(np.float64)
    grand_b = float(row_b.sum())

    inv = 1.0 / (n - 2)
    mean_a = grand_a / ((n - 1) * (n - 2))
    mean_b = grand_b / ((n - 1) * (n - 2))
    sxy = sxx = syy = 0.0
    for start in range(0, n, _ROW_CHUNK):
        stop = min(start + _ROW_CHUNK, n)
        rows = slice(start, stop)
        a = _powered(cdist(features[rows], features, "sqeuclidean"), alpha)
        a -= row_a[rows, None] * inv
        a -= row_a[None, :] * inv
        a += mean_a
        b = (codes[rows, None] != codes[None, :]).astype(np.float64)
        b -= row_b[rows, None] * inv
        b -= row_b[None, :] * inv
        b += mean_b
        diag = np.arange(start, stop)
        a[diag - start, diag] = 0.0
        b[diag - start, diag] = 0.0
        sxy += float((a * b).sum())
        sxx += float((a * a).sum())
        syy += float((b * b).sum())
    return sxy, sxx, syy


def dcov_unbiased(dataset: LabeledDataset, alpha: float = 1.0) -> DistanceReport:
    """U-centered (unbiased) distance covariance between features and label.

    Parameters
    ----------
    dataset : LabeledDataset
        Needs n >= 4 observations (the 1/(n(n-3)) normalization requires it).
    alpha : float
        Exponent on the Euclidean distance for the feature side; the 0/1
        label metric is exponent-invariant.

    Returns
    -------
    DistanceReport
        With ``flavor='unbiased'``. If either variance term is nonpositive
        (possible on small n), ``dcor`` is 0.0 and ``dcor_defined`` False.
    """
    alpha = check_alpha(alpha)
    n = dataset.n_observations
    if n < 4:
        raise DataValidationError("the unbiased estimator needs at least 4 observations")
    if n <= _FULL_MATRIX_N:
        sxy, sxx, syy = _unbiased_sums_full(dataset.features, dataset.codes, alpha)
    else:
        sxy, sxx, syy = _unbiased_sums_chunked(dataset.features, dataset.codes, alpha)
    scale = 1.0 / (n * (n - 3))
    dxy, dxx, dyy = sxy * scale, sxx * scale, syy * scale
    defined = dxx > 0.0 and dyy > 0.0
    dcor = dxy / np.sqrt(dxx * dyy) if defined else 0.0
    return DistanceReport(
        dcov_xy=dxy,
        dcov_xx=dxx,
        dcov_yy=dyy,
        dcor=float(dcor),
        alpha=alpha,
        flavor="unbiased",
        dcor_defined=defined,
    )


def _plugin_dvar_features(features: np.ndarray, alpha: float) -> float:
    """Plug-in distance variance of the features: mean of squared
    double-centered distances (row/column/grand means with n divisors)."""
    n = features.shape[0]
    if n <= _FULL_MATRIX_N:
        a = _alpha_distance_matrix(features, alpha)
        row = a.mean(axis=1, keepdims=True)
        col = a.mean(axis=0, keepdims=True)
        grand = a.mean()
        centered = a - row - col + grand
        return float((centered * centered).sum()) / (n * n)
    row = np.empty(n)
    for start in range(0, n, _ROW_CHUNK):
        block = _powered(
            cdist(features[start : start + _ROW_CHUNK], features, "sqeuclidean"), alpha
        )
        row[start : start + block.shape[0]] = block.sum(axis=1)
    row /= n
    grand = float(row.mean())
    total = 0.0
    for start in range(0, n, _ROW_CHUNK):
        stop = min(start + _ROW_CHUNK, n)
        a = _powered(cdist(features[start:stop], features, "sqeuclidean"), alpha)
        a -= row[start:stop, None]
        a -= row[None, :]
        a += grand
        total += float((a * a).sum())
    return total / (n * n)


def dcov_plugin(dataset: LabeledDataset, alpha: float = 1.0) -> DistanceReport:
    """Plug-in (V-statistic) distance covariance between features and label.

    ``dcov_xy`` is the proportion-squared weighted sum of plug-in energy
    distances between each class sample and the pooled sample;
    ``dcov_yy`` is the closed form sum(p^2) - 2 sum(p^3) + (sum(p^2))^2 of
    the empirical class proportions; ``dcov_xx`` is the plug-in distance
    variance of the features.
    """
    alpha = check_alpha(alpha)
    if dataset.n_classes < 2:
        raise DataValidationError(
            "distance covariance with the label needs at least two classes"
        )
    feats = dataset.features
    n = dataset.n_observations
    props = dataset.groups.proportions

    pooled_gmd = _pair_mean(_pair_sum(feats, alpha), n, "v")
    dxy = 0.0
    for k, idx in enumerate(dataset.groups.indices):
        grp = feats[idx]
        m = grp.shape[0]
        cross = _cross_sum(grp, feats, alpha) / (m * n)
        within = _pair_mean(_pair_sum(grp, alpha), m, "v") if m > 1 else 0.0
        t_k = 2.0 * cross - within - pooled_gmd
        dxy += props[k] ** 2 * t_k

    p2 = float((props**2).sum())
    p3 = float((props**3).sum())
    dyy = p2 - 2.0 * p3 + p2 * p2
    dxx = _plugin_dvar_features(feats, alpha)
    defined = dxx > 0.0 and dyy > 0.0
    dcor = dxy / np.sqrt(dxx * dyy) if defined else 0.0
    return DistanceReport(
        dcov_xy=dxy,
        dcov_xx=dxx,
        dcov_yy=dyy,
        dcor=float(dcor),
        alpha=alpha,
        flavor="plugin",
        dcor_defined=defined,
    )
