"""Labeled datasets: an n x d matrix of numeric features paired with a
categorical label taking K distinct levels.

Every estimator in this package consumes a :class:`LabeledDataset`. The
dataset validates its inputs once at construction (finite features, matching
lengths) and exposes a :class:`GroupView` partitioning the observations by
class, so downstream code never re-checks structure. Instances are immutable
and safe to share across threads.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DataValidationError",
    "DegenerateDataError",
    "GroupView",
    "LabeledDataset",
    "build_dataset",
    "check_alpha",
    "check_kind",
    "group_view",
]


class DataValidationError(ValueError):
    """Input data violate a structural contract (shape, finiteness, sizes)."""


class DegenerateDataError(ValueError):
    """Data carry no dispersion where the requested statistic needs some."""


def check_alpha(alpha) -> float:
    """Validate the distance exponent and return it as a float.

    The admissible range is 0 < alpha <= 2. Exponents in (0, 2) make the
    correlation vanish exactly when feature and label are independent;
    alpha = 2 is accepted for the classical variance-ratio limit but a
    warning flags that zero correlation no longer implies independence.
    """
    a = float(alpha)
    if not 0.0 < a <= 2.0:
        raise DataValidationError(f"alpha must be in (0, 2], got {alpha!r}")
    if a == 2.0:
        warnings.warn(
            "alpha=2 does not characterize independence (zero correlation "
            "no longer implies independent feature and label)",
            UserWarning,
            stacklevel=2,
        )
    return a


def check_kind(kind) -> str:
    """Normalize an estimator kind to 'u' or 'v'."""
    k = str(kind).lower()
    if k not in ("u", "v"):
        raise DataValidationError(f"estimator kind must be 'u' or 'v', got {kind!r}")
    return k


def _factorize(labels) -> tuple[np.ndarray, tuple]:
    """Map labels to dense codes 0..K-1 in first-appearance order."""
    values = np.asarray(labels)
    if values.ndim != 1:
        raise DataValidationError("labels must be one-dimensional")
    mapping: dict = {}
    codes = np.empty(values.shape[0], dtype=np.intp)
    for i, lab in enumerate(values.tolist()):
        codes[i] = mapping.setdefault(lab, len(mapping))
    return codes, tuple(mapping)


@dataclass(frozen=True)
class GroupView:
    """Per-class partition of observation indices.

    ``indices[k]`` holds the row indices of class k (classes numbered in
    first-appearance order), ``counts[k]`` its size and ``proportions[k]``
    the sample proportion counts[k]/n. The index lists partition 0..n-1.
    """

    indices: tuple
    counts: np.ndarray
    proportions: np.ndarray

    @property
    def n_classes(self) -> int:
        return len(self.indices)


class LabeledDataset:
    """Immutable container for numeric features plus a categorical label.

    Parameters
    ----------
    features : array_like
        Shape (n, d) matrix of real numbers, or a length-n vector treated
        as a single column. All entries must be finite.
    labels : array_like
        Length-n sequence of class identifiers (strings, ints, ...). Levels
        are mapped to dense codes 0..K-1 in first-appearance order; the
        original values are retained for reporting.
    """

    def __init__(self, features, labels):
        feats = np.asarray(features, dtype=np.float64)
        if feats.ndim == 1:
            feats = feats[:, None]
        if feats.ndim != 2:
            raise DataValidationError(
                f"features must be a vector or matrix, got ndim={feats.ndim}"
            )
        n, d = feats.shape
        if n == 0:
            raise DataValidationError("empty input: no observations")
        if d == 0:
            raise DataValidationError("features must have at least one column")
        codes, levels = _factorize(labels)
        if codes.shape[0] != n:
            raise DataValidationError(
                f"length mismatch: {n} feature rows vs {codes.shape[0]} labels"
            )
        if n < 2:
            raise DataValidationError("at least two observations are required")
        if not np.isfinite(feats).all():
            bad = np.argwhere(~np.isfinite(feats))[0]
            raise DataValidationError(
                f"non-finite feature value at row {bad[0]}, column {bad[1]}"
            )

        feats = np.ascontiguousarray(feats)
        feats.flags.writeable = False
        codes.flags.writeable = False

        self._features = feats
        self._codes = codes
        self._levels = levels
        self._labels = np.asarray(labels).copy()
        self._labels.flags.writeable = False

        counts = np.bincount(codes, minlength=len(levels)).astype(np.intp)
        order = np.argsort(codes, kind="stable")
        splits = np.split(order, np.cumsum(counts)[:-1])
        for part in splits:
            part.flags.writeable = False
        props = counts / n
        counts.flags.writeable = False
        props.flags.writeable = False
        self._groups = GroupView(indices=tuple(splits), counts=counts, proportions=props)

    @property
    def features(self) -> np.ndarray:
        return self._features

    @property
    def labels(self) -> np.ndarray:
        """Original label values, in row order."""
        return self._labels

    @property
    def codes(self) -> np.ndarray:
        """Dense class codes 0..K-1, in row order."""
        return self._codes

    @property
    def levels(self) -> tuple:
        """Class levels in first-appearance order; ``levels[code]`` recovers the label."""
        return self._levels

    @property
    def n_observations(self) -> int:
        return self._features.shape[0]

    @property
    def n_features(self) -> int:
        return self._features.shape[1]

    @property
    def n_classes(self) -> int:
        return len(self._levels)

    @property
    def groups(self) -> GroupView:
        return self._groups

    def column(self, j: int) -> np.ndarray:
        """View of feature column j (no copy of the matrix)."""
        return self._features[:, j]

    def drop_row(self, i: int) -> "LabeledDataset":
        """New dataset with observation i removed (used by leave-one-out)."""
        return LabeledDataset(
            np.delete(self._features, i, axis=0), np.delete(self._labels, i)
        )

    def __repr__(self) -> str:
        return (
            f"LabeledDataset(n={self.n_observations}, d={self.n_features}, "
            f"K={self.n_classes})"
        )


def build_dataset(features, labels) -> LabeledDataset:
    """Validate and assemble a :class:`LabeledDataset`."""
    return LabeledDataset(features, labels)


def group_view(dataset: LabeledDataset) -> GroupView:
    """Per-class index partition, counts and proportions of a dataset."""
    return dataset.groups
