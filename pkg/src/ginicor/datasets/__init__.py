"""Bundled example data.

The classic iris measurements (150 flowers, four size measurements in
centimeters, three species) ship with the package so the examples and the
acceptance checks run offline. The data are public domain.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from ..data import LabeledDataset, build_dataset

__all__ = ["iris_path", "load_iris"]


def iris_path() -> Path:
    """Filesystem path of the bundled iris CSV."""
    return Path(__file__).with_name("iris.csv")


def load_iris() -> LabeledDataset:
    """The bundled iris data as a LabeledDataset (species is the label)."""
    with iris_path().open(newline="") as fh:
        reader = csv.reader(fh)
        next(reader)  # header
        rows = list(reader)
    features = np.array([[float(v) for v in row[:4]] for row in rows])
    labels = [row[4] for row in rows]
    return build_dataset(features, labels)
