import numpy as np
import pytest

from ginicor import (
    DataValidationError,
    build_dataset,
    gcor,
    group_view,
)
from ginicor.data import check_alpha, check_kind

from conftest import random_grouped_dataset


class TestBuildDataset:
    def test_basic_counts(self):
        ds = build_dataset([[0.0], [0.0], [1.0], [1.0]], ["a", "a", "b", "b"])
        assert ds.n_observations == 4
        assert ds.n_classes == 2
        assert ds.groups.counts.tolist() == [2, 2]
        assert ds.groups.proportions.tolist() == [0.5, 0.5]

    def test_groups_by_first_appearance(self):
        ds = build_dataset(np.ones((3, 2)), ["a", "b", "a"])
        assert ds.n_classes == 2
        assert ds.groups.indices[0].tolist() == [0, 2]
        assert ds.groups.indices[1].tolist() == [1]

    def test_first_appearance_ordering(self):
        ds = build_dataset(np.arange(4.0), ["c", "b", "a", "b"])
        assert ds.levels == ("c", "b", "a")
        assert ds.groups.counts.tolist() == [1, 2, 1]

    def test_rejects_non_finite(self):
        with pytest.raises(DataValidationError, match="non-finite"):
            build_dataset([[0.0], [np.nan]], ["a", "b"])
        with pytest.raises(DataValidationError, match="non-finite"):
            build_dataset([[0.0], [np.inf]], ["a", "b"])

    def test_rejects_empty_and_mismatched(self):
        with pytest.raises(DataValidationError):
            build_dataset(np.empty((0, 1)), [])
        with pytest.raises(DataValidationError, match="mismatch"):
            build_dataset([[1.0], [2.0]], ["a"])
        with pytest.raises(DataValidationError):
            build_dataset([[1.0]], ["a"])

    def test_vector_features_become_one_column(self):
        ds = build_dataset([1.0, 2.0, 3.0], ["a", "b", "a"])
        assert ds.n_features == 1

    def test_single_level_accepted(self):
        ds = build_dataset([1.0, 2.0], ["a", "a"])
        assert ds.n_classes == 1

    def test_immutable(self):
        ds = build_dataset([1.0, 2.0], ["a", "b"])
        with pytest.raises(ValueError):
            ds.features[0, 0] = 9.0

    def test_column_is_view(self):
        ds = build_dataset(np.arange(8.0).reshape(4, 2), list("abab"))
        col = ds.column(1)
        assert col.base is ds.features


class TestGroupView:
    def test_degenerate_partition(self):
        ds = build_dataset([1.0, 2.0, 3.0], ["a", "a", "a"])
        gv = group_view(ds)
        assert gv.n_classes == 1
        assert gv.proportions.tolist() == [1.0]

    def test_counts_example(self):
        ds = build_dataset([1.0, 2.0, 3.0], ["a", "a", "b"])
        gv = group_view(ds)
        assert gv.counts.tolist() == [2, 1]
        assert np.allclose(gv.proportions, [2 / 3, 1 / 3])

    def test_partition_round_trip(self, rng):
        for _ in range(25):
            ds = random_grouped_dataset(rng)
            flat = np.sort(np.concatenate(ds.groups.indices))
            assert np.array_equal(flat, np.arange(ds.n_observations))
            assert abs(ds.groups.proportions.sum() - 1.0) < 1e-12

    def test_relabeling_changes_nothing_downstream(self, rng):
        ds = random_grouped_dataset(rng, n=20, k=3)
        renamed = build_dataset(ds.features, [f"class-{c}" for c in ds.codes])
        assert gcor(ds).estimate == gcor(renamed).estimate


class TestParameterChecks:
    def test_alpha_range(self):
        assert check_alpha(0.5) == 0.5
        for bad in (0.0, -1.0, 2.5):
            with pytest.raises(DataValidationError):
                check_alpha(bad)

    def test_alpha_two_warns(self):
        with pytest.warns(UserWarning, match="alpha=2"):
            assert check_alpha(2) == 2.0

    def test_kind(self):
        assert check_kind("V") == "v"
        with pytest.raises(DataValidationError):
            check_kind("w")
