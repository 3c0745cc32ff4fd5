"""Gini distance correlation between numeric features and a class label.

The central quantity splits the total Gini mean difference of a sample into
within-class and between-class variation; the between share is the Gini
distance covariance and its ratio to the total is the Gini distance
correlation, a [0, 1] dependence measure that vanishes exactly under
independence (for distance exponents in (0, 2)). The package pairs the
estimators with distance-correlation and ANOVA-R^2 baselines, jackknife and
permutation inference, closed-form population oracles for three mixture
families, and a seeded simulation harness.
"""

from .correlation import (
    CorrelationReport,
    FeatureRank,
    energy_distance,
    gcor,
    gcov,
    gcov_via_energy,
    pearson_r2,
    screen_features,
)
from .data import (
    DataValidationError,
    DegenerateDataError,
    GroupView,
    LabeledDataset,
    build_dataset,
    group_view,
)
from .distance import DistanceReport, dcov_plugin, dcov_unbiased, label_metric
from .gmd import GmdEstimate, gmd_cross, gmd_pairwise, gmd_sorted_fast
from .inference import (
    JackknifeInterval,
    PermutationTestResult,
    jackknife_ci,
    permutation_test,
    power_at,
)
from .oracles import (
    exp_mixture_corrs,
    exp_mixture_dcov_xx,
    exp_mixture_dcov_xx_quadrature,
    gcor_from_cdfs,
    monotonicity_probe,
    normal_location_corrs,
    normal_scale_gcor,
)
from .simulate import (
    ExperimentResult,
    MixtureSpec,
    cauchy_mixture,
    coverage_experiment,
    exponential_mixture,
    normal_location_mixture,
    normal_scale_mixture,
    population_gcor,
    power_experiment,
    sample_mixture,
    timing_benchmark,
)

__version__ = "0.1.0"

__all__ = [
    "CorrelationReport",
    "DataValidationError",
    "DegenerateDataError",
    "DistanceReport",
    "ExperimentResult",
    "FeatureRank",
    "GmdEstimate",
    "GroupView",
    "JackknifeInterval",
    "LabeledDataset",
    "MixtureSpec",
    "PermutationTestResult",
    "build_dataset",
    "cauchy_mixture",
    "coverage_experiment",
    "dcov_plugin",
    "dcov_unbiased",
    "energy_distance",
    "exp_mixture_corrs",
    "exp_mixture_dcov_xx",
    "exp_mixture_dcov_xx_quadrature",
    "exponential_mixture",
    "gcor",
    "gcor_from_cdfs",
    "gcov",
    "gcov_via_energy",
    "gmd_cross",
    "gmd_pairwise",
    "gmd_sorted_fast",
    "group_view",
    "jackknife_ci",
    "label_metric",
    "monotonicity_probe",
    "normal_location_corrs",
    "normal_location_mixture",
    "normal_scale_gcor",
    "normal_scale_mixture",
    "pearson_r2",
    "permutation_test",
    "population_gcor",
    "power_at",
    "power_experiment",
    "sample_mixture",
    "screen_features",
    "timing_benchmark",
    "__version__",
]
