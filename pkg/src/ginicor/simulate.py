"""Seeded mixture samplers and desk-scale simulation experiments.

A :class:`MixtureSpec` describes a K-component mixture; sampling draws each
observation's component index from the weights and uses that index as the
class label, so the label is dependent on the feature exactly when the
components differ. Experiment drivers reproduce the standard study designs:

* ``coverage_experiment`` — proportion of jackknife confidence intervals
  that contain the population Gini correlation of the design;
* ``power_experiment`` — rejection rates of permutation tests across a list
  of designs and statistics;
* ``timing_benchmark`` — wall-clock comparison of the Gini correlation
  (order-statistics fast path in one dimension) against the O(n^2)
  unbiased distance correlation.

Every replicate draws from an independent generator stream derived from
(seed, replicate index), so tables are reproducible bit for bit regardless
of execution order — except timing cells, whose sampled data are
deterministic but whose measured seconds naturally vary run to run.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .correlation import gcor
from .data import DataValidationError, LabeledDataset, build_dataset, check_alpha, check_kind
from .distance import dcov_unbiased
from .inference import jackknife_ci, permutation_test
from .oracles import exp_mixture_corrs, normal_location_corrs, normal_scale_gcor

__all__ = [
    "ExperimentResult",
    "MixtureSpec",
    "cauchy_mixture",
    "coverage_experiment",
    "exponential_mixture",
    "normal_location_mixture",
    "normal_scale_mixture",
    "population_gcor",
    "power_experiment",
    "sample_mixture",
    "timing_benchmark",
]

_FAMILIES = ("exponential", "normal", "cauchy", "mvnormal")


@dataclass(frozen=True)
class MixtureSpec:
    """A K-component mixture: (family, parameters) pairs plus weights.

    Supported components: ``("exponential", (scale,))``,
    ``("normal", (mean, sd))``, ``("cauchy", (location, scale))`` and
    ``("mvnormal", (dim,))`` for a standard multivariate normal. All
    components must share one feature dimension; weights are positive and
    sum to 1.
    """

    components: tuple
    weights: tuple

    def __post_init__(self):
        comps = tuple((str(f), tuple(float(v) for v in params)) for f, params in self.components)
        weights = tuple(float(w) for w in self.weights)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "weights", weights)
        if len(comps) < 1 or len(comps) != len(weights):
            raise DataValidationError("need one weight per component")
        if any(w <= 0.0 for w in weights):
            raise DataValidationError("mixture weights must be strictly positive")
        if abs(sum(weights) - 1.0) > 1e-12:
            raise DataValidationError("mixture weights must sum to 1")
        dims = set()
        for family, params in comps:
            if family not in _FAMILIES:
                raise DataValidationError(f"unknown component family {family!r}")
            if family == "mvnormal":
                if len(params) != 1 or int(params[0]) < 1:
                    raise DataValidationError("mvnormal takes a single positive dimension")
                dims.add(int(params[0]))
            else:
                expected = 1 if family == "exponential" else 2
                if len(params) != expected:
                    raise DataValidationError(
                        f"{family} takes {expected} parameter(s), got {len(params)}"
                    )
                if family == "exponential" and params[0] <= 0.0:
                    raise DataValidationError("exponential scale must be positive")
                if family in ("normal", "cauchy") and params[1] <= 0.0:
                    raise DataValidationError(f"{family} scale must be positive")
                dims.add(1)
        if len(dims) != 1:
            raise DataValidationError("all components must share one feature dimension")
        object.__setattr__(self, "_dim", dims.pop())

    @property
    def n_components(self) -> int:
        return len(self.weights)

    @property
    def dim(self) -> int:
        return self._dim

    def describe(self) -> str:
        parts = [
            f"{family}({', '.join(format(v, 'g') for v in params)})"
            for family, params in self.components
        ]
        weights = ", ".join(format(w, "g") for w in self.weights)
        return f"mixture[{'; '.join(parts)}; weights=({weights})]"


def exponential_mixture(weights, scales) -> MixtureSpec:
    return MixtureSpec(tuple(("exponential", (s,)) for s in scales), tuple(weights))


def normal_location_mixture(weights, means, sd: float = 1.0) -> MixtureSpec:
    return MixtureSpec(tuple(("normal", (m, sd)) for m in means), tuple(weights))


def normal_scale_mixture(weights, sds, mean: float = 0.0) -> MixtureSpec:
    return MixtureSpec(tuple(("normal", (mean, s)) for s in sds), tuple(weights))


def cauchy_mixture(weights, centers, scale: float = 1.0) -> MixtureSpec:
    return MixtureSpec(tuple(("cauchy", (c, scale)) for c in centers), tuple(weights))


def _draw_component(family: str, params, count: int, dim: int, rng) -> np.ndarray:
    if family == "exponential":
        return rng.exponential(params[0], size=(count, 1))
    if family == "normal":
        return rng.normal(params[0], params[1], size=(count, 1))
    if family == "cauchy":
        return params[0] + params[1] * rng.standard_cauchy(size=(count, 1))
    return rng.standard_normal(size=(count, dim))


def _stratified_counts(weights, n: int) -> np.ndarray:
    # largest-remainder apportionment: exact total, ties broken by index
    raw = np.asarray(weights) * n
    counts = np.floor(raw).astype(int)
    remainder = n - counts.sum()
    order = np.argsort(-(raw - counts), kind="stable")
    counts[order[:remainder]] += 1
    return counts


def sample_mixture(spec: MixtureSpec, n: int, seed=None, stratified: bool = False) -> LabeledDataset:
    """Draw a labeled sample of size n from a mixture.

    Each observation draws a component index from the weights and then a
    value from that component; the index is the label. With
    ``stratified=True`` the class counts are fixed to the largest-remainder
    apportionment of the weights and only the label positions are shuffled
    (used by the timing design, which assigns half the points to each class).
    """
    if n < 1:
        raise DataValidationError("sample size must be positive")
    rng = np.random.default_rng(seed)
    k = spec.n_components
    if stratified:
        counts = _stratified_counts(spec.weights, n)
        labels = rng.permutation(np.repeat(np.arange(k), counts))
    else:
        labels = rng.choice(k, size=n, p=np.asarray(spec.weights))
    features = np.empty((n, spec.dim))
    for comp in range(k):
        mask = labels == comp
        count = int(mask.sum())
        if count:
            family, params = spec.components[comp]
            features[mask] = _draw_component(family, params, count, spec.dim, rng)
    return build_dataset(features, labels)


def population_gcor(spec: MixtureSpec) -> float:
    """Population Gini correlation of a two-component design with a closed form.

    Recognizes exponential-scale, normal-location (shared sd) and
    normal-scale (shared mean) two-component mixtures; anything else has no
    closed-form oracle here and raises.
    """
    if spec.n_components == 2:
        (fam1, par1), (fam2, par2) = spec.components
        p = spec.weights[0]
        if fam1 == fam2 == "exponential":
            return exp_mixture_corrs(p, par1[0], par2[0]).rho_g
        if fam1 == fam2 == "normal":
            (m1, s1), (m2, s2) = par1, par2
            if s1 == s2:
                return normal_location_corrs(p, abs(m1 - m2) / s1).rho_g
            if m1 == m2:
                return normal_scale_gcor(p, s2 / s1)
    raise DataValidationError(
        f"no closed-form population correlation for {spec.describe()}"
    )


@dataclass(frozen=True)
class ExperimentResult:
    """One simulation table: per-cell rows plus the inputs that made them.

    ``rows`` is a tuple of plain dicts sharing ``columns``. Rates carry a
    companion binomial standard error column so desk-scale replications can
    be compared against larger published runs.
    """

    kind: str
    seed: int
    reps: int
    columns: tuple
    rows: tuple
    meta: dict = field(default_factory=dict)

    def to_csv(self, stream) -> None:
        """Write a JSON metadata header line followed by the CSV table."""
        import json

        header = {"kind": self.kind, "seed": self.seed, "reps": self.reps, **self.meta}
        stream.write("# " + json.dumps(header, sort_keys=True) + "\n")
        stream.write(",".join(self.columns) + "\n")
        for row in self.rows:
            stream.write(
                ",".join(_format_cell(row[c]) for c in self.columns) + "\n"
            )


def _format_cell(value) -> str:
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def _rate_se(rate: float, reps: int) -> float:
    return float(np.sqrt(rate * (1.0 - rate) / reps)) if reps > 0 else 0.0


def _child_seed(seed: int, *key: int) -> int:
    return int(np.random.SeedSequence(entropy=seed, spawn_key=tuple(key)).generate_state(1)[0])


def coverage_experiment(
    spec: MixtureSpec,
    n: int,
    level: float = 0.95,
    reps: int = 1000,
    alpha: float = 1.0,
    kind: str = "v",
    seed: int = 0,
) -> ExperimentResult:
    """Coverage of jackknife confidence intervals against the population value.

    Draws ``reps`` independent samples of size n from the design, builds the
    (1-gamma) jackknife interval on each and counts how often it contains
    the closed-form population Gini correlation.
    """
    alpha = check_alpha(alpha)
    kind = check_kind(kind)
    if reps < 1:
        raise DataValidationError("reps must be at least 1")
    target = population_gcor(spec)
    hits = 0
    for r in range(reps):
        ds = sample_mixture(spec, n, seed=np.random.SeedSequence(entropy=seed, spawn_key=(r,)))
        ci = jackknife_ci(ds, alpha=alpha, kind=kind, level=level)
        hits += ci.lower <= target <= ci.upper
    rate = hits / reps
    row = {
        "design": spec.describe(),
        "n": n,
        "level": level,
        "alpha": alpha,
        "kind": kind,
        "population_gcor": target,
        "coverage": rate,
        "binomial_se": _rate_se(rate, reps),
    }
    return ExperimentResult(
        kind="coverage",
        seed=seed,
        reps=reps,
        columns=tuple(row.keys()),
        rows=(row,),
    )


def power_experiment(
    designs,
    n: int,
    n_permutations: int = 200,
    gamma: float = 0.05,
    statistics=("gcor",),
    reps: int = 300,
    alpha: float = 1.0,
    seed: int = 0,
) -> ExperimentResult:
    """Rejection rates of permutation tests across designs and statistics.

    Each replicate samples a dataset once per design and runs every
    requested statistic's test on that same dataset, so statistics are
    compared on common draws. Null designs (all components identical)
    estimate the test size; others its power.
    """
    alpha = check_alpha(alpha)
    if reps < 1:
        raise DataValidationError("reps must be at least 1")
    designs = list(designs)
    statistics = list(statistics)
    rejections = np.zeros((len(designs), len(statistics)), dtype=int)
    for i, spec in enumerate(designs):
        for r in range(reps):
            ds = sample_mixture(
                spec, n, seed=np.random.SeedSequence(entropy=seed, spawn_key=(i, r))
            )
            for s, statistic in enumerate(statistics):
                result = permutation_test(
                    ds,
                    alpha=alpha,
                    statistic=statistic,
                    n_permutations=n_permutations,
                    gamma=gamma,
                    seed=_child_seed(seed, i, r, 1000 + s),
                )
                rejections[i, s] += result.p_value <= gamma
    rows = []
    for i, spec in enumerate(designs):
        for s, statistic in enumerate(statistics):
            rate = rejections[i, s] / reps
            rows.append(
                {
                    "design": spec.describe(),
                    "statistic": statistic,
                    "n": n,
                    "alpha": alpha,
                    "gamma": gamma,
                    "n_permutations": n_permutations,
                    "rejection_rate": rate,
                    "binomial_se": _rate_se(rate, reps),
                }
            )
    return ExperimentResult(
        kind="power",
        seed=seed,
        reps=reps,
        columns=tuple(rows[0].keys()),
        rows=tuple(rows),
    )


def timing_benchmark(
    d_values,
    n_values,
    reps: int = 3,
    seed: int = 0,
    statistics=("gcor", "dcov"),
) -> ExperimentResult:
    """Wall-clock timing of gcor and the unbiased dcov on null normal data.

    For each (d, n) cell: features are standard normal in R^d, half of the
    points are assigned to each of two classes, one warm-up evaluation is
    discarded and ``reps`` timed evaluations are recorded. Cells run
    serially to keep measurements contention-free. With ``reps=0`` an empty
    table is returned.
    """
    statistics = list(statistics)
    unknown = set(statistics) - {"gcor", "dcov"}
    if unknown:
        raise DataValidationError(f"unknown timing statistics: {sorted(unknown)}")
    rows = []
    for d in d_values:
        for n in n_values:
            if reps < 1:
                continue
            spec = MixtureSpec(
                (("mvnormal", (d,)), ("mvnormal", (d,))), (0.5, 0.5)
            )
            ds = sample_mixture(
                spec,
                n,
                seed=np.random.SeedSequence(entropy=seed, spawn_key=(int(d), int(n))),
                stratified=True,
            )
            for statistic in statistics:
                runner = (
                    (lambda: gcor(ds, 1.0, "v"))
                    if statistic == "gcor"
                    else (lambda: dcov_unbiased(ds, 1.0))
                )
                runner()  # warm-up, discarded
                times = np.empty(reps)
                for r in range(reps):
                    start = time.perf_counter()
                    runner()
                    times[r] = time.perf_counter() - start
                rows.append(
                    {
                        "d": int(d),
                        "n": int(n),
                        "statistic": statistic,
                        "mean_seconds": float(times.mean()),
                        "sd_seconds": float(times.std()),
                    }
                )
    columns = ("d", "n", "statistic", "mean_seconds", "sd_seconds")
    return ExperimentResult(
        kind="timing",
        seed=seed,
        reps=reps,
        columns=columns,
        rows=tuple(rows),
    )
