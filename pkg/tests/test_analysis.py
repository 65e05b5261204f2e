"""Sweeps, Pareto fronts, baselines, violins, distances, and proxies.

Front extraction is checked against an O(n^2) dominance filter and the
Wasserstein distance against direct CDF-difference integration; both
oracles are written from the definitions, sharing no code with the
implementations they check.
"""

import statistics
from dataclasses import replace

import numpy as np
import pytest

from gapfair.analysis import (
    SWEEP_CSV_COLUMNS,
    TradeoffPoint,
    distribution_distance,
    fairness_baseline,
    lambda_sweep,
    pareto_front,
    proxy_report,
    unfairness,
    violin_summary,
)
from gapfair.dataset import RecordTable, split
from gapfair.errors import ArityError, EmptyFrontError
from gapfair.group_metrics import FairnessNotion, NotionKind
from gapfair.model import Architecture
from gapfair.synthetic import biased_matrix, make_record
from gapfair.trainer import TrainConfig, evaluate, train


def _fairness(**by_label):
    values = {notion: None for notion in FairnessNotion}
    for label, value in by_label.items():
        values[FairnessNotion.from_label(label)] = value
    return values


def _pt(lam, seed, acc, f1=None, **labels):
    if f1 is not None:
        labels["f1"] = f1
    return TradeoffPoint(lam=lam, seed=seed, accuracy=acc,
                         fairness=_fairness(**labels), ad=0.0)


# ---------------------------------------------------------------------------
# Sweep

def _small_sweep_inputs():
    data = biased_matrix(1200, seed=0, majority_share=0.85, shift=1.0,
                         flip=0.1)
    train_m, test_m = split(data, 0.25, seed=0)
    arch = Architecture(input_dim=2, hidden_layers=())
    base = TrainConfig(epochs=12, batch_size=64, learning_rate=0.02,
                       optimizer="adam", validation_fraction=0.2, restarts=1)
    return train_m, test_m, base, arch


class TestLambdaSweep:
    def test_grid_cardinality_and_order(self):
        train_m, test_m, base, arch = _small_sweep_inputs()
        points = lambda_sweep(train_m, test_m, base,
                              lambdas=(0.0, 1.0), seeds=(3, 5), arch=arch)
        assert [(p.lam, p.seed) for p in points] == [
            (0.0, 3), (0.0, 5), (1.0, 3), (1.0, 5),
        ]
        for point in points:
            assert 0.0 <= point.accuracy <= 1.0
            assert set(point.fairness) == set(FairnessNotion)

    def test_deterministic(self):
        train_m, test_m, base, arch = _small_sweep_inputs()
        a = lambda_sweep(train_m, test_m, base, lambdas=(0.5,), seeds=(0,),
                         arch=arch)
        b = lambda_sweep(train_m, test_m, base, lambdas=(0.5,), seeds=(0,),
                         arch=arch)
        assert a == b

    def test_lambda_zero_cell_is_the_wbce_baseline(self):
        train_m, test_m, base, arch = _small_sweep_inputs()
        points = lambda_sweep(train_m, test_m, base, lambdas=(0.0,),
                              seeds=(7,), arch=arch)
        params, _ = train(train_m, replace(base, loss="wbce", seed=7), arch)
        result = evaluate(params, test_m)
        assert points[0].accuracy == result.report.accuracy
        assert points[0].ad == result.report.accuracy_difference

    def test_parity_penalty_reduces_median_ad(self):
        # Group-dependent decision boundaries: the lambda = 1 runs must
        # land closer to accuracy parity than the lambda = 0 runs.
        train_m, test_m, base, arch = _small_sweep_inputs()
        base = replace(base, epochs=60)
        points = lambda_sweep(train_m, test_m, base, lambdas=(0.0, 1.0),
                              seeds=range(5), arch=arch)
        by_lam = {
            lam: statistics.median(
                abs(p.ad) for p in points if p.lam == lam)
            for lam in (0.0, 1.0)
        }
        assert by_lam[1.0] < by_lam[0.0]

    def test_grid_validation(self):
        train_m, test_m, base, arch = _small_sweep_inputs()
        with pytest.raises(ValueError):
            lambda_sweep(train_m, test_m, base, lambdas=(), seeds=(0,))
        with pytest.raises(ValueError):
            lambda_sweep(train_m, test_m, base, lambdas=(-1.0,), seeds=(0,))
        with pytest.raises(ValueError):
            lambda_sweep(train_m, test_m, base, lambdas=(0.0,), seeds=())

    def test_csv_row_round_trip_preserves_none(self):
        point = _pt(0.3, 4, 0.81, f1=0.05)
        row = dict(zip(SWEEP_CSV_COLUMNS, point.to_csv_row()))
        back = TradeoffPoint.from_csv_row(row)
        assert back.lam == point.lam and back.seed == point.seed
        assert back.accuracy == point.accuracy
        assert back.fairness[FairnessNotion.EQUALIZED_ODDS] == 0.05
        assert back.fairness[FairnessNotion.DISPARATE_IMPACT] is None


# ---------------------------------------------------------------------------
# Unfairness scalarization

class TestUnfairness:
    def test_difference_distance_from_zero(self):
        notion = FairnessNotion.PREDICTIVE_EQUALITY
        assert unfairness(-0.2, notion) == pytest.approx(0.2)
        assert unfairness(0.0, notion) == 0.0

    def test_ratio_distance_from_one(self):
        notion = FairnessNotion.DISPARATE_IMPACT
        assert unfairness(1.25, notion) == pytest.approx(0.25)
        assert unfairness(1.0, notion) == 0.0

    def test_log_ratio_variant_is_scale_symmetric(self):
        notion = FairnessNotion.DISPARATE_IMPACT
        assert unfairness(2.0, notion, log_ratio=True) == pytest.approx(
            unfairness(0.5, notion, log_ratio=True))
        assert unfairness(-0.5, notion, log_ratio=True) is None
        # Difference notions ignore the flag.
        assert unfairness(-0.2, FairnessNotion.EQUALIZED_ODDS,
                          log_ratio=True) == pytest.approx(0.2)

    def test_none_propagates(self):
        assert unfairness(None, FairnessNotion.ERROR_RATIO) is None


# ---------------------------------------------------------------------------
# Pareto front

def _brute_force_front(coords):
    """Non-dominated (u, acc) coordinates by the O(n^2) definition."""
    out = set()
    for u, acc in coords:
        dominated = any(
            (u2 <= u and acc2 >= acc) and (u2 < u or acc2 > acc)
            for u2, acc2 in coords
        )
        if not dominated:
            out.add((u, acc))
    return out


class TestParetoFront:
    def test_two_point_worked_example(self):
        points = [_pt(0.0, 0, 0.7, f1=0.1), _pt(1.0, 0, 0.6, f1=0.2)]
        front = pareto_front(points, FairnessNotion.EQUALIZED_ODDS)
        assert len(front) == 1
        assert front.points[0].accuracy == 0.7
        assert front.unfairness == [0.1]

    def test_matches_brute_force_on_500_random_clouds(self):
        rng = np.random.default_rng(17)
        notion = FairnessNotion.EQUALIZED_ODDS
        for _ in range(500):
            n = int(rng.integers(1, 40))
            # One-decimal rounding plants plenty of exact duplicates.
            values = np.round(rng.uniform(-1, 1, n), 1)
            accs = np.round(rng.uniform(0, 1, n), 1)
            points = [
                _pt(float(rng.integers(0, 3)), int(rng.integers(0, 5)),
                    float(a), f1=float(v))
                for v, a in zip(values, accs)
            ]
            front = pareto_front(points, notion)
            got = set(zip(front.unfairness,
                          (p.accuracy for p in front.points)))
            expected = _brute_force_front(
                [(abs(v), a) for v, a in zip(values, accs)])
            assert got == expected

    def test_front_is_sorted_and_strictly_improving(self):
        rng = np.random.default_rng(23)
        points = [
            _pt(0.0, i, float(rng.uniform(0, 1)),
                f1=float(rng.uniform(-1, 1)))
            for i in range(60)
        ]
        front = pareto_front(points, FairnessNotion.EQUALIZED_ODDS)
        u = front.unfairness
        acc = [p.accuracy for p in front.points]
        assert u == sorted(u)
        assert all(a2 > a1 for a1, a2 in zip(acc, acc[1:]))

    def test_exact_duplicates_collapse_to_lowest_seed_then_lambda(self):
        points = [
            _pt(3.0, 5, 0.8, f1=0.1),
            _pt(1.0, 2, 0.8, f1=0.1),   # same coordinate, lowest seed
            _pt(0.5, 2, 0.8, f1=-0.1),  # same coordinate, same seed, lower lam
        ]
        front = pareto_front(points, FairnessNotion.EQUALIZED_ODDS)
        assert len(front) == 1
        assert front.points[0].seed == 2
        assert front.points[0].lam == 0.5

    def test_undefined_values_are_skipped(self):
        points = [_pt(0.0, 0, 0.9), _pt(1.0, 0, 0.6, f1=0.3)]
        front = pareto_front(points, FairnessNotion.EQUALIZED_ODDS)
        assert len(front) == 1
        assert front.points[0].accuracy == 0.6

    def test_all_undefined_raises_empty_front(self):
        points = [_pt(0.0, 0, 0.9), _pt(1.0, 0, 0.6)]
        with pytest.raises(EmptyFrontError):
            pareto_front(points, FairnessNotion.EQUALIZED_ODDS)

    def test_ratio_notion_uses_distance_from_one(self):
        points = [
            _pt(0.0, 0, 0.9, f10=1.5),
            _pt(1.0, 0, 0.8, f10=1.1),
        ]
        front = pareto_front(points, FairnessNotion.DISPARATE_IMPACT)
        assert front.unfairness == [pytest.approx(0.1), pytest.approx(0.5)]

    def test_json_shape(self):
        points = [_pt(0.0, 0, 0.7, f1=0.1)]
        doc = pareto_front(points, FairnessNotion.EQUALIZED_ODDS).to_json_dict()
        assert doc["notion"] == "f1"
        assert doc["notion_name"] == "Equalized Odds"
        assert doc["points"][0]["unfairness"] == 0.1


class TestFairnessBaseline:
    def test_exact_parity_point_not_flagged(self):
        points = [_pt(0.0, 0, 0.52, f1=0.0), _pt(1.0, 0, 0.9, f1=0.4)]
        front = pareto_front(points, FairnessNotion.EQUALIZED_ODDS)
        baseline = fairness_baseline(front)
        assert baseline.accuracy == 0.52
        assert baseline.unfairness == 0.0
        assert baseline.extrapolated is False

    def test_unreached_ideal_flagged_extrapolated(self):
        points = [_pt(0.0, 0, 0.7, f1=0.05), _pt(1.0, 0, 0.9, f1=0.3)]
        front = pareto_front(points, FairnessNotion.EQUALIZED_ODDS)
        baseline = fairness_baseline(front)
        assert baseline.extrapolated is True
        assert baseline.accuracy == 0.7
        # A tolerance at least as large as the residual clears the flag.
        assert fairness_baseline(front, tolerance=0.05).extrapolated is False

    def test_negative_tolerance_rejected(self):
        points = [_pt(0.0, 0, 0.7, f1=0.05)]
        front = pareto_front(points, FairnessNotion.EQUALIZED_ODDS)
        with pytest.raises(ValueError):
            fairness_baseline(front, tolerance=-0.1)

    def test_json_names_the_winning_run(self):
        points = [_pt(0.3, 4, 0.7, f1=0.05)]
        front = pareto_front(points, FairnessNotion.EQUALIZED_ODDS)
        doc = fairness_baseline(front).to_json_dict()
        assert doc["lambda"] == 0.3 and doc["seed"] == 4


# ---------------------------------------------------------------------------
# Violin summaries

class TestViolinSummary:
    def test_standard_normal_median_near_zero(self):
        values = np.random.default_rng(0).normal(0.0, 1.0, 1000)
        summary = violin_summary(values)
        assert abs(summary.quartiles[1]) < 0.1
        assert summary.quartiles[0] < summary.quartiles[1] < summary.quartiles[2]

    def test_density_integrates_to_one(self):
        rng = np.random.default_rng(1)
        for values in (rng.normal(size=500), rng.exponential(size=50),
                       np.array([1.0, 1.0, 2.0])):
            summary = violin_summary(values)
            area = np.trapezoid(summary.density, summary.grid)
            assert area == pytest.approx(1.0, abs=1e-6)

    def test_constant_values_fall_back_to_spike(self):
        summary = violin_summary(np.full(20, 7.5))
        assert summary.bandwidth == pytest.approx(1e-3 * 7.5)
        area = np.trapezoid(summary.density, summary.grid)
        assert area == pytest.approx(1.0, abs=1e-6)
        assert summary.quartiles == (7.5, 7.5, 7.5)

    def test_constant_near_zero_uses_unit_floor(self):
        summary = violin_summary(np.zeros(5))
        assert summary.bandwidth == pytest.approx(1e-3)

    def test_tied_quartiles_do_not_zero_the_bandwidth(self):
        # IQR is 0 but the sd is not; Silverman must use the sd.
        values = np.array([5.0] * 30 + [0.0, 10.0])
        summary = violin_summary(values)
        sd = float(np.std(values))
        assert summary.bandwidth == pytest.approx(
            0.9 * sd * values.size ** (-0.2))

    def test_explicit_bandwidth_respected(self):
        values = np.array([0.0, 1.0, 2.0])
        summary = violin_summary(values, bandwidth=0.5)
        assert summary.bandwidth == 0.5
        assert summary.grid[0] == pytest.approx(0.0 - 1.5)
        assert summary.grid[-1] == pytest.approx(2.0 + 1.5)

    def test_grid_size_and_metadata(self):
        summary = violin_summary([1.0, 2.0], grid_points=64,
                                 variable="age", group="race=Caucasian")
        assert summary.grid.shape == (64,)
        assert summary.density.shape == (64,)
        assert summary.n == 2
        doc = summary.to_json_dict()
        assert doc["variable"] == "age"
        assert len(doc["grid"]) == 64

    def test_input_validation(self):
        with pytest.raises(ArityError):
            violin_summary([])
        with pytest.raises(ValueError):
            violin_summary([1.0], grid_points=1)
        with pytest.raises(ValueError):
            violin_summary([1.0, 2.0], bandwidth=0.0)


# ---------------------------------------------------------------------------
# Wasserstein distance

def _w1_oracle(a, b):
    """Integral of |F_a - F_b| over the merged support."""
    a = np.sort(np.asarray(a, dtype=np.float64))
    b = np.sort(np.asarray(b, dtype=np.float64))
    support = np.unique(np.concatenate([a, b]))
    fa = np.searchsorted(a, support, side="right") / a.size
    fb = np.searchsorted(b, support, side="right") / b.size
    return float(np.sum(np.abs(fa[:-1] - fb[:-1]) * np.diff(support)))


class TestDistributionDistance:
    def test_point_mass_shift(self):
        assert distribution_distance([0.0], [1.0]) == 1.0

    def test_two_point_shift_worked_example(self):
        assert distribution_distance([0.0, 1.0], [1.0, 2.0]) == 1.0

    def test_identity(self):
        rng = np.random.default_rng(2)
        values = rng.normal(size=37)
        assert distribution_distance(values, values) == 0.0

    def test_symmetry(self):
        rng = np.random.default_rng(3)
        a = rng.normal(size=21)
        b = rng.exponential(size=34)
        assert distribution_distance(a, b) == distribution_distance(b, a)

    def test_triangle_inequality(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            a = rng.normal(size=int(rng.integers(1, 30)))
            b = rng.normal(1.0, 2.0, int(rng.integers(1, 30)))
            c = rng.exponential(size=int(rng.integers(1, 30)))
            assert distribution_distance(a, c) <= (
                distribution_distance(a, b) + distribution_distance(b, c)
                + 1e-12)

    def test_matches_cdf_oracle_on_random_pairs(self):
        rng = np.random.default_rng(5)
        for _ in range(500):
            a = rng.normal(0, 2, int(rng.integers(1, 60)))
            b = rng.normal(rng.uniform(-2, 2), 1, int(rng.integers(1, 60)))
            if rng.random() < 0.3:  # force ties across the two samples
                b[: min(a.size, b.size)] = a[: min(a.size, b.size)]
            got = distribution_distance(a, b)
            assert got == pytest.approx(_w1_oracle(a, b), abs=1e-9)

    def test_mean_shift_for_equal_sizes(self):
        # With equal sample sizes W1 is the mean absolute quantile gap.
        a = np.array([0.0, 1.0, 5.0])
        b = np.array([2.0, 3.0, 10.0])
        assert distribution_distance(a, b) == pytest.approx(
            np.mean(np.abs(np.sort(a) - np.sort(b))))

    def test_empty_input_rejected(self):
        with pytest.raises(ArityError):
            distribution_distance([], [1.0])


# ---------------------------------------------------------------------------
# Proxy analysis

def _noise_table(n=10000, seed=0):
    """Binary noise feature independent of race and outcome."""
    rng = np.random.default_rng(seed)
    records = []
    for _ in range(n):
        records.append(make_record(
            race=("African-American" if rng.random() < 0.5 else "Caucasian"),
            two_year_recid=int(rng.random() < 0.5),
            juv_fel_count=int(rng.random() < 0.5),
        ))
    return RecordTable(records)


class TestProxyReport:
    def test_independent_feature_scores_near_zero(self):
        report = proxy_report(_noise_table(), features=("juv_fel_count",),
                              partitions=("race", "outcome"))
        distances = report.distances["juv_fel_count"]
        assert distances["race"] < 0.05
        assert distances["outcome"] < 0.05
        assert report.proxy_scores["juv_fel_count"]["race_vs_outcome"] < 0.05

    def test_perfectly_separating_feature_has_distance_one(self):
        records = [
            make_record(race="African-American", age=20, two_year_recid=1),
            make_record(race="African-American", age=20, two_year_recid=0),
            make_record(race="Caucasian", age=21, two_year_recid=1),
            make_record(race="Caucasian", age=21, two_year_recid=0),
        ]
        report = proxy_report(RecordTable(records), features=("age",),
                              partitions=("race", "outcome"))
        assert report.distances["age"]["race"] == 1.0

    def test_identical_partitions_give_exactly_zero_score(self):
        # Race and outcome coincide row by row, so a feature separates
        # them identically and the proxy score vanishes.
        rng = np.random.default_rng(6)
        records = []
        for _ in range(60):
            is_aa = rng.random() < 0.5
            records.append(make_record(
                race=("African-American" if is_aa else "Caucasian"),
                two_year_recid=int(is_aa),
                priors_count=int(rng.integers(0, 15)) + (3 if is_aa else 0),
            ))
        report = proxy_report(RecordTable(records), features=("priors_count",),
                              partitions=("race", "outcome"))
        assert report.proxy_scores["priors_count"]["race_vs_outcome"] == \
            pytest.approx(0.0, abs=1e-12)

    def test_non_numeric_feature_rejected(self):
        with pytest.raises(TypeError):
            proxy_report(_noise_table(100), features=("race",))

    def test_non_binary_partition_rejected(self):
        records = [
            make_record(race="African-American"),
            make_record(race="Caucasian"),
            make_record(race="Hispanic"),
        ]
        with pytest.raises(ArityError):
            proxy_report(RecordTable(records), partitions=("race", "outcome"))
        with pytest.raises(ArityError):
            proxy_report(_noise_table(50), partitions=("race", "zodiac"))
        with pytest.raises(ArityError):
            proxy_report(_noise_table(50), partitions=("race",))

    def test_missing_values_excluded_from_the_feature(self):
        records = [
            make_record(race="African-American", two_year_recid=1,
                        days_b_screening_arrest=5),
            make_record(race="African-American", two_year_recid=0,
                        days_b_screening_arrest=None),
            make_record(race="Caucasian", two_year_recid=1,
                        days_b_screening_arrest=7),
            make_record(race="Caucasian", two_year_recid=0,
                        days_b_screening_arrest=9),
        ]
        report = proxy_report(RecordTable(records),
                              features=("days_b_screening_arrest",),
                              partitions=("race", "outcome"))
        violins = report.violins["days_b_screening_arrest"]["race"]
        assert violins["African-American"].n == 1
        assert violins["Caucasian"].n == 2

    def test_default_run_yields_eight_violins(self):
        rng = np.random.default_rng(7)
        records = [
            make_record(
                race=("African-American" if rng.random() < 0.5 else "Caucasian"),
                two_year_recid=int(rng.random() < 0.5),
                age=int(rng.integers(18, 41)),
                priors_count=int(rng.integers(0, 20)),
            )
            for _ in range(80)
        ]
        report = proxy_report(RecordTable(records))
        count = sum(
            len(sides)
            for by_partition in report.violins.values()
            for sides in by_partition.values()
        )
        assert count == 8  # 2 features x 2 partitions x 2 sides
        doc = report.to_json_dict()
        assert set(doc["partitions"]) == {"race", "outcome"}

    def test_sex_partition_supported(self):
        rng = np.random.default_rng(8)
        records = [
            make_record(
                sex=("Male" if rng.random() < 0.5 else "Female"),
                two_year_recid=int(rng.random() < 0.5),
                age=int(rng.integers(18, 41)),
            )
            for _ in range(40)
        ]
        report = proxy_report(RecordTable(records), features=("age",),
                              partitions=("sex", "outcome"))
        assert report.partitions["sex"] == ("Female", "Male")
        assert "sex_vs_outcome" in report.proxy_scores["age"]
