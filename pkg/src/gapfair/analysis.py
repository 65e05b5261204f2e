"""Accuracy-fairness trade-off analysis.

The pipeline is: sweep lambda over seeded training runs to get a cloud
of (unfairness, accuracy) points per fairness notion, filter the cloud
to its Pareto front, read the perfect-fairness accuracy baseline off
the front, and compare feature distributions across partitions with
violin summaries and Wasserstein-1 distances (the proxy analysis).

The baseline is always a measured point: when no point reaches the
ideal within tolerance, the minimum-unfairness point is returned with
an ``extrapolated`` flag instead of inventing an interpolation model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import trainer as trainer_mod
from .dataset import NUMERIC_FIELDS, RecordTable
from .errors import ArityError, EmptyFrontError
from .group_metrics import FairnessNotion, NotionKind
from .model import Architecture

DEFAULT_LAMBDAS = (0.0, 0.01, 0.03, 0.1, 0.3, 1.0, 3.0, 10.0)
DEFAULT_SEEDS = tuple(range(10))

SWEEP_CSV_COLUMNS = (
    "lambda", "seed", "accuracy", "ad",
    *(notion.label for notion in FairnessNotion),
)


@dataclass(frozen=True)
class TradeoffPoint:
    """One sweep cell: a trained model's accuracy and fairness values."""

    lam: float
    seed: int
    accuracy: float
    fairness: dict[FairnessNotion, float | None]
    ad: float

    def to_csv_row(self) -> list[str]:
        row = [repr(self.lam), str(self.seed), repr(self.accuracy), repr(self.ad)]
        for notion in FairnessNotion:
            value = self.fairness[notion]
            row.append("" if value is None else repr(value))
        return row

    @classmethod
    def from_csv_row(cls, row: dict[str, str]) -> "TradeoffPoint":
        fairness = {
            notion: (None if row[notion.label] == "" else float(row[notion.label]))
            for notion in FairnessNotion
        }
        return cls(
            lam=float(row["lambda"]),
            seed=int(row["seed"]),
            accuracy=float(row["accuracy"]),
            fairness=fairness,
            ad=float(row["ad"]),
        )


def lambda_sweep(train_data, test_data, base_config: trainer_mod.TrainConfig,
                 lambdas=DEFAULT_LAMBDAS, seeds=DEFAULT_SEEDS,
                 arch: Architecture | None = None) -> list[TradeoffPoint]:
    """One full train+evaluate per (lambda, seed) cell, under gap loss.

    The lambda = 0 cells double as the weighted-BCE baseline. Points
    come back ordered by the lambda grid, then the seed grid, and the
    whole sweep is deterministic for fixed inputs.
    """
    lambdas = list(lambdas)
    seeds = list(seeds)
    if not lambdas:
        raise ValueError("lambdas must be non-empty")
    if any(lam < 0 for lam in lambdas):
        raise ValueError(f"lambdas must be >= 0, got {lambdas}")
    if not seeds:
        raise ValueError("seeds must be non-empty")

    points: list[TradeoffPoint] = []
    for lam in lambdas:
        for seed in seeds:
            config = replace(base_config, loss="gap", lam=float(lam),
                             seed=int(seed))
            params, _ = trainer_mod.train(train_data, config, arch)
            result = trainer_mod.evaluate(params, test_data)
            points.append(TradeoffPoint(
                lam=float(lam),
                seed=int(seed),
                accuracy=result.report.accuracy,
                fairness=dict(result.report.values),
                ad=result.report.accuracy_difference,
            ))
    return points


def unfairness(value: float | None, notion: FairnessNotion,
               log_ratio: bool = False) -> float | None:
    """Scalarize a notion value as distance from its ideal.

    Difference notions: |value|. Ratio notions: |value - 1|, or
    |log(value)| under ``log_ratio`` for scale symmetry (undefined for
    non-positive ratios).
    """
    if value is None:
        return None
    if notion.kind is NotionKind.RATIO and log_ratio:
        if value <= 0:
            return None
        return abs(math.log(value))
    return abs(value - notion.ideal)


@dataclass
class ParetoFront:
    """Non-dominated trade-off points, sorted by unfairness ascending."""

    notion: FairnessNotion
    points: list[TradeoffPoint]
    unfairness: list[float]
    log_ratio: bool = False

    def __len__(self) -> int:
        return len(self.points)

    def to_json_dict(self) -> dict:
        return {
            "notion": self.notion.label,
            "notion_name": self.notion.display_name,
            "log_ratio": self.log_ratio,
            "points": [
                {
                    "lambda": p.lam,
                    "seed": p.seed,
                    "accuracy": p.accuracy,
                    "value": p.fairness[self.notion],
                    "unfairness": u,
                    "ad": p.ad,
                }
                for p, u in zip(self.points, self.unfairness)
            ],
        }


def pareto_front(points: list[TradeoffPoint], notion: FairnessNotion,
                 log_ratio: bool = False) -> ParetoFront:
    """Filter a sweep cloud to its non-dominated set for one notion.

    Point p dominates q iff u(p) <= u(q) and acc(p) >= acc(q) with at
    least one strict. Exact duplicates on (u, acc) collapse to the
    lowest (seed, lambda) representative. Points with an undefined
    notion value are skipped; if none remain the front is an error, not
    an empty list.
    """
    candidates: list[tuple[float, float, int, float, TradeoffPoint]] = []
    for point in points:
        u = unfairness(point.fairness[notion], notion, log_ratio)
        if u is not None:
            candidates.append((u, point.accuracy, point.seed, point.lam, point))
    if not candidates:
        raise EmptyFrontError(
            f"no sweep point has a defined value for {notion.label} "
            f"({notion.display_name})"
        )

    # Collapse exact (u, accuracy) duplicates to min (seed, lambda).
    by_coord: dict[tuple[float, float], tuple[float, float, int, float, TradeoffPoint]] = {}
    for cand in candidates:
        coord = (cand[0], cand[1])
        best = by_coord.get(coord)
        if best is None or (cand[2], cand[3]) < (best[2], best[3]):
            by_coord[coord] = cand

    # Sweep in (u asc, acc desc) order: survivors strictly raise accuracy.
    ordered = sorted(by_coord.values(),
                     key=lambda c: (c[0], -c[1], c[2], c[3]))
    front: list[tuple[float, TradeoffPoint]] = []
    best_acc = -math.inf
    for u, acc, _, _, point in ordered:
        if acc > best_acc:
            front.append((u, point))
            best_acc = acc
    return ParetoFront(
        notion=notion,
        points=[point for _, point in front],
        unfairness=[u for u, _ in front],
        log_ratio=log_ratio,
    )


@dataclass(frozen=True)
class FairnessBaseline:
    """Accuracy at (or nearest to) perfect fairness on a front."""

    accuracy: float
    unfairness: float
    extrapolated: bool
    point: TradeoffPoint

    def to_json_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "unfairness": self.unfairness,
            "extrapolated": self.extrapolated,
            "lambda": self.point.lam,
            "seed": self.point.seed,
        }


def fairness_baseline(front: ParetoFront,
                      tolerance: float = 0.0) -> FairnessBaseline:
    """Accuracy of the minimum-unfairness front point.

    When that point's unfairness still exceeds ``tolerance`` the
    baseline is flagged extrapolated: the measured cloud never reached
    the ideal, and no curve is fitted to pretend otherwise.
    """
    if tolerance < 0:
        raise ValueError(f"tolerance must be >= 0, got {tolerance}")
    if not front.points:
        raise EmptyFrontError("cannot take a baseline from an empty front")
    u_min = front.unfairness[0]
    point = front.points[0]
    return FairnessBaseline(
        accuracy=point.accuracy,
        unfairness=u_min,
        extrapolated=u_min > tolerance,
        point=point,
    )


@dataclass
class ViolinSummary:
    """Gaussian-KDE density plus quartiles for one variable in one group."""

    variable: str
    group: str
    n: int
    bandwidth: float
    quartiles: tuple[float, float, float]
    grid: np.ndarray
    density: np.ndarray

    def to_json_dict(self) -> dict:
        return {
            "variable": self.variable,
            "group": self.group,
            "n": self.n,
            "bandwidth": self.bandwidth,
            "quartiles": list(self.quartiles),
            "grid": self.grid.tolist(),
            "density": self.density.tolist(),
        }


def violin_summary(values, grid_points: int = 256,
                   bandwidth: float | None = None,
                   variable: str = "", group: str = "") -> ViolinSummary:
    """Density estimate for a violin shape.

    Automatic bandwidth is Silverman's rule, h = 0.9 * s * n^(-1/5)
    with s = min(sd, IQR/1.34); a zero candidate is skipped so that
    tied quartiles do not zero out the bandwidth, and fully constant
    values fall back to h = 1e-3 * max(1, |value|). The grid spans
    [min - 3h, max + 3h] and the density is renormalized to integrate
    to exactly 1 by the trapezoid rule.
    """
    x = np.asarray(values, dtype=np.float64)
    if x.ndim != 1 or x.size == 0:
        raise ArityError("values must be a non-empty 1-D vector")
    if grid_points < 2:
        raise ValueError(f"grid_points must be >= 2, got {grid_points}")

    if bandwidth is not None:
        if bandwidth <= 0:
            raise ValueError(f"bandwidth must be positive, got {bandwidth}")
        h = float(bandwidth)
    else:
        sd = float(np.std(x))
        q75, q25 = np.percentile(x, [75, 25])
        candidates = [c for c in (sd, (q75 - q25) / 1.34) if c > 0]
        if candidates:
            h = 0.9 * min(candidates) * x.size ** (-0.2)
        else:
            h = 1e-3 * max(1.0, abs(float(x[0])))

    grid = np.linspace(x.min() - 3.0 * h, x.max() + 3.0 * h, grid_points)
    z = (grid[:, None] - x[None, :]) / h
    density = np.exp(-0.5 * z * z).sum(axis=1) / (x.size * h * np.sqrt(2.0 * np.pi))
    area = np.trapezoid(density, grid)
    density = density / area

    q1, q2, q3 = np.percentile(x, [25, 50, 75])
    return ViolinSummary(
        variable=variable,
        group=group,
        n=int(x.size),
        bandwidth=h,
        quartiles=(float(q1), float(q2), float(q3)),
        grid=grid,
        density=density,
    )


def distribution_distance(a, b) -> float:
    """Wasserstein-1 distance between two empirical distributions.

    Computed as the quantile-function integral: the merged set of
    quantile levels i/n_a and j/n_b partitions (0, 1] into intervals on
    which both quantile functions are constant, and the distance is the
    width-weighted sum of |Q_a - Q_b|. Exact for samples, no binning.
    """
    a = np.sort(np.asarray(a, dtype=np.float64))
    b = np.sort(np.asarray(b, dtype=np.float64))
    if a.size == 0 or b.size == 0:
        raise ArityError("both vectors must be non-empty")
    levels_a = np.arange(1, a.size + 1) / a.size
    levels_b = np.arange(1, b.size + 1) / b.size
    levels = np.union1d(levels_a, levels_b)
    widths = np.diff(np.concatenate(([0.0], levels)))
    # Index of the order statistic covering each level; searchsorted on
    # the very arrays that built `levels` avoids float round-off.
    idx_a = np.searchsorted(levels_a, levels, side="left")
    idx_b = np.searchsorted(levels_b, levels, side="left")
    return float(np.sum(widths * np.abs(a[idx_a] - b[idx_b])))


@dataclass
class ProxyReport:
    """Distribution distances of features across binary partitions.

    For every feature and partition, the table holds the Wasserstein-1
    distance between the feature conditioned on the two partition
    sides, plus the per-side violin summaries. The proxy score of a
    partition pair is |d(f|P) - d(f|Q)|: near zero means the feature
    separates the two partitions equally well, i.e. it proxies one for
    the other.
    """

    features: list[str]
    partitions: dict[str, tuple[str, str]]
    distances: dict[str, dict[str, float]]
    proxy_scores: dict[str, dict[str, float]]
    violins: dict[str, dict[str, dict[str, ViolinSummary]]]

    def to_json_dict(self) -> dict:
        return {
            "features": list(self.features),
            "partitions": {k: list(v) for k, v in self.partitions.items()},
            "distances": self.distances,
            "proxy_scores": self.proxy_scores,
            "violins": {
                feature: {
                    partition: {
                        side: summary.to_json_dict()
                        for side, summary in sides.items()
                    }
                    for partition, sides in by_partition.items()
                }
                for feature, by_partition in self.violins.items()
            },
        }


def _partition_sides(table: RecordTable, partition: str):
    """Two (side name, row mask) pairs for a binary partition."""
    if partition == "outcome":
        values = [str(r.two_year_recid) for r in table]
    elif partition in ("race", "sex"):
        values = [getattr(r, partition) for r in table]
    else:
        raise ArityError(
            f"unknown partition {partition!r}; expected 'race', 'sex', "
            "or 'outcome'"
        )
    sides = sorted(set(values))
    if len(sides) != 2:
        raise ArityError(
            f"partition {partition!r} must be binary, found sides {sides}"
        )
    masks = [
        np.array([v == side for v in values], dtype=bool)
        for side in sides
    ]
    return (sides[0], masks[0]), (sides[1], masks[1])


def proxy_report(table: RecordTable,
                 features=("age", "priors_count"),
                 partitions=("race", "outcome")) -> ProxyReport:
    """Quantify how well features proxy one partition for another.

    Rows with a missing value of a feature are excluded from that
    feature's arrays. Features must be numeric record fields.
    """
    features = list(features)
    partitions = list(partitions)
    if len(partitions) < 2:
        raise ArityError("need at least two partitions to compare")
    for feature in features:
        if feature not in NUMERIC_FIELDS:
            raise TypeError(
                f"feature {feature!r} is not numeric; choose from "
                f"{list(NUMERIC_FIELDS)}"
            )

    side_info = {p: _partition_sides(table, p) for p in partitions}
    partition_sides = {
        p: (side_info[p][0][0], side_info[p][1][0]) for p in partitions
    }

    distances: dict[str, dict[str, float]] = {}
    violins: dict[str, dict[str, dict[str, ViolinSummary]]] = {}
    for feature in features:
        raw = [getattr(r, feature) for r in table]
        present = np.array([v is not None for v in raw], dtype=bool)
        column = np.array([0.0 if v is None else float(v) for v in raw])
        distances[feature] = {}
        violins[feature] = {}
        for partition in partitions:
            (name0, mask0), (name1, mask1) = side_info[partition]
            side0 = column[mask0 & present]
            side1 = column[mask1 & present]
            if side0.size == 0 or side1.size == 0:
                raise ArityError(
                    f"feature {feature!r} has no values on one side of "
                    f"partition {partition!r}"
                )
            distances[feature][partition] = distribution_distance(side0, side1)
            violins[feature][partition] = {
                name0: violin_summary(side0, variable=feature,
                                      group=f"{partition}={name0}"),
                name1: violin_summary(side1, variable=feature,
                                      group=f"{partition}={name1}"),
            }

    proxy_scores: dict[str, dict[str, float]] = {}
    for feature in features:
        proxy_scores[feature] = {}
        for i in range(len(partitions)):
            for j in range(i + 1, len(partitions)):
                pi, pj = partitions[i], partitions[j]
                proxy_scores[feature][f"{pi}_vs_{pj}"] = abs(
                    distances[feature][pi] - distances[feature][pj]
                )

    return ProxyReport(
        features=features,
        partitions=partition_sides,
        distances=distances,
        proxy_scores=proxy_scores,
        violins=violins,
    )
