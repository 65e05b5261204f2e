"""Seeded synthetic data for tests, demos, and desk-scale experiments.

Three generators:

* :func:`separable_matrix` is linearly separable with a margin and has
  group membership independent of everything else, so any decent
  trainer reaches high accuracy with near-zero accuracy difference.
* :func:`biased_matrix` plants group-dependent label rules: the
  majority group's boundary sits at x1 = 0, the minority group's at
  x1 = shift. A single model trained for raw accuracy settles near the
  majority cut and shortchanges the minority, giving a positive
  accuracy difference that a parity penalty can visibly shrink.
* :func:`write_scores_csv` emits a small recidivism-style CSV with the
  columns the ingestion layer expects, including rows that the default
  cohort policy filters out, plus a race-dependent shift in the label
  model so the full pipeline has fairness signal.

Everything is a pure function of its seed.
"""

from __future__ import annotations

import csv

import numpy as np

from .dataset import Record, FeatureMatrix


def separable_matrix(n: int = 200, seed: int = 0,
                     margin: float = 1.0) -> FeatureMatrix:
    """Two-feature, two-group data separable by the sign of x1."""
    rng = np.random.default_rng(seed)
    labels = (rng.random(n) < 0.5).astype(np.int64)
    sign = 2.0 * labels - 1.0
    x1 = sign * (margin / 2.0 + rng.exponential(1.0, n))
    x2 = rng.normal(0.0, 1.0, n)
    groups = (rng.random(n) < 0.5).astype(np.int64)
    return FeatureMatrix(
        values=np.column_stack([x1, x2]),
        column_names=("x1", "x2"),
        labels=labels,
        group_ids=groups,
        group_names=("group0", "group1"),
    )


def biased_matrix(n: int = 4000, seed: int = 0, majority_share: float = 0.7,
                  shift: float = 1.0, flip: float = 0.1) -> FeatureMatrix:
    """Group-dependent label noise: disagreeing decision boundaries.

    Group 1 (share ``majority_share``) follows y = [x1 > 0], group 0
    follows y = [x1 > shift]; both are then flipped with probability
    ``flip``. In the band 0 < x1 < shift the two rules disagree, so a
    shared classifier must trade one group's accuracy against the
    other's: exactly the regime where an accuracy-parity penalty has
    signal.
    """
    rng = np.random.default_rng(seed)
    groups = (rng.random(n) < majority_share).astype(np.int64)
    x1 = rng.normal(0.0, 1.0, n)
    x2 = rng.normal(0.0, 1.0, n)
    cut = np.where(groups == 1, 0.0, shift)
    clean = x1 > cut
    flips = rng.random(n) < flip
    labels = (clean ^ flips).astype(np.int64)
    return FeatureMatrix(
        values=np.column_stack([x1, x2]),
        column_names=("x1", "x2"),
        labels=labels,
        group_ids=groups,
        group_names=("minority", "majority"),
    )


def make_record(**overrides) -> Record:
    """A valid record with every field defaulted; override what matters."""
    fields: dict = {
        "age": 30,
        "sex": "Male",
        "race": "African-American",
        "priors_count": 0,
        "charge_degree": "F",
        "juv_fel_count": 0,
        "juv_misd_count": 0,
        "juv_other_count": 0,
        "two_year_recid": 0,
        "decile_score": 5,
        "days_b_screening_arrest": 0,
        "id": None,
    }
    fields.update(overrides)
    return Record(**fields)


def _sigmoid(z: float) -> float:
    return 1.0 / (1.0 + np.exp(-z))


def write_scores_csv(path, n: int = 600, seed: int = 0) -> None:
    """Write a synthetic recidivism scores CSV.

    Ages run 16 through 49 and a few charge degrees are "O" or have
    stale screening dates, so the default cohort policy has real work
    to do. Recidivism depends on priors, age, and juvenile history,
    plus a race-dependent shift that the feature set cannot fully
    explain; models trained without race therefore show a group
    accuracy gap.
    """
    rng = np.random.default_rng(seed)
    header = [
        "id", "name", "age", "sex", "race", "priors_count",
        "c_charge_degree", "juv_fel_count", "juv_misd_count",
        "juv_other_count", "days_b_screening_arrest", "two_year_recid",
        "decile_score",
    ]
    rows = []
    for i in range(n):
        race = ["African-American", "Caucasian", "Hispanic"][
            rng.choice(3, p=[0.5, 0.42, 0.08])
        ]
        sex = "Male" if rng.random() < 0.8 else "Female"
        age = int(rng.integers(16, 50))
        priors = min(int(rng.poisson(2.2)), 30)
        juv_fel = int(rng.poisson(0.08))
        juv_misd = int(rng.poisson(0.12))
        juv_other = int(rng.poisson(0.1))
        charge_roll = rng.random()
        charge = "F" if charge_roll < 0.65 else ("M" if charge_roll < 0.98 else "O")
        days_roll = rng.random()
        if days_roll < 0.90:
            days = str(int(rng.integers(-30, 31)))
        elif days_roll < 0.96:
            days = str(int(rng.integers(31, 300)))
        else:
            days = ""
        score = (0.25 * priors - 0.03 * (age - 18)
                 + 0.7 * (juv_fel + juv_misd + juv_other)
                 + (0.45 if race == "African-American" else 0.0) - 0.6)
        recid = int(rng.random() < _sigmoid(score))
        decile = int(np.clip(round(1 + 9 * _sigmoid(score)
                                   + rng.normal(0.0, 0.6)), 1, 10))
        rows.append([
            str(i + 1), f"person {i + 1}", str(age), sex, race, str(priors),
            charge, str(juv_fel), str(juv_misd), str(juv_other), days,
            str(recid), str(decile),
        ])
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerows(rows)
