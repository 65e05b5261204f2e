"""Recidivism cohort ingestion, filtering, encoding, and splitting.

The ingestion path is deliberately strict about schema (missing columns
fail loudly) and deliberately tolerant about individual rows (malformed
rows are dropped and counted rather than aborting a 7000-row load over
one bad line). Downstream stages work on typed containers so that the
modelling code never touches raw CSV strings.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import (
    ArityError,
    DimensionError,
    EmptyCohortError,
    FormatError,
    SchemaError,
    StratificationError,
)

# Canonical field name -> CSV column name in the published scores file.
DEFAULT_COLUMN_MAP: dict[str, str] = {
    "id": "id",
    "age": "age",
    "sex": "sex",
    "race": "race",
    "priors_count": "priors_count",
    "charge_degree": "c_charge_degree",
    "juv_fel_count": "juv_fel_count",
    "juv_misd_count": "juv_misd_count",
    "juv_other_count": "juv_other_count",
    "days_b_screening_arrest": "days_b_screening_arrest",
    "two_year_recid": "two_year_recid",
    "decile_score": "decile_score",
}

# Fields that may be absent in a row without dropping it.
_OPTIONAL_FIELDS = {"id", "days_b_screening_arrest"}

NUMERIC_FIELDS = (
    "age",
    "priors_count",
    "juv_fel_count",
    "juv_misd_count",
    "juv_other_count",
    "decile_score",
    "days_b_screening_arrest",
)
CATEGORICAL_FIELDS = ("sex", "race", "charge_degree")

_NONNEGATIVE_FIELDS = {
    "age",
    "priors_count",
    "juv_fel_count",
    "juv_misd_count",
    "juv_other_count",
}


@dataclass(frozen=True)
class Record:
    """One defendant row after parsing and validation."""

    age: int
    sex: str
    race: str
    priors_count: int
    charge_degree: str
    juv_fel_count: int
    juv_misd_count: int
    juv_other_count: int
    two_year_recid: int
    decile_score: int
    days_b_screening_arrest: int | None = None
    id: int | None = None


class RecordTable:
    """Ordered, immutable collection of records."""

    def __init__(self, records):
        self._records = tuple(records)

    @property
    def records(self) -> tuple[Record, ...]:
        return self._records

    def __len__(self) -> int:
        return len(self._records)

    def __iter__(self):
        return iter(self._records)

    def __getitem__(self, index):
        return self._records[index]

    def __eq__(self, other):
        if not isinstance(other, RecordTable):
            return NotImplemented
        return self._records == other._records

    def __repr__(self):
        return f"RecordTable(n={len(self._records)})"


@dataclass(frozen=True)
class LoadResult:
    """A parsed table plus row-level ingestion diagnostics."""

    table: RecordTable
    rows_read: int
    rows_dropped: int
    drop_reasons: dict[str, int]


def _parse_int(text: str) -> int | None:
    """Parse an integer, accepting a float spelling of a whole number."""
    try:
        return int(text)
    except ValueError:
        pass
    try:
        value = float(text)
    except ValueError:
        return None
    if value != int(value):
        return None
    return int(value)


def load_records(path, column_map: dict[str, str] | None = None) -> LoadResult:
    """Read a recidivism scores CSV into a :class:`RecordTable`.

    Required columns missing from the header raise :class:`SchemaError`;
    a file without any header raises :class:`FormatError`. Individual
    rows with unparseable or out-of-domain values are dropped and
    tallied in ``drop_reasons`` under the offending field name.
    """
    columns = dict(DEFAULT_COLUMN_MAP)
    if column_map:
        unknown = sorted(set(column_map) - set(columns))
        if unknown:
            raise SchemaError(f"unknown canonical fields in column map: {unknown}")
        columns.update(column_map)

    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames
        if header is None:
            raise FormatError(f"{path}: empty file, expected a CSV header")
        required = {
            columns[name]
            for name in columns
            if name not in _OPTIONAL_FIELDS
        }
        missing = sorted(required - set(header))
        if missing:
            raise SchemaError(f"{path}: missing required columns: {missing}")
        have = set(header)

        records: list[Record] = []
        rows_read = 0
        drop_reasons: dict[str, int] = {}

        def drop(reason: str) -> None:
            drop_reasons[reason] = drop_reasons.get(reason, 0) + 1

        for row in reader:
            rows_read += 1
            parsed = _parse_row(row, columns, have, drop)
            if parsed is not None:
                records.append(parsed)

    table = RecordTable(records)
    return LoadResult(
        table=table,
        rows_read=rows_read,
        rows_dropped=rows_read - len(records),
        drop_reasons=drop_reasons,
    )


def _parse_row(row, columns, have, drop) -> Record | None:
    values: dict[str, object] = {}

    for name in ("age", "priors_count", "juv_fel_count", "juv_misd_count",
                 "juv_other_count", "decile_score", "two_year_recid"):
        raw = (row.get(columns[name]) or "").strip()
        if not raw:
            drop(name)
            return None
        parsed = _parse_int(raw)
        if parsed is None:
            drop(name)
            return None
        if name in _NONNEGATIVE_FIELDS and parsed < 0:
            drop(name)
            return None
        values[name] = parsed

    if values["two_year_recid"] not in (0, 1):
        drop("two_year_recid")
        return None

    sex = (row.get(columns["sex"]) or "").strip()
    if sex not in ("Male", "Female"):
        drop("sex")
        return None
    values["sex"] = sex

    race = (row.get(columns["race"]) or "").strip()
    if not race:
        drop("race")
        return None
    values["race"] = race

    charge = (row.get(columns["charge_degree"]) or "").strip()
    if not charge:
        drop("charge_degree")
        return None
    values["charge_degree"] = charge

    days_raw = (row.get(columns["days_b_screening_arrest"]) or "").strip()
    if days_raw:
        days = _parse_int(days_raw)
        if days is None:
            drop("days_b_screening_arrest")
            return None
        values["days_b_screening_arrest"] = days

    if columns["id"] in have:
        id_raw = (row.get(columns["id"]) or "").strip()
        if id_raw:
            parsed_id = _parse_int(id_raw)
            if parsed_id is not None:
                values["id"] = parsed_id

    return Record(**values)  # type: ignore[arg-type]


@dataclass(frozen=True)
class CohortPolicy:
    """Which defendants stay in the study cohort.

    The default policy reproduces the two-race young-adult cohort:
    ages 18 through 40 inclusive, African-American and Caucasian
    defendants, and the usual screening-window data-quality filter
    (arrest within 30 days of the score and no ordinary traffic
    charges).
    """

    age_min: int = 18
    age_max: int = 40
    allowed_races: tuple[str, ...] = ("African-American", "Caucasian")
    group_attribute: str = "race"
    apply_screening_window: bool = True

    def __post_init__(self):
        if self.group_attribute not in ("race", "sex"):
            raise SchemaError(
                f"group_attribute must be 'race' or 'sex', got {self.group_attribute!r}"
            )
        if self.age_min < 0 or self.age_min > self.age_max:
            raise SchemaError(
                f"invalid age window [{self.age_min}, {self.age_max}]"
            )
        if self.group_attribute == "race":
            if not self.allowed_races:
                raise SchemaError("allowed_races must be non-empty")
            if len(set(self.allowed_races)) != len(self.allowed_races):
                raise SchemaError("allowed_races contains duplicates")

    def group_values(self) -> tuple[str, ...]:
        """Group id order: index in this tuple is the integer group id."""
        if self.group_attribute == "race":
            return tuple(self.allowed_races)
        return ("Female", "Male")


@dataclass(frozen=True)
class FilterResult:
    """Filtered table plus the record count surviving each stage."""

    table: RecordTable
    stages: tuple[tuple[str, int], ...]


def filter_cohort(table: RecordTable, policy: CohortPolicy) -> FilterResult:
    """Apply a :class:`CohortPolicy`, reporting per-stage survivor counts.

    Stages run in a fixed order (age window, race restriction,
    screening window) and record order is preserved. An empty final
    cohort raises :class:`EmptyCohortError`.
    """
    stages: list[tuple[str, int]] = [("input", len(table))]
    records = list(table)

    records = [r for r in records if policy.age_min <= r.age <= policy.age_max]
    stages.append(("age", len(records)))

    if policy.group_attribute == "race":
        allowed = set(policy.allowed_races)
        records = [r for r in records if r.race in allowed]
        stages.append(("race", len(records)))

    if policy.apply_screening_window:
        records = [
            r for r in records
            if r.days_b_screening_arrest is not None
            and abs(r.days_b_screening_arrest) <= 30
            and r.charge_degree != "O"
        ]
        stages.append(("screening_window", len(records)))

    if not records:
        raise EmptyCohortError(
            "cohort is empty after filtering; stages: "
            + ", ".join(f"{name}={count}" for name, count in stages)
        )
    return FilterResult(table=RecordTable(records), stages=tuple(stages))


def cohort_summary(table: RecordTable) -> dict:
    """Descriptive counts for a cohort, in JSON-ready form."""
    race_counts: dict[str, int] = {}
    sex_counts: dict[str, int] = {}
    age_counts: dict[int, int] = {}
    for record in table:
        race_counts[record.race] = race_counts.get(record.race, 0) + 1
        sex_counts[record.sex] = sex_counts.get(record.sex, 0) + 1
        age_counts[record.age] = age_counts.get(record.age, 0) + 1
    return {
        "n_records": len(table),
        "race_counts": {k: race_counts[k] for k in sorted(race_counts)},
        "sex_counts": {k: sex_counts[k] for k in sorted(sex_counts)},
        "age_histogram": {str(k): age_counts[k] for k in sorted(age_counts)},
    }


_ALLOWED_NUMERIC = ("age", "priors_count", "juv_fel_count", "juv_misd_count",
                    "juv_other_count", "decile_score")
_ALLOWED_CATEGORICAL = ("sex", "race", "charge_degree")


@dataclass(frozen=True)
class FeatureSchema:
    """Which record fields become model features, and what defines a group.

    The protected attribute and the outcome are never features; the
    constructor enforces this rather than trusting call sites.
    """

    numeric: tuple[str, ...] = ("age", "priors_count", "juv_fel_count",
                                "juv_misd_count", "juv_other_count")
    categorical: tuple[str, ...] = ("sex", "charge_degree")
    group_attribute: str = "race"
    group_values: tuple[str, ...] = ("African-American", "Caucasian")

    def __post_init__(self):
        if self.group_attribute not in ("race", "sex"):
            raise SchemaError(
                f"group_attribute must be 'race' or 'sex', got {self.group_attribute!r}"
            )
        if not self.group_values:
            raise SchemaError("group_values must be non-empty")
        if len(set(self.group_values)) != len(self.group_values):
            raise SchemaError("group_values contains duplicates")
        bad_numeric = sorted(set(self.numeric) - set(_ALLOWED_NUMERIC))
        if bad_numeric:
            raise SchemaError(f"unsupported numeric feature fields: {bad_numeric}")
        bad_cat = sorted(set(self.categorical) - set(_ALLOWED_CATEGORICAL))
        if bad_cat:
            raise SchemaError(f"unsupported categorical feature fields: {bad_cat}")
        overlap = sorted(set(self.numeric) & set(self.categorical))
        if overlap:
            raise SchemaError(f"fields listed as both numeric and categorical: {overlap}")
        if self.group_attribute in self.numeric or self.group_attribute in self.categorical:
            raise SchemaError(
                f"group attribute {self.group_attribute!r} cannot also be a feature"
            )

    @classmethod
    def for_policy(cls, policy: CohortPolicy) -> "FeatureSchema":
        """Default schema matching a cohort policy's grouping choice."""
        if policy.group_attribute == "race":
            return cls(group_attribute="race", group_values=policy.group_values())
        return cls(
            categorical=("race", "charge_degree"),
            group_attribute="sex",
            group_values=policy.group_values(),
        )


@dataclass
class EncodingStats:
    """Standardization and one-hot vocabulary fitted on training data."""

    numeric: dict[str, tuple[float, float]]          # field -> (mean, sd)
    categorical: dict[str, tuple[str, ...]]          # field -> sorted levels

    def to_json_dict(self) -> dict:
        return {
            "numeric": {k: [m, s] for k, (m, s) in self.numeric.items()},
            "categorical": {k: list(v) for k, v in self.categorical.items()},
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "EncodingStats":
        return cls(
            numeric={k: (float(m), float(s)) for k, (m, s) in data["numeric"].items()},
            categorical={k: tuple(v) for k, v in data["categorical"].items()},
        )


@dataclass(eq=False)
class FeatureMatrix:
    """Design matrix with aligned labels, group ids, and group names."""

    values: np.ndarray
    column_names: tuple[str, ...]
    labels: np.ndarray
    group_ids: np.ndarray
    group_names: tuple[str, ...]

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        self.labels = np.asarray(self.labels, dtype=np.int64)
        self.group_ids = np.asarray(self.group_ids, dtype=np.int64)
        if self.values.ndim != 2:
            raise DimensionError(f"values must be 2-D, got shape {self.values.shape}")
        n = self.values.shape[0]
        if self.labels.shape != (n,) or self.group_ids.shape != (n,):
            raise DimensionError(
                f"labels {self.labels.shape} and group_ids {self.group_ids.shape} "
                f"must both have shape ({n},)"
            )
        if self.values.shape[1] != len(self.column_names):
            raise DimensionError(
                f"{self.values.shape[1]} columns but {len(self.column_names)} names"
            )
        if n and (self.group_ids.min() < 0
                  or self.group_ids.max() >= len(self.group_names)):
            raise DimensionError(
                f"group ids must lie in [0, {len(self.group_names)})"
            )
        if n and not np.isin(self.labels, (0, 1)).all():
            raise DimensionError("labels must be binary 0/1")

    @property
    def n_rows(self) -> int:
        return self.values.shape[0]

    @property
    def n_cols(self) -> int:
        return self.values.shape[1]

    def take(self, indices) -> "FeatureMatrix":
        """Row subset in the given index order."""
        indices = np.asarray(indices, dtype=np.int64)
        return FeatureMatrix(
            values=self.values[indices],
            column_names=self.column_names,
            labels=self.labels[indices],
            group_ids=self.group_ids[indices],
            group_names=self.group_names,
        )


@dataclass
class EncodeResult:
    """Encoded matrix, the stats used, and an unseen-level counter."""

    matrix: FeatureMatrix
    stats: EncodingStats
    unseen_levels: int


def encode_features(table: RecordTable, schema: FeatureSchema,
                    stats: EncodingStats | None = None) -> EncodeResult:
    """Turn records into a standardized numeric design matrix.

    Numeric fields are z-scored with population standard deviation;
    a constant column encodes to all zeros instead of dividing by
    zero. Categorical fields expand to one indicator per level (no
    reference level is dropped). When ``stats`` is given it is applied
    as-is, which is how test rows reuse training statistics; levels
    not in the training vocabulary encode as an all-zero block and are
    counted in ``unseen_levels``.
    """
    if len(table) == 0:
        raise ArityError("cannot encode an empty table")

    group_index = {value: i for i, value in enumerate(schema.group_values)}
    group_ids = np.empty(len(table), dtype=np.int64)
    for i, record in enumerate(table):
        value = getattr(record, schema.group_attribute)
        if value not in group_index:
            raise SchemaError(
                f"record {schema.group_attribute}={value!r} is not one of "
                f"the configured group values {list(schema.group_values)}"
            )
        group_ids[i] = group_index[value]

    labels = np.array([r.two_year_recid for r in table], dtype=np.int64)

    numeric_raw = {
        name: np.array([getattr(r, name) for r in table], dtype=np.float64)
        for name in schema.numeric
    }

    if stats is None:
        numeric_stats = {
            name: (float(col.mean()), float(col.std()))
            for name, col in numeric_raw.items()
        }
        categorical_levels = {
            name: tuple(sorted({getattr(r, name) for r in table}))
            for name in schema.categorical
        }
        stats = EncodingStats(numeric=numeric_stats, categorical=categorical_levels)
    else:
        missing = sorted(
            [n for n in schema.numeric if n not in stats.numeric]
            + [c for c in schema.categorical if c not in stats.categorical]
        )
        if missing:
            raise SchemaError(f"encoding stats missing fields: {missing}")

    columns: list[np.ndarray] = []
    names: list[str] = []
    for name in schema.numeric:
        mean, sd = stats.numeric[name]
        col = numeric_raw[name]
        if sd == 0.0:
            columns.append(np.zeros(len(table), dtype=np.float64))
        else:
            columns.append((col - mean) / sd)
        names.append(name)

    unseen = 0
    for name in schema.categorical:
        levels = stats.categorical[name]
        level_index = {level: j for j, level in enumerate(levels)}
        block = np.zeros((len(table), len(levels)), dtype=np.float64)
        for i, record in enumerate(table):
            value = getattr(record, name)
            j = level_index.get(value)
            if j is None:
                unseen += 1
            else:
                block[i, j] = 1.0
        for j, level in enumerate(levels):
            columns.append(block[:, j])
            names.append(f"{name}={level}")

    values = np.column_stack(columns) if columns else np.zeros((len(table), 0))
    matrix = FeatureMatrix(
        values=values,
        column_names=tuple(names),
        labels=labels,
        group_ids=group_ids,
        group_names=schema.group_values,
    )
    return EncodeResult(matrix=matrix, stats=stats, unseen_levels=unseen)


def _round_half_up(x: float) -> int:
    return int(np.floor(x + 0.5))


def _stratified_split_indices(keys, test_fraction: float, seed: int):
    """Index split stratified on arbitrary hashable keys.

    Each distinct key forms a cell; every cell contributes at least one
    index to each side, so cells of size one raise
    :class:`StratificationError`. Output index arrays are sorted so the
    original row order survives within each side.
    """
    if not 0.0 < test_fraction < 1.0:
        raise ValueError(f"test_fraction must lie in (0, 1), got {test_fraction}")
    cells: dict = {}
    for i, key in enumerate(keys):
        cells.setdefault(key, []).append(i)

    rng = np.random.default_rng(seed)
    test_idx: list[int] = []
    train_idx: list[int] = []
    for key in sorted(cells):
        members = np.array(cells[key], dtype=np.int64)
        if len(members) < 2:
            raise StratificationError(
                f"cell {key!r} has {len(members)} record(s); "
                "need at least 2 to appear on both sides of the split"
            )
        order = rng.permutation(len(members))
        n_test = _round_half_up(test_fraction * len(members))
        n_test = min(max(n_test, 1), len(members) - 1)
        shuffled = members[order]
        test_idx.extend(shuffled[:n_test])
        train_idx.extend(shuffled[n_test:])

    return np.sort(np.array(train_idx, dtype=np.int64)), \
        np.sort(np.array(test_idx, dtype=np.int64))


def split(matrix: FeatureMatrix, test_fraction: float, seed: int):
    """Stratified train/test split of a feature matrix.

    Stratification is on the joint (group id, label) cell so both sides
    keep every group and both outcome classes at matching rates. The
    same seed always produces the same split.
    """
    keys = list(zip(matrix.group_ids.tolist(), matrix.labels.tolist()))
    train_idx, test_idx = _stratified_split_indices(keys, test_fraction, seed)
    return matrix.take(train_idx), matrix.take(test_idx)


def split_table(table: RecordTable, schema: FeatureSchema,
                test_fraction: float, seed: int):
    """Stratified record split, used before encoding.

    Splitting at the record level lets standardization statistics be
    fitted on training rows only and then applied to held-out rows.
    """
    keys = [
        (getattr(record, schema.group_attribute), record.two_year_recid)
        for record in table
    ]
    train_idx, test_idx = _stratified_split_indices(keys, test_fraction, seed)
    records = table.records
    train = RecordTable(records[i] for i in train_idx)
    test = RecordTable(records[i] for i in test_idx)
    return train, test


def field_values(table: RecordTable, name: str) -> list:
    """Raw values of one record field, in table order."""
    if name not in NUMERIC_FIELDS and name not in CATEGORICAL_FIELDS \
            and name not in ("two_year_recid", "id"):
        raise SchemaError(f"unknown record field {name!r}")
    return [getattr(record, name) for record in table]
