"""Group confusion counts and classical group-fairness notions.

Sixteen two-group fairness notions (labeled f1 through f16) are
implemented exactly as conventionally printed, with group subscript 0
for the protected group and 1 for the reference group. Difference
notions are ideal at 0, ratio notions at 1. Any formula whose
denominator is zero evaluates to an explicit undefined marker
(``None``) rather than infinity or NaN, so reports stay serializable.

Two quirks of the printed table are preserved deliberately: f1 and f15
share one formula, and f2/f3 normalize both groups' error counts by the
combined sample size. Conventional alternatives are exposed under
separate names (:func:`absolute_equalized_odds`,
:func:`group_error_difference`, :func:`group_error_ratio`) and are
never substituted for the printed forms.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ArityError, DegenerateGroupError, DimensionError


class NotionKind(enum.Enum):
    DIFFERENCE = "difference"
    RATIO = "ratio"

    @property
    def ideal(self) -> float:
        return 0.0 if self is NotionKind.DIFFERENCE else 1.0


class FairnessNotion(enum.Enum):
    """The sixteen notions, each carrying its label, name, and kind."""

    EQUALIZED_ODDS = ("f1", "Equalized Odds", NotionKind.DIFFERENCE)
    ERROR_DIFFERENCE = ("f2", "Error difference", NotionKind.DIFFERENCE)
    ERROR_RATIO = ("f3", "Error ratio", NotionKind.RATIO)
    DISCOVERY_DIFFERENCE = ("f4", "Discovery difference", NotionKind.DIFFERENCE)
    DISCOVERY_RATIO = ("f5", "Discovery ratio", NotionKind.RATIO)
    PREDICTIVE_EQUALITY = ("f6", "Predictive Equality", NotionKind.DIFFERENCE)
    FPR_RATIO = ("f7", "FPR ratio", NotionKind.RATIO)
    FOR_DIFFERENCE = ("f8", "False Omission rate (FOR) difference",
                      NotionKind.DIFFERENCE)
    FOR_RATIO = ("f9", "False Omission rate (FOR) ratio", NotionKind.RATIO)
    DISPARATE_IMPACT = ("f10", "Disparate Impact", NotionKind.RATIO)
    STATISTICAL_PARITY = ("f11", "Statistical Parity", NotionKind.DIFFERENCE)
    EQUAL_OPPORTUNITY = ("f12", "Equal Opportunity", NotionKind.DIFFERENCE)
    FNR_DIFFERENCE = ("f13", "FNR difference", NotionKind.DIFFERENCE)
    FNR_RATIO = ("f14", "FNR ratio", NotionKind.RATIO)
    AVERAGE_ODD_DIFFERENCE = ("f15", "Average odd difference",
                              NotionKind.DIFFERENCE)
    PREDICTIVE_PARITY = ("f16", "Predictive Parity", NotionKind.DIFFERENCE)

    def __init__(self, label: str, display_name: str, kind: NotionKind):
        self.label = label
        self.display_name = display_name
        self.kind = kind

    @property
    def ideal(self) -> float:
        return self.kind.ideal

    @classmethod
    def from_label(cls, label: str) -> "FairnessNotion":
        for member in cls:
            if member.label == label:
                return member
        raise KeyError(f"unknown fairness notion label {label!r}")


@dataclass(frozen=True, eq=False)
class GroupConfusion:
    """Per-group TP, FP, TN, FN counts for G groups."""

    tp: np.ndarray
    fp: np.ndarray
    tn: np.ndarray
    fn: np.ndarray

    def __post_init__(self):
        for name in ("tp", "fp", "tn", "fn"):
            object.__setattr__(self, name,
                               np.asarray(getattr(self, name), dtype=np.int64))
        shapes = {self.tp.shape, self.fp.shape, self.tn.shape, self.fn.shape}
        if len(shapes) != 1 or self.tp.ndim != 1 or self.tp.size == 0:
            raise DimensionError(
                "tp, fp, tn, fn must be equal-length non-empty 1-D arrays"
            )
        if min(self.tp.min(), self.fp.min(), self.tn.min(), self.fn.min()) < 0:
            raise ValueError("confusion counts must be non-negative")
        if (self.group_sizes == 0).any():
            raise DegenerateGroupError(
                "every group must contain at least one sample"
            )

    @property
    def n_groups(self) -> int:
        return self.tp.size

    @property
    def group_sizes(self) -> np.ndarray:
        return self.tp + self.fp + self.tn + self.fn

    @property
    def n_samples(self) -> int:
        return int(self.group_sizes.sum())

    def group(self, g: int) -> dict[str, int]:
        return {
            "tp": int(self.tp[g]),
            "fp": int(self.fp[g]),
            "tn": int(self.tn[g]),
            "fn": int(self.fn[g]),
            "n": int(self.group_sizes[g]),
        }

    def swapped(self) -> "GroupConfusion":
        """Group order reversed (subscript 0 becomes 1 and vice versa)."""
        return GroupConfusion(
            tp=self.tp[::-1], fp=self.fp[::-1],
            tn=self.tn[::-1], fn=self.fn[::-1],
        )


def confusion_by_group(predicted, actual, groups) -> GroupConfusion:
    """Count TP/FP/TN/FN per group.

    Convention: predicted=1 and actual=1 is TP, predicted=1 and
    actual=0 is FP, predicted=0 and actual=0 is TN, predicted=0 and
    actual=1 is FN. Group ids must be 0..G-1 with every id present.
    """
    predicted = np.asarray(predicted, dtype=np.int64)
    actual = np.asarray(actual, dtype=np.int64)
    groups = np.asarray(groups, dtype=np.int64)
    if predicted.ndim != 1 or actual.ndim != 1 or groups.ndim != 1:
        raise DimensionError("predicted, actual, groups must be 1-D")
    if not (predicted.shape == actual.shape == groups.shape):
        raise DimensionError(
            f"length mismatch: predicted {predicted.shape}, "
            f"actual {actual.shape}, groups {groups.shape}"
        )
    if predicted.size == 0:
        raise ArityError("need at least one sample")
    for name, vec in (("predicted", predicted), ("actual", actual)):
        if not np.isin(vec, (0, 1)).all():
            raise ValueError(f"{name} must be binary 0/1")
    if groups.min() < 0:
        raise DimensionError("group ids must be non-negative")
    n_groups = int(groups.max()) + 1
    counts = np.bincount(groups, minlength=n_groups)
    missing = np.flatnonzero(counts == 0)
    if missing.size:
        raise DegenerateGroupError(
            f"group ids {missing.tolist()} have no samples"
        )
    tp = np.bincount(groups[(predicted == 1) & (actual == 1)], minlength=n_groups)
    fp = np.bincount(groups[(predicted == 1) & (actual == 0)], minlength=n_groups)
    tn = np.bincount(groups[(predicted == 0) & (actual == 0)], minlength=n_groups)
    fn = np.bincount(groups[(predicted == 0) & (actual == 1)], minlength=n_groups)
    return GroupConfusion(tp=tp, fp=fp, tn=tn, fn=fn)


def _rate(num: float, den: float) -> float | None:
    if den == 0:
        return None
    return num / den


def _diff(a: float | None, b: float | None) -> float | None:
    if a is None or b is None:
        return None
    return a - b


def _ratio(a: float | None, b: float | None) -> float | None:
    if a is None or b is None or b == 0:
        return None
    return a / b


def fairness_metric(gc: GroupConfusion, notion: FairnessNotion) -> float | None:
    """Evaluate one notion on a two-group confusion.

    Returns ``None`` when any denominator in the printed formula is
    zero. Raises :class:`ArityError` unless exactly two groups are
    present, since the formulas are written for subscripts 0 and 1.
    """
    if gc.n_groups != 2:
        raise ArityError(
            f"fairness notions are two-group formulas, got {gc.n_groups} groups"
        )
    tp0, fp0, tn0, fn0 = (int(gc.tp[0]), int(gc.fp[0]), int(gc.tn[0]), int(gc.fn[0]))
    tp1, fp1, tn1, fn1 = (int(gc.tp[1]), int(gc.fp[1]), int(gc.tn[1]), int(gc.fn[1]))
    n0 = tp0 + fp0 + tn0 + fn0
    n1 = tp1 + fp1 + tn1 + fn1
    total = n0 + n1

    fpr0 = _rate(fp0, fp0 + tn0)
    fpr1 = _rate(fp1, fp1 + tn1)
    tpr0 = _rate(tp0, tp0 + fn0)
    tpr1 = _rate(tp1, tp1 + fn1)
    fnr0 = _rate(fn0, fn0 + tp0)
    fnr1 = _rate(fn1, fn1 + tp1)
    fdr0 = _rate(fp0, tp0 + fp0)
    fdr1 = _rate(fp1, tp1 + fp1)
    for0 = _rate(fn0, tn0 + fn0)
    for1 = _rate(fn1, tn1 + fn1)
    ppv0 = _rate(tp0, tp0 + fp0)
    ppv1 = _rate(tp1, tp1 + fp1)
    sel0 = _rate(tp0 + fp0, n0)
    sel1 = _rate(tp1 + fp1, n1)
    err0 = _rate(fp0 + fn0, total)
    err1 = _rate(fp1 + fn1, total)

    if notion in (FairnessNotion.EQUALIZED_ODDS,
                  FairnessNotion.AVERAGE_ODD_DIFFERENCE):
        # f1 and f15 print the same formula; both are kept as printed.
        if None in (fpr0, fpr1, tpr0, tpr1):
            return None
        return 0.5 * ((fpr0 - fpr1) + (tpr0 - tpr1))
    if notion is FairnessNotion.ERROR_DIFFERENCE:
        return _diff(err0, err1)
    if notion is FairnessNotion.ERROR_RATIO:
        return _ratio(err0, err1)
    if notion is FairnessNotion.DISCOVERY_DIFFERENCE:
        return _diff(fdr0, fdr1)
    if notion is FairnessNotion.DISCOVERY_RATIO:
        return _ratio(fdr0, fdr1)
    if notion is FairnessNotion.PREDICTIVE_EQUALITY:
        return _diff(fpr0, fpr1)
    if notion is FairnessNotion.FPR_RATIO:
        return _ratio(fpr0, fpr1)
    if notion is FairnessNotion.FOR_DIFFERENCE:
        return _diff(for0, for1)
    if notion is FairnessNotion.FOR_RATIO:
        return _ratio(for0, for1)
    if notion is FairnessNotion.DISPARATE_IMPACT:
        return _ratio(sel0, sel1)
    if notion is FairnessNotion.STATISTICAL_PARITY:
        return _diff(sel0, sel1)
    if notion is FairnessNotion.EQUAL_OPPORTUNITY:
        return _diff(tpr0, tpr1)
    if notion is FairnessNotion.FNR_DIFFERENCE:
        return _diff(fnr0, fnr1)
    if notion is FairnessNotion.FNR_RATIO:
        return _ratio(fnr0, fnr1)
    if notion is FairnessNotion.PREDICTIVE_PARITY:
        return _diff(ppv0, ppv1)
    raise KeyError(f"unhandled notion {notion!r}")


def accuracy_difference(gc: GroupConfusion) -> float:
    """AD = accuracy of group 1 minus accuracy of group 0."""
    if gc.n_groups != 2:
        raise ArityError(
            f"accuracy difference is a two-group quantity, got {gc.n_groups}"
        )
    sizes = gc.group_sizes
    acc0 = (gc.tp[0] + gc.tn[0]) / sizes[0]
    acc1 = (gc.tp[1] + gc.tn[1]) / sizes[1]
    return float(acc1 - acc0)


def overall_accuracy(gc: GroupConfusion) -> float:
    return float((gc.tp.sum() + gc.tn.sum()) / gc.n_samples)


@dataclass
class FairnessReport:
    """All sixteen notions plus accuracy and accuracy difference."""

    values: dict[FairnessNotion, float | None]
    accuracy: float
    accuracy_difference: float
    group_names: tuple[str, str]

    def __getitem__(self, notion: FairnessNotion) -> float | None:
        return self.values[notion]

    def to_json_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "accuracy_difference": self.accuracy_difference,
            "group_names": {"0": self.group_names[0], "1": self.group_names[1]},
            "notions": {
                notion.label: {
                    "name": notion.display_name,
                    "kind": notion.kind.value,
                    "value": self.values[notion],
                }
                for notion in FairnessNotion
            },
        }


def report_from_confusion(gc: GroupConfusion,
                          group_names: tuple[str, str] | None = None
                          ) -> FairnessReport:
    if gc.n_groups != 2:
        raise ArityError(
            f"a fairness report needs exactly two groups, got {gc.n_groups}"
        )
    if group_names is None:
        group_names = ("group0", "group1")
    return FairnessReport(
        values={notion: fairness_metric(gc, notion) for notion in FairnessNotion},
        accuracy=overall_accuracy(gc),
        accuracy_difference=accuracy_difference(gc),
        group_names=(group_names[0], group_names[1]),
    )


def full_report(predicted, actual, groups,
                group_names: tuple[str, str] | None = None) -> FairnessReport:
    """Confusion counting plus all sixteen notions in one call."""
    return report_from_confusion(confusion_by_group(predicted, actual, groups),
                                 group_names=group_names)


def absolute_equalized_odds(gc: GroupConfusion) -> float | None:
    """Magnitude form 0.5 * (|dFPR| + |dTPR|).

    This is the common literature definition of the equalized odds gap.
    It is not the printed f1 formula (which keeps signs and can cancel)
    and is exposed under this distinct name only.
    """
    fpr_gap = fairness_metric(gc, FairnessNotion.PREDICTIVE_EQUALITY)
    tpr_gap = fairness_metric(gc, FairnessNotion.EQUAL_OPPORTUNITY)
    if fpr_gap is None or tpr_gap is None:
        return None
    return 0.5 * (abs(fpr_gap) + abs(tpr_gap))


def group_error_difference(gc: GroupConfusion) -> float | None:
    """Per-group-normalized error difference (FP_g+FN_g)/N_g.

    The printed f2 divides both groups' error counts by the combined
    sample size; this conventional variant normalizes each group by its
    own size. It is a documented alternative, never a stand-in for f2.
    """
    if gc.n_groups != 2:
        raise ArityError("two-group formula")
    sizes = gc.group_sizes
    e0 = _rate(int(gc.fp[0] + gc.fn[0]), int(sizes[0]))
    e1 = _rate(int(gc.fp[1] + gc.fn[1]), int(sizes[1]))
    return _diff(e0, e1)


def group_error_ratio(gc: GroupConfusion) -> float | None:
    """Per-group-normalized error ratio; see :func:`group_error_difference`."""
    if gc.n_groups != 2:
        raise ArityError("two-group formula")
    sizes = gc.group_sizes
    e0 = _rate(int(gc.fp[0] + gc.fn[0]), int(sizes[0]))
    e1 = _rate(int(gc.fp[1] + gc.fn[1]), int(sizes[1]))
    return _ratio(e0, e1)
