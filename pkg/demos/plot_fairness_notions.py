"""
Sixteen group-fairness notions from one confusion table
=======================================================

Count a per-group confusion table from predictions, then read all
sixteen classical fairness notions off it. Difference notions are
ideal at 0, ratio notions at 1, and notions whose denominator is
empty come back as None instead of a number.
"""

import numpy as np

from gapfair.group_metrics import (
    FairnessNotion,
    NotionKind,
    accuracy_difference,
    confusion_by_group,
    fairness_metric,
    full_report,
)

rng = np.random.default_rng(0)

# A synthetic scoring outcome: group 1 gets flagged more aggressively.
n = 400
groups = rng.integers(0, 2, n)
actual = rng.integers(0, 2, n)
scores = actual + 0.8 * groups + rng.normal(0.0, 1.0, n)
predicted = (scores > 0.9).astype(int)

confusion = confusion_by_group(predicted, actual, groups)
for g in range(2):
    print(f"group {g}: {confusion.group(g)}")

print(f"\naccuracy difference (AD): {accuracy_difference(confusion):+.4f}\n")

for notion in FairnessNotion:
    value = fairness_metric(confusion, notion)
    ideal = 0.0 if notion.kind is NotionKind.DIFFERENCE else 1.0
    shown = "undefined" if value is None else f"{value:+.4f}"
    print(f"{notion.label:>4}  {notion.display_name:<40} {shown:>10}"
          f"   (ideal {ideal:g})")

# f1 and f15 are the same printed formula under two names.
assert fairness_metric(confusion, FairnessNotion.EQUALIZED_ODDS) == \
    fairness_metric(confusion, FairnessNotion.AVERAGE_ODD_DIFFERENCE)

# The full report bundles accuracy, AD, and every notion in JSON form.
report = full_report(predicted, actual, groups, group_names=("a", "b"))
print(f"\noverall accuracy: {report.accuracy:.4f}")
print(f"notions in report: {len(report.to_json_dict()['notions'])}")
