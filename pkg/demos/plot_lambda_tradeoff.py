"""
Sweeping lambda and reading the trade-off front
===============================================

One trained model per (lambda, seed) cell gives a cloud of
(unfairness, accuracy) points for every fairness notion. The Pareto
front of that cloud, and the accuracy of its minimum-unfairness
point, summarize what parity costs. The front scatter is written as
an SVG next to this script.
"""

import os

from gapfair.analysis import fairness_baseline, lambda_sweep, pareto_front, unfairness
from gapfair.dataset import split
from gapfair.group_metrics import FairnessNotion
from gapfair.model import Architecture
from gapfair.svgplot import scatter_svg
from gapfair.synthetic import biased_matrix
from gapfair.trainer import TrainConfig

data = biased_matrix(1200, seed=0, majority_share=0.85, shift=1.0, flip=0.1)
train_m, test_m = split(data, 0.25, seed=0)
arch = Architecture(input_dim=2, hidden_layers=())
config = TrainConfig(epochs=60, batch_size=64, learning_rate=0.02,
                     optimizer="adam", validation_fraction=0.2, restarts=1)

points = lambda_sweep(train_m, test_m, config,
                      lambdas=(0.0, 0.1, 0.3, 1.0, 3.0),
                      seeds=range(4), arch=arch)
print(f"sweep cells: {len(points)}")

notion = FairnessNotion.EQUALIZED_ODDS
front = pareto_front(points, notion)
print(f"\n{notion.display_name} front ({len(front)} points):")
for u, point in zip(front.unfairness, front.points):
    print(f"  lambda={point.lam:<4g} seed={point.seed} "
          f"unfairness={u:.4f} accuracy={point.accuracy:.4f}")

baseline = fairness_baseline(front)
flag = " (extrapolated: the cloud never reached the ideal)" \
    if baseline.extrapolated else ""
print(f"\naccuracy nearest perfect fairness: {baseline.accuracy:.4f}{flag}")

cloud = [(unfairness(p.fairness[notion], notion), p.accuracy)
         for p in points if p.fairness[notion] is not None]
svg = scatter_svg(
    cloud,
    list(zip(front.unfairness, (p.accuracy for p in front.points))),
    title=f"{notion.display_name} trade-off",
    x_label="unfairness |value - ideal|",
    y_label="accuracy",
)
out = os.path.join(os.path.dirname(__file__), "tradeoff_front.svg")
with open(out, "w", encoding="utf-8") as handle:
    handle.write(svg)
print(f"wrote {out}")
