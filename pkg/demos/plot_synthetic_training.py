"""
Training out an engineered accuracy gap
=======================================

A synthetic two-group dataset where the minority group's labels are
noisier and its decision boundary is shifted. A weighted-BCE model
soaks up the majority pattern and leaves a large accuracy difference;
the same model trained under the GAP loss trades a little accuracy
for much better parity.
"""

import statistics
from dataclasses import replace

from gapfair.dataset import split
from gapfair.model import Architecture
from gapfair.synthetic import biased_matrix
from gapfair.trainer import TrainConfig, evaluate, train

data = biased_matrix(4000, seed=0, majority_share=0.85, shift=1.0, flip=0.1)
train_m, test_m = split(data, 0.25, seed=0)
print(f"train rows: {train_m.n_rows}, test rows: {test_m.n_rows}, "
      f"groups: {data.group_names}")

arch = Architecture(input_dim=2, hidden_layers=())
base = TrainConfig(epochs=120, batch_size=128, learning_rate=0.02,
                   optimizer="adam", validation_fraction=0.2, restarts=1)

results = {"wbce": [], "gap": []}
for loss in ("wbce", "gap"):
    for seed in range(10):
        config = replace(base, loss=loss, lam=1.0, seed=seed)
        params, history = train(train_m, config, arch)
        report = evaluate(params, test_m).report
        results[loss].append((report.accuracy, report.accuracy_difference))

for loss, rows in results.items():
    med_acc = statistics.median(acc for acc, _ in rows)
    med_ad = statistics.median(abs(ad) for _, ad in rows)
    print(f"{loss:>4}: median accuracy {med_acc:.4f}, "
          f"median |AD| {med_ad:.4f} over 10 seeds")

ratio = (statistics.median(abs(ad) for _, ad in results["gap"]) /
         statistics.median(abs(ad) for _, ad in results["wbce"]))
print(f"\n|AD| ratio gap/wbce: {ratio:.2f} (the parity penalty earns "
      "its accuracy cost here)")
