"""
The whole pipeline, end to end, on synthetic scores
===================================================

Drives every command the package ships, in dependency order, against
a generated scores CSV: ingest filters and encodes the cohort, train
fits a GAP model with restarts, sweep grids lambda by seed, pareto
extracts per-notion fronts, proxy compares feature distributions, and
report bundles every JSON artifact into one document. Everything is
written under demos/pipeline_out.
"""

import json
import os

from gapfair.cli import main
from gapfair.synthetic import write_scores_csv

here = os.path.dirname(__file__)
out = os.path.join(here, "pipeline_out")
os.makedirs(out, exist_ok=True)

csv_path = os.path.join(out, "scores.csv")
write_scores_csv(csv_path, n=800, seed=3)

config_path = os.path.join(out, "config.json")
with open(config_path, "w", encoding="utf-8") as handle:
    json.dump({
        "architecture": {"hidden_layers": [8]},
        "train": {"epochs": 40, "batch_size": 64, "restarts": 3},
        "sweep": {"lambdas": [0.0, 0.3, 1.0, 3.0], "seeds": [0, 1, 2]},
    }, handle, indent=2)

base = ["--config", config_path, "--out", out]
for argv in (
    ["ingest", *base, "--data", csv_path],
    ["train", *base],
    ["evaluate", *base],
    ["sweep", *base],
    ["pareto", *base, "--notions", "f1,f6,f10,f11"],
    ["proxy", *base],
    ["report", *base],
):
    print(f"\n$ gapfair {' '.join(argv)}")
    code = main(argv)
    assert code == 0, f"exit code {code}"

with open(os.path.join(out, "report_bundle.json"), encoding="utf-8") as handle:
    bundle = json.load(handle)
print(f"\nbundled artifacts: {sorted(bundle['artifacts'])}")
print(f"missing (not produced in this run): {bundle['missing']}")
