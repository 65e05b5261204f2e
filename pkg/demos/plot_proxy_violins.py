"""
Do features proxy the protected attribute?
==========================================

A numeric feature whose distribution separates the race partition as
strongly as it separates the outcome partition can stand in for
either: the proxy score |d(f | race) - d(f | outcome)| is near zero.
Here priors_count is built as a proxy and age as independent noise.
Per-side violin SVGs land next to this script.
"""

import os

import numpy as np

from gapfair.analysis import proxy_report
from gapfair.dataset import RecordTable
from gapfair.svgplot import violin_svg
from gapfair.synthetic import make_record

rng = np.random.default_rng(11)
records = []
for _ in range(500):
    is_aa = rng.random() < 0.5
    recid = rng.random() < (0.6 if is_aa else 0.4)
    records.append(make_record(
        race="African-American" if is_aa else "Caucasian",
        two_year_recid=int(recid),
        # priors tracks race and outcome; age tracks neither
        priors_count=int(rng.poisson(3 + 4 * is_aa + 2 * recid)),
        age=int(rng.integers(18, 41)),
    ))

report = proxy_report(RecordTable(records),
                      features=("age", "priors_count"),
                      partitions=("race", "outcome"))

for feature in report.features:
    for partition, distance in report.distances[feature].items():
        print(f"W1({feature} | {partition}): {distance:.4f}")
    for pair, score in report.proxy_scores[feature].items():
        print(f"proxy score {feature} {pair}: {score:.4f}")
    print()

here = os.path.dirname(__file__)
for feature, by_partition in report.violins.items():
    for partition, sides in by_partition.items():
        for side, summary in sides.items():
            name = f"violin_{feature}_{partition}_{side}.svg"
            with open(os.path.join(here, name), "w",
                      encoding="utf-8") as handle:
                handle.write(violin_svg(summary))
            print(f"wrote {name} (n={summary.n}, "
                  f"median={summary.quartiles[1]:g})")
