"""
The group accuracy parity loss, taken apart
===========================================

The GAP objective is

    total = OE + lambda * sum_{i != j} (CE_i - CE_j)^2

with OE the class-weighted cross entropy of the whole batch and CE_g
the same loss restricted to group g. This script shows the breakdown
on one batch, the reduction chain gap(0) = wbce and wbce(1,1) = bce,
and a finite-difference check of the analytic logit gradient.
"""

import numpy as np

from gapfair.losses import (
    ClassWeights,
    bce,
    class_weights,
    gap_gradient,
    gap_loss,
    sigmoid,
    wbce,
)

rng = np.random.default_rng(7)
n = 60
logits = rng.normal(0.0, 2.0, n)
p = sigmoid(logits)
y = rng.integers(0, 2, n)
groups = (rng.random(n) < 0.3).astype(int)

weights = class_weights(y)
print(f"class weights: w0={weights.w0:.4f}, w1={weights.w1:.4f}")

for lam in (0.0, 0.1, 1.0, 10.0):
    breakdown = gap_loss(p, y, groups, lam, weights)
    ces = ", ".join(f"CE_{g}={v:.4f}"
                    for g, v in sorted(breakdown.per_group_ce.items()))
    print(f"lambda={lam:<5g} OE={breakdown.overall_error:.4f}  {ces}  "
          f"penalty={breakdown.penalty:.4f}  total={breakdown.total:.4f}")

# Reduction chain: at lambda = 0 the gap total is the weighted BCE,
# and unit weights recover plain BCE.
assert gap_loss(p, y, groups, 0.0, weights).total == wbce(p, y, weights)
assert abs(wbce(p, y, ClassWeights(1.0, 1.0)) - bce(p, y)) <= 1e-15
print("\ngap(lambda=0) == wbce and wbce(1,1) == bce: verified")

# Central finite differences on the logits validate the closed form.
lam = 1.0
analytic = gap_gradient(logits, y, groups, lam, weights)
step = 1e-6
numeric = np.empty(n)
for k in range(n):
    bumped = logits.copy()
    bumped[k] += step
    up = gap_loss(sigmoid(bumped), y, groups, lam, weights).total
    bumped[k] -= 2 * step
    down = gap_loss(sigmoid(bumped), y, groups, lam, weights).total
    numeric[k] = (up - down) / (2 * step)

worst = np.max(np.abs(analytic - numeric) /
               np.maximum(np.abs(analytic), 1e-8))
print(f"worst relative gradient error over {n} coordinates: {worst:.2e}")
