"""Differentiable loss chain: BCE, weighted BCE, per-group CE, GAP.

GAP = OE + lambda * penalty, where OE is the weighted binary cross
entropy of the whole batch and penalty is the ordered-pair sum
sum_{i != j} (CE_i - CE_j)^2 over per-group cross entropies. For G
groups the ordered sum is exactly twice the unordered one; the doubled
form is kept because that is how the objective is written, with the
factor absorbed into lambda's scale.

Conventions fixed here and relied on by tests:

* Losses are means, not sums, so lambda does not depend on batch size.
* Per-group CE reuses the global class weights, keeping group terms
  comparable.
* Probabilities are clamped to [1e-12, 1 - 1e-12] before every log;
  gradients flow through the unclamped sigmoid. At clamp activation the
  mismatch is far below test tolerances.
* OE is the sample-averaged batch wBCE by default. Whether the original
  objective averages over groups instead is not recoverable from the
  prose, so ``oe_mode="group_mean"`` switches OE to the mean of the
  per-group CE values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ArityError,
    DegenerateGroupError,
    DegenerateLabelsError,
    DimensionError,
)

EPS = 1e-12

OE_MODES = ("batch", "group_mean")


@dataclass(frozen=True)
class ClassWeights:
    """Multiplier per outcome class inside the weighted cross entropy."""

    w0: float
    w1: float

    def __post_init__(self):
        if not (self.w0 > 0 and self.w1 > 0):
            raise ValueError(f"class weights must be positive, got {self}")


UNIT_WEIGHTS = ClassWeights(1.0, 1.0)


@dataclass(frozen=True)
class LossBreakdown:
    """GAP value decomposed into its parts."""

    overall_error: float
    per_group_ce: dict[int, float]
    penalty: float
    lam: float
    total: float

    def to_json_dict(self) -> dict:
        return {
            "overall_error": self.overall_error,
            "per_group_ce": {str(g): v for g, v in sorted(self.per_group_ce.items())},
            "penalty": self.penalty,
            "lambda": self.lam,
            "total": self.total,
        }


def sigmoid(z):
    """Numerically stable logistic function."""
    z = np.asarray(z, dtype=np.float64)
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _check_pair(probabilities, labels):
    p = np.asarray(probabilities, dtype=np.float64)
    y = np.asarray(labels, dtype=np.float64)
    if p.ndim != 1 or y.ndim != 1:
        raise DimensionError("probabilities and labels must be 1-D")
    if p.shape != y.shape:
        raise DimensionError(
            f"length mismatch: probabilities {p.shape}, labels {y.shape}"
        )
    if p.size == 0:
        raise ArityError("need at least one sample")
    return p, y


def _nll_terms(p, y, weights: ClassWeights):
    """Per-sample weighted negative log likelihood, clamp applied."""
    p = np.clip(p, EPS, 1.0 - EPS)
    return -(weights.w1 * y * np.log(p) + weights.w0 * (1.0 - y) * np.log1p(-p))


def bce(probabilities, labels) -> float:
    """Mean binary cross entropy, -(1/n) sum[y log p + (1-y) log(1-p)]."""
    p, y = _check_pair(probabilities, labels)
    return float(np.mean(_nll_terms(p, y, UNIT_WEIGHTS)))


def class_weights(labels) -> ClassWeights:
    """Inverse-frequency weights w_c = n / (2 n_c), mean weight 1.

    Balanced labels give (1, 1); rarer classes weigh more. Both classes
    must be present.
    """
    y = np.asarray(labels, dtype=np.int64)
    if y.ndim != 1 or y.size == 0:
        raise ArityError("labels must be a non-empty 1-D vector")
    n1 = int(y.sum())
    n0 = y.size - n1
    if n0 == 0 or n1 == 0:
        raise DegenerateLabelsError(
            f"need both outcome classes to derive weights, got n0={n0}, n1={n1}"
        )
    n = y.size
    return ClassWeights(w0=n / (2.0 * n0), w1=n / (2.0 * n1))


def wbce(probabilities, labels, weights: ClassWeights) -> float:
    """Weighted BCE, -(1/n) sum[w1 y log p + w0 (1-y) log(1-p)]."""
    p, y = _check_pair(probabilities, labels)
    return float(np.mean(_nll_terms(p, y, weights)))


def _check_groups(groups, n: int) -> tuple[np.ndarray, int]:
    g = np.asarray(groups, dtype=np.int64)
    if g.ndim != 1 or g.shape != (n,):
        raise DimensionError(f"groups must have shape ({n},), got {g.shape}")
    if g.min() < 0:
        raise DimensionError("group ids must be non-negative")
    n_groups = int(g.max()) + 1
    counts = np.bincount(g, minlength=n_groups)
    empty = np.flatnonzero(counts == 0)
    if empty.size:
        raise DegenerateGroupError(f"group ids {empty.tolist()} are empty")
    return g, n_groups


def group_ce(probabilities, labels, groups, weights: ClassWeights) -> dict[int, float]:
    """Weighted BCE restricted to each group, global weights throughout."""
    p, y = _check_pair(probabilities, labels)
    g, n_groups = _check_groups(groups, p.size)
    terms = _nll_terms(p, y, weights)
    return {
        gid: float(np.mean(terms[g == gid]))
        for gid in range(n_groups)
    }


def _pairwise_penalty(ces: dict[int, float]) -> float:
    values = [ces[g] for g in sorted(ces)]
    penalty = 0.0
    for i in range(len(values)):
        for j in range(len(values)):
            if i != j:
                penalty += (values[i] - values[j]) ** 2
    return penalty


def gap_loss(probabilities, labels, groups, lam: float,
             weights: ClassWeights, oe_mode: str = "batch") -> LossBreakdown:
    """Group accuracy parity loss with its full breakdown.

    total = OE + lam * sum_{i != j} (CE_i - CE_j)^2. With lam = 0 the
    total equals the batch wBCE exactly. Every group must be non-empty;
    the loss is undefined on batches missing a group.
    """
    if lam < 0:
        raise ValueError(f"lambda must be >= 0, got {lam}")
    if oe_mode not in OE_MODES:
        raise ValueError(f"oe_mode must be one of {OE_MODES}, got {oe_mode!r}")
    ces = group_ce(probabilities, labels, groups, weights)
    if oe_mode == "batch":
        oe = wbce(probabilities, labels, weights)
    else:
        oe = float(np.mean([ces[g] for g in sorted(ces)]))
    penalty = _pairwise_penalty(ces)
    return LossBreakdown(
        overall_error=oe,
        per_group_ce=ces,
        penalty=penalty,
        lam=float(lam),
        total=oe + lam * penalty,
    )


def wbce_gradient(logits, labels, weights: ClassWeights) -> np.ndarray:
    """d(batch wBCE)/d(logit_k) through the sigmoid.

    Per sample, u_k = w0 (1-y_k) p_k - w1 y_k (1-p_k); the mean loss
    contributes u_k / n. With unit weights this is the familiar
    (p - y)/n.
    """
    z = np.asarray(logits, dtype=np.float64)
    p, y = _check_pair(sigmoid(z), labels)
    u = weights.w0 * (1.0 - y) * p - weights.w1 * y * (1.0 - p)
    return u / p.size


def gap_gradient(logits, labels, groups, lam: float,
                 weights: ClassWeights, oe_mode: str = "batch") -> np.ndarray:
    """d(GAP total)/d(logit_k), composed analytically.

    Writing u_k as in :func:`wbce_gradient` and g(k) for sample k's
    group of size n_g, each CE_g has gradient u_k / n_g for k in g, so

        d total / d z_k = u_k * (oe_coef + 4 lam / n_g * sum_{j != g} (CE_g - CE_j))

    where oe_coef is 1/n for batch OE and 1/(G n_g) for group-mean OE.
    The factor 4 is 2 (square) times 2 (each unordered pair appears
    twice in the ordered sum).
    """
    if lam < 0:
        raise ValueError(f"lambda must be >= 0, got {lam}")
    if oe_mode not in OE_MODES:
        raise ValueError(f"oe_mode must be one of {OE_MODES}, got {oe_mode!r}")
    z = np.asarray(logits, dtype=np.float64)
    p, y = _check_pair(sigmoid(z), labels)
    g, n_groups = _check_groups(groups, p.size)

    u = weights.w0 * (1.0 - y) * p - weights.w1 * y * (1.0 - p)

    # Divide rather than multiply by a reciprocal so that lambda = 0
    # reproduces wbce_gradient bit for bit.
    if oe_mode == "batch":
        grad = u / p.size
    else:
        counts = np.bincount(g, minlength=n_groups)
        grad = u / (n_groups * counts[g])

    if lam > 0:
        ces = group_ce(p, y, g, weights)
        counts = np.bincount(g, minlength=n_groups)
        ce_arr = np.array([ces[i] for i in range(n_groups)])
        # sum_{j != g} (CE_g - CE_j) = G * CE_g - sum_j CE_j
        spread = n_groups * ce_arr - ce_arr.sum()
        grad = grad + u * ((4.0 * lam / counts)[g] * spread[g])

    return grad
