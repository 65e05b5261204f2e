"""Mini-batch training with restarts, built for a volatile objective.

The parity penalty makes training runs land far apart depending on
initialization, so the trainer formalizes "numerous trials" as seeded
multi-restart with a fixed selection rule: lowest final validation
total loss, ties broken by lower validation |AD|, then lower seed. The
validation split is carved from the training data once per restart
family (stratified on group and label, seeded with the base seed) so
that restart losses are comparable; the test split never participates.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import model as model_mod
from .dataset import FeatureMatrix, split
from .errors import DegenerateGroupError
from .group_metrics import (
    FairnessReport,
    GroupConfusion,
    accuracy_difference,
    confusion_by_group,
    report_from_confusion,
)
from .losses import (
    ClassWeights,
    LossBreakdown,
    UNIT_WEIGHTS,
    class_weights,
    gap_gradient,
    gap_loss,
    wbce_gradient,
)
from .model import Architecture, ModelParams, ParamGradients

LOSSES = ("bce", "wbce", "gap")
OPTIMIZERS = ("sgd", "adam")


@dataclass(frozen=True)
class TrainConfig:
    """Everything a training run depends on besides the data.

    ``lam`` only matters when ``loss == "gap"``. A learning rate of
    zero is allowed; it makes training a no-op, which tests use to pin
    the update path.
    """

    loss: str = "gap"
    lam: float = 1.0
    learning_rate: float = 0.01
    epochs: int = 200
    batch_size: int = 128
    optimizer: str = "adam"
    seed: int = 0
    restarts: int = 10
    validation_fraction: float = 0.2
    oe_mode: str = "batch"

    def __post_init__(self):
        if self.loss not in LOSSES:
            raise ValueError(f"loss must be one of {LOSSES}, got {self.loss!r}")
        if self.lam < 0:
            raise ValueError(f"lambda must be >= 0, got {self.lam}")
        if self.learning_rate < 0:
            raise ValueError(f"learning_rate must be >= 0, got {self.learning_rate}")
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.optimizer not in OPTIMIZERS:
            raise ValueError(
                f"optimizer must be one of {OPTIMIZERS}, got {self.optimizer!r}"
            )
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")
        if not 0.0 < self.validation_fraction < 1.0:
            raise ValueError(
                f"validation_fraction must lie in (0, 1), "
                f"got {self.validation_fraction}"
            )


@dataclass
class EpochStats:
    """Loss breakdown and headline metrics on both splits, one epoch."""

    epoch: int
    train: LossBreakdown
    val: LossBreakdown
    train_accuracy: float
    val_accuracy: float
    train_ad: float | None
    val_ad: float | None

    def to_json_dict(self) -> dict:
        return {
            "epoch": self.epoch,
            "train": self.train.to_json_dict(),
            "val": self.val.to_json_dict(),
            "train_accuracy": self.train_accuracy,
            "val_accuracy": self.val_accuracy,
            "train_ad": self.train_ad,
            "val_ad": self.val_ad,
        }


@dataclass
class TrainHistory:
    """Per-epoch statistics for one training run."""

    seed: int
    epochs: list[EpochStats] = field(default_factory=list)

    @property
    def final(self) -> EpochStats:
        return self.epochs[-1]

    def to_jsonl(self) -> str:
        """One epoch per line, for external plotting."""
        return "\n".join(
            json.dumps(e.to_json_dict()) for e in self.epochs
        ) + "\n"


class _Sgd:
    def __init__(self, learning_rate: float):
        self.learning_rate = learning_rate

    def step(self, params: ModelParams, grads: ParamGradients) -> None:
        for w, gw in zip(params.weights, grads.weights):
            w -= self.learning_rate * gw
        for b, gb in zip(params.biases, grads.biases):
            b -= self.learning_rate * gb


class _Adam:
    """Standard Adam with bias correction (b1=0.9, b2=0.999, eps=1e-8)."""

    def __init__(self, learning_rate: float, params: ModelParams,
                 beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
        self.learning_rate = learning_rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self.m = [np.zeros_like(w) for w in params.weights] \
            + [np.zeros_like(b) for b in params.biases]
        self.v = [np.zeros_like(w) for w in params.weights] \
            + [np.zeros_like(b) for b in params.biases]

    def step(self, params: ModelParams, grads: ParamGradients) -> None:
        self.t += 1
        tensors = list(params.weights) + list(params.biases)
        gradients = list(grads.weights) + list(grads.biases)
        c1 = 1.0 - self.beta1 ** self.t
        c2 = 1.0 - self.beta2 ** self.t
        for i, (tensor, grad) in enumerate(zip(tensors, gradients)):
            self.m[i] = self.beta1 * self.m[i] + (1.0 - self.beta1) * grad
            self.v[i] = self.beta2 * self.v[i] + (1.0 - self.beta2) * grad * grad
            m_hat = self.m[i] / c1
            v_hat = self.v[i] / c2
            tensor -= self.learning_rate * m_hat / (np.sqrt(v_hat) + self.eps)


def _make_optimizer(config: TrainConfig, params: ModelParams):
    if config.optimizer == "adam":
        return _Adam(config.learning_rate, params)
    return _Sgd(config.learning_rate)


def _epoch_batches(fit: FeatureMatrix, config: TrainConfig,
                   rng: np.random.Generator) -> list[np.ndarray]:
    """Index batches for one epoch.

    Under the gap loss every batch must contain every group (the loss
    is undefined otherwise), so each group's shuffled indices are dealt
    across the same number of batches, keeping group proportions within
    rounding of the full set. The same stratified plan is used for the
    other losses whenever it is feasible, so that a gap run with
    lambda = 0 and a wbce run under the same seed follow identical
    training paths. When some group is too small to cover every batch,
    gap fails loudly and the other losses fall back to plain shuffled
    chunks.
    """
    n = fit.n_rows
    n_batches = math.ceil(n / config.batch_size)
    group_ids = np.unique(fit.group_ids)
    counts = np.array([(fit.group_ids == gid).sum() for gid in group_ids])
    if (counts < n_batches).any():
        if config.loss == "gap":
            gid = int(group_ids[int(np.argmin(counts))])
            raise DegenerateGroupError(
                f"group {gid} has {int(counts.min())} sample(s), cannot "
                f"cover {n_batches} stratified batches; lower batch count "
                "or add data"
            )
        perm = rng.permutation(n)
        return [perm[i * config.batch_size:(i + 1) * config.batch_size]
                for i in range(n_batches)]

    parts = [
        np.array_split(rng.permutation(np.flatnonzero(fit.group_ids == gid)),
                       n_batches)
        for gid in group_ids
    ]
    batches = []
    for b in range(n_batches):
        batch = np.concatenate([chunk[b] for chunk in parts])
        batches.append(batch[rng.permutation(len(batch))])
    return batches


def _require_groups_for_gap(data: FeatureMatrix) -> None:
    present = np.unique(data.group_ids)
    expected = len(data.group_names)
    if expected < 2 or len(present) < expected:
        raise DegenerateGroupError(
            f"gap loss needs every group populated; expected {expected} "
            f"group(s), found ids {present.tolist()}"
        )


def _breakdown(probabilities, labels, groups, config: TrainConfig,
               weights: ClassWeights) -> LossBreakdown:
    lam = config.lam if config.loss == "gap" else 0.0
    return gap_loss(probabilities, labels, groups, lam, weights,
                    oe_mode=config.oe_mode)


def _split_stats(params: ModelParams, data: FeatureMatrix,
                 config: TrainConfig, weights: ClassWeights):
    probabilities, _ = model_mod.forward(params, data.values)
    breakdown = _breakdown(probabilities, data.labels, data.group_ids,
                           config, weights)
    predictions = model_mod.predict(probabilities)
    accuracy = float(np.mean(predictions == data.labels))
    ad = None
    if len(data.group_names) == 2:
        gc = confusion_by_group(predictions, data.labels, data.group_ids)
        if gc.n_groups == 2:
            ad = accuracy_difference(gc)
    return breakdown, accuracy, ad


def _train_on_split(fit: FeatureMatrix, val: FeatureMatrix,
                    config: TrainConfig,
                    arch: Architecture | None) -> tuple[ModelParams, TrainHistory]:
    if config.loss == "gap":
        _require_groups_for_gap(fit)
    if config.loss == "bce":
        weights = UNIT_WEIGHTS
    else:
        weights = class_weights(fit.labels)

    if arch is None:
        arch = Architecture(input_dim=fit.n_cols)
    params = model_mod.init(arch, config.seed)
    optimizer = _make_optimizer(config, params)
    # Batching gets its own stream so it cannot alias the init draws.
    rng = np.random.default_rng([config.seed, 1])

    history = TrainHistory(seed=config.seed)
    for epoch in range(config.epochs):
        for batch in _epoch_batches(fit, config, rng):
            _, cache = model_mod.forward(params, fit.values[batch])
            logits = cache.logits
            yb = fit.labels[batch]
            if config.loss == "gap":
                dz = gap_gradient(logits, yb, fit.group_ids[batch],
                                  config.lam, weights, oe_mode=config.oe_mode)
            else:
                dz = wbce_gradient(logits, yb, weights)
            grads = model_mod.backward(params, cache, dz)
            optimizer.step(params, grads)
        train_stats = _split_stats(params, fit, config, weights)
        val_stats = _split_stats(params, val, config, weights)
        history.epochs.append(EpochStats(
            epoch=epoch,
            train=train_stats[0], val=val_stats[0],
            train_accuracy=train_stats[1], val_accuracy=val_stats[1],
            train_ad=train_stats[2], val_ad=val_stats[2],
        ))
    return params, history


def train(train_data: FeatureMatrix, config: TrainConfig,
          arch: Architecture | None = None) -> tuple[ModelParams, TrainHistory]:
    """One seeded run: carve validation, fit, record per-epoch stats.

    Runs exactly epochs * ceil(n_fit / batch_size) optimizer steps.
    Identical data and config give identical parameters and history.
    """
    fit, val = split(train_data, config.validation_fraction, config.seed)
    return _train_on_split(fit, val, config, arch)


@dataclass
class RunSummary:
    seed: int
    final_val_total: float
    final_val_ad: float | None
    final_val_accuracy: float
    final_train_total: float
    selected: bool = False

    def to_json_dict(self) -> dict:
        return {
            "seed": self.seed,
            "final_val_total": self.final_val_total,
            "final_val_ad": self.final_val_ad,
            "final_val_accuracy": self.final_val_accuracy,
            "final_train_total": self.final_train_total,
            "selected": self.selected,
        }


@dataclass
class SelectionRecord:
    """Which restart won and why."""

    selected_seed: int
    rule: str
    runs: list[RunSummary]

    def to_json_dict(self) -> dict:
        return {
            "selected_seed": self.selected_seed,
            "rule": self.rule,
            "runs": [r.to_json_dict() for r in self.runs],
        }


@dataclass
class MultiRestartResult:
    params: ModelParams
    histories: list[TrainHistory]
    selection: SelectionRecord


_SELECTION_RULE = ("minimize final validation total loss; "
                   "ties: lower validation |AD|, then lower seed")


def multi_restart(train_data: FeatureMatrix, config: TrainConfig,
                  arch: Architecture | None = None) -> MultiRestartResult:
    """Run ``config.restarts`` seeded trainings and keep the best.

    Seeds are config.seed + 0 ... + restarts - 1. All restarts share
    one validation carve (made with the base seed) so their validation
    losses are comparable. With restarts = 1 this is exactly
    :func:`train`.
    """
    fit, val = split(train_data, config.validation_fraction, config.seed)
    candidates: list[tuple[tuple, int, ModelParams, TrainHistory]] = []
    for i in range(config.restarts):
        run_config = replace(config, seed=config.seed + i)
        params, history = _train_on_split(fit, val, run_config, arch)
        final = history.final
        ad_magnitude = math.inf if final.val_ad is None else abs(final.val_ad)
        key = (final.val.total, ad_magnitude, run_config.seed)
        candidates.append((key, run_config.seed, params, history))

    best = min(candidates, key=lambda c: c[0])
    runs = [
        RunSummary(
            seed=seed,
            final_val_total=history.final.val.total,
            final_val_ad=history.final.val_ad,
            final_val_accuracy=history.final.val_accuracy,
            final_train_total=history.final.train.total,
            selected=(seed == best[1]),
        )
        for _, seed, _, history in candidates
    ]
    return MultiRestartResult(
        params=best[2],
        histories=[c[3] for c in candidates],
        selection=SelectionRecord(
            selected_seed=best[1], rule=_SELECTION_RULE, runs=runs
        ),
    )


@dataclass
class EvalResult:
    """Fairness report plus the raw per-group confusion counts."""

    report: FairnessReport
    confusion: GroupConfusion


def evaluate(params: ModelParams, test_data: FeatureMatrix,
             threshold: float = 0.5) -> EvalResult:
    """Forward, threshold, and score a held-out split."""
    probabilities, _ = model_mod.forward(params, test_data.values)
    predictions = model_mod.predict(probabilities, threshold)
    gc = confusion_by_group(predictions, test_data.labels, test_data.group_ids)
    names = test_data.group_names
    report = report_from_confusion(gc, group_names=(names[0], names[1]))
    return EvalResult(report=report, confusion=gc)
