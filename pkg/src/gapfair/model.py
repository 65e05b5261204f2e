"""Small feed-forward binary classifier with hand-derived backprop.

No autodiff framework: the forward pass caches layer inputs and
pre-activations, and :func:`backward` applies the chain rule from an
upstream dLoss/dLogit vector down to every weight and bias. Zero hidden
layers degenerate to logistic regression, which the tests use to pin
the gradients against closed forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError
from .losses import sigmoid

ACTIVATIONS = ("relu", "tanh")

PARAMS_FORMAT = "gapfair-model"
PARAMS_VERSION = 1


@dataclass(frozen=True)
class Architecture:
    """Layer sizes of the classifier: input -> hidden... -> 1 logit."""

    input_dim: int
    hidden_layers: tuple[int, ...] = (16,)
    activation: str = "relu"

    def __post_init__(self):
        object.__setattr__(self, "hidden_layers", tuple(self.hidden_layers))
        if self.input_dim < 1:
            raise ValueError(f"input_dim must be >= 1, got {self.input_dim}")
        if any(h < 1 for h in self.hidden_layers):
            raise ValueError(f"hidden layer sizes must be >= 1, got {self.hidden_layers}")
        if self.activation not in ACTIVATIONS:
            raise ValueError(
                f"activation must be one of {ACTIVATIONS}, got {self.activation!r}"
            )

    @property
    def layer_sizes(self) -> tuple[int, ...]:
        return (self.input_dim, *self.hidden_layers, 1)


@dataclass
class ModelParams:
    """Weights and biases per layer, plus the seed that produced them."""

    weights: list[np.ndarray]
    biases: list[np.ndarray]
    architecture: Architecture
    seed: int

    @property
    def n_layers(self) -> int:
        return len(self.weights)

    def copy(self) -> "ModelParams":
        return ModelParams(
            weights=[w.copy() for w in self.weights],
            biases=[b.copy() for b in self.biases],
            architecture=self.architecture,
            seed=self.seed,
        )


def init(arch: Architecture, seed: int) -> ModelParams:
    """Deterministic uniform(-a, a) init with a = sqrt(6/(fan_in+fan_out)).

    Biases start at zero. The same seed always yields bit-identical
    parameters.
    """
    rng = np.random.default_rng(seed)
    sizes = arch.layer_sizes
    weights = []
    biases = []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        bound = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out, dtype=np.float64))
    return ModelParams(weights=weights, biases=biases, architecture=arch, seed=seed)


@dataclass
class ForwardCache:
    """Layer inputs and pre-activations retained for the backward pass."""

    inputs: list[np.ndarray] = field(default_factory=list)
    pre_activations: list[np.ndarray] = field(default_factory=list)
    logits: np.ndarray | None = None


def _activate(z: np.ndarray, kind: str) -> np.ndarray:
    if kind == "relu":
        return np.maximum(z, 0.0)
    return np.tanh(z)


def _activate_grad(z: np.ndarray, kind: str) -> np.ndarray:
    if kind == "relu":
        # Subgradient at exactly 0 is taken as 0.
        return (z > 0).astype(np.float64)
    t = np.tanh(z)
    return 1.0 - t * t


def forward(params: ModelParams, X) -> tuple[np.ndarray, ForwardCache]:
    """Probabilities in (0,1) for each row of X, plus the cache."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise DimensionError(f"X must be 2-D, got shape {X.shape}")
    if X.shape[1] != params.architecture.input_dim:
        raise DimensionError(
            f"X has {X.shape[1]} columns, model expects "
            f"{params.architecture.input_dim}"
        )
    cache = ForwardCache()
    h = X
    activation = params.architecture.activation
    last = params.n_layers - 1
    for layer in range(params.n_layers):
        cache.inputs.append(h)
        z = h @ params.weights[layer] + params.biases[layer]
        cache.pre_activations.append(z)
        h = z if layer == last else _activate(z, activation)
    logits = h[:, 0]
    cache.logits = logits
    return sigmoid(logits), cache


@dataclass
class ParamGradients:
    """dLoss/dW and dLoss/db per layer, shapes matching ModelParams."""

    weights: list[np.ndarray]
    biases: list[np.ndarray]


def backward(params: ModelParams, cache: ForwardCache,
             dloss_dlogit) -> ParamGradients:
    """Chain-rule gradients for every parameter.

    ``dloss_dlogit`` is the upstream derivative of the scalar loss with
    respect to each sample's final logit, so the caller owns the loss
    (and the sigmoid inside it) while this function owns the network.
    """
    dz = np.asarray(dloss_dlogit, dtype=np.float64)
    if cache.logits is None or not cache.inputs:
        raise DimensionError("cache was not produced by forward")
    if dz.shape != cache.logits.shape:
        raise DimensionError(
            f"dloss_dlogit shape {dz.shape} does not match "
            f"logits shape {cache.logits.shape}"
        )
    if len(cache.inputs) != params.n_layers:
        raise DimensionError("cache depth does not match parameter depth")

    activation = params.architecture.activation
    delta = dz[:, None]
    grad_w: list[np.ndarray] = [np.empty(0)] * params.n_layers
    grad_b: list[np.ndarray] = [np.empty(0)] * params.n_layers
    for layer in range(params.n_layers - 1, -1, -1):
        inp = cache.inputs[layer]
        if inp.shape[0] != delta.shape[0] or inp.shape[1] != params.weights[layer].shape[0]:
            raise DimensionError(
                f"cache layer {layer} shape {inp.shape} is stale for "
                f"weights {params.weights[layer].shape}"
            )
        grad_w[layer] = inp.T @ delta
        grad_b[layer] = delta.sum(axis=0)
        if layer > 0:
            upstream = delta @ params.weights[layer].T
            delta = upstream * _activate_grad(cache.pre_activations[layer - 1],
                                              activation)
    return ParamGradients(weights=grad_w, biases=grad_b)


def predict(probabilities, threshold: float = 0.5) -> np.ndarray:
    """Binary labels: 1 where probability >= threshold."""
    if not 0.0 < threshold < 1.0:
        raise ValueError(f"threshold must lie in (0, 1), got {threshold}")
    p = np.asarray(probabilities, dtype=np.float64)
    return (p >= threshold).astype(np.int64)


def params_to_json_dict(params: ModelParams) -> dict:
    """Versioned JSON form: layer shapes plus row-major values."""
    return {
        "format": PARAMS_FORMAT,
        "version": PARAMS_VERSION,
        "seed": params.seed,
        "activation": params.architecture.activation,
        "layer_sizes": list(params.architecture.layer_sizes),
        "layers": [
            {
                "shape": list(w.shape),
                "weights": w.ravel(order="C").tolist(),
                "bias": b.tolist(),
            }
            for w, b in zip(params.weights, params.biases)
        ],
    }


def params_from_json_dict(data: dict) -> ModelParams:
    if data.get("format") != PARAMS_FORMAT:
        raise ValueError(f"not a model document: format={data.get('format')!r}")
    if data.get("version") != PARAMS_VERSION:
        raise ValueError(f"unsupported model version {data.get('version')!r}")
    sizes = [int(s) for s in data["layer_sizes"]]
    arch = Architecture(
        input_dim=sizes[0],
        hidden_layers=tuple(sizes[1:-1]),
        activation=data["activation"],
    )
    weights = []
    biases = []
    for layer in data["layers"]:
        shape = tuple(layer["shape"])
        weights.append(
            np.array(layer["weights"], dtype=np.float64).reshape(shape, order="C")
        )
        biases.append(np.array(layer["bias"], dtype=np.float64))
    params = ModelParams(
        weights=weights, biases=biases, architecture=arch, seed=int(data["seed"])
    )
    expected = list(zip(arch.layer_sizes[:-1], arch.layer_sizes[1:]))
    actual = [w.shape for w in weights]
    if actual != expected:
        raise ValueError(f"layer shapes {actual} do not chain as {expected}")
    return params
