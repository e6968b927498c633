"""Model architectures, parameter initialization and checkpoints.

Two architectures:

* ``static_fcnn`` — an MLP regressor from a measurement vector to a metric
  vector. Optionally the input is augmented with its elementwise squares
  (purity-like targets are log-linear in squared Pauli expectations, which
  helps the net extrapolate beyond the training manifold).
* ``dynamic_lstm`` — an LSTM encoder over a (steps, features) time trace;
  an MLP decoder maps the final hidden state to the flattened output
  trajectory.

Parameters live in a flat name -> array dict so the optimizer, the
gradient checker and the checkpoint format can stay generic.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from ..jsonio import dumps, loads
from .layers import ACTIVATIONS, mlp_backward, mlp_forward, mlp_forward_cached, mlp_init
from .lstm import GATES, LSTMParams, lstm_backward, lstm_forward, lstm_init

CHECKPOINT_FORMAT = "entlearn-checkpoint"
CHECKPOINT_VERSION = 1


@dataclass(frozen=True)
class StaticArch:
    input_dim: int
    output_dim: int
    hidden_layers: tuple[int, ...] = (512, 512, 256)
    activation: str = "relu"
    quadratic_features: bool = False
    # I/O semantics carried along for dataset/CLI plumbing (metric specs,
    # measurement set, ...); opaque to the network itself.
    context: dict = field(default_factory=dict)

    kind = "static_fcnn"

    def __post_init__(self):
        object.__setattr__(self, "hidden_layers", tuple(int(d) for d in self.hidden_layers))
        if self.activation not in ACTIVATIONS:
            raise ValueError(f"unknown activation {self.activation!r}")
        if self.input_dim < 1 or self.output_dim < 1:
            raise ValueError("input_dim and output_dim must be positive")

    @property
    def mlp_dims(self) -> tuple[int, ...]:
        first = 2 * self.input_dim if self.quadratic_features else self.input_dim
        return (first, *self.hidden_layers, self.output_dim)


@dataclass(frozen=True)
class DynamicArch:
    input_dim: int
    n_steps: int
    output_dim: int
    hidden_dim: int = 128
    decoder_layers: tuple[int, ...] = (128, 256)
    activation: str = "relu"
    context: dict = field(default_factory=dict)

    kind = "dynamic_lstm"

    def __post_init__(self):
        object.__setattr__(self, "decoder_layers", tuple(int(d) for d in self.decoder_layers))
        if self.activation not in ACTIVATIONS:
            raise ValueError(f"unknown activation {self.activation!r}")
        if min(self.input_dim, self.n_steps, self.output_dim, self.hidden_dim) < 1:
            raise ValueError("all dimensions must be positive")

    @property
    def decoder_dims(self) -> tuple[int, ...]:
        return (self.hidden_dim, *self.decoder_layers, self.output_dim)


def arch_to_dict(arch) -> dict:
    d = {"kind": arch.kind, "input_dim": arch.input_dim, "output_dim": arch.output_dim,
         "activation": arch.activation, "context": arch.context}
    if isinstance(arch, StaticArch):
        d["hidden_layers"] = list(arch.hidden_layers)
        d["quadratic_features"] = arch.quadratic_features
    else:
        d["n_steps"] = arch.n_steps
        d["hidden_dim"] = arch.hidden_dim
        d["decoder_layers"] = list(arch.decoder_layers)
    return d


def arch_from_dict(d: dict):
    kind = d.get("kind")
    if kind == "static_fcnn":
        return StaticArch(
            input_dim=d["input_dim"],
            output_dim=d["output_dim"],
            hidden_layers=tuple(d.get("hidden_layers", (512, 512, 256))),
            activation=d.get("activation", "relu"),
            quadratic_features=d.get("quadratic_features", False),
            context=d.get("context", {}),
        )
    if kind == "dynamic_lstm":
        return DynamicArch(
            input_dim=d["input_dim"],
            n_steps=d["n_steps"],
            output_dim=d["output_dim"],
            hidden_dim=d.get("hidden_dim", 128),
            decoder_layers=tuple(d.get("decoder_layers", (128, 256))),
            activation=d.get("activation", "relu"),
            context=d.get("context", {}),
        )
    raise ValueError(f"unknown architecture kind {kind!r}")


def init_params(arch, seed: int) -> dict[str, np.ndarray]:
    """Deterministic parameter init for an architecture."""
    rng = np.random.default_rng(seed)
    params: dict[str, np.ndarray] = {}
    if isinstance(arch, StaticArch):
        for li, (w, b) in enumerate(mlp_init(rng, arch.mlp_dims)):
            params[f"dense{li}.W"] = w
            params[f"dense{li}.b"] = b
    elif isinstance(arch, DynamicArch):
        cell = lstm_init(rng, arch.input_dim, arch.hidden_dim)
        for g in GATES:
            params[f"lstm.W_{g}"] = cell.w[g]
            params[f"lstm.U_{g}"] = cell.u[g]
            params[f"lstm.b_{g}"] = cell.b[g]
        for li, (w, b) in enumerate(mlp_init(rng, arch.decoder_dims)):
            params[f"dense{li}.W"] = w
            params[f"dense{li}.b"] = b
    else:
        raise TypeError(f"unknown architecture {type(arch)}")
    return params


def _mlp_layers(arch, params) -> list[tuple[np.ndarray, np.ndarray]]:
    n_layers = len(arch.mlp_dims if isinstance(arch, StaticArch) else arch.decoder_dims) - 1
    return [(params[f"dense{li}.W"], params[f"dense{li}.b"]) for li in range(n_layers)]


def _cell(params) -> LSTMParams:
    return LSTMParams(
        w={g: params[f"lstm.W_{g}"] for g in GATES},
        u={g: params[f"lstm.U_{g}"] for g in GATES},
        b={g: params[f"lstm.b_{g}"] for g in GATES},
    )


def _prepare_static_input(arch: StaticArch, x) -> tuple[np.ndarray, bool]:
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    if single:
        x = x[None, :]
    if x.ndim != 2 or x.shape[1] != arch.input_dim:
        raise ValueError(f"expected input dim {arch.input_dim}, got shape {x.shape}")
    if arch.quadratic_features:
        x = np.concatenate([x, x * x], axis=1)
    return x, single


def _prepare_dynamic_input(arch: DynamicArch, x) -> tuple[np.ndarray, bool]:
    x = np.asarray(x, dtype=float)
    single = x.ndim == 2 and x.shape == (arch.n_steps, arch.input_dim)
    if single:
        x = x[None, :, :]
    elif x.ndim == 2 and x.shape[1] == arch.n_steps * arch.input_dim:
        x = x.reshape(x.shape[0], arch.n_steps, arch.input_dim)
    if x.ndim != 3 or x.shape[1:] != (arch.n_steps, arch.input_dim):
        raise ValueError(
            f"expected trace shape (*, {arch.n_steps}, {arch.input_dim}), got {np.asarray(x).shape}"
        )
    return x, single


def model_forward(arch, params: dict[str, np.ndarray], x) -> np.ndarray:
    """Batched forward pass for either architecture."""
    if isinstance(arch, StaticArch):
        xb, single = _prepare_static_input(arch, x)
        out = mlp_forward(_mlp_layers(arch, params), xb, arch.activation)
    else:
        xb, single = _prepare_dynamic_input(arch, x)
        h = lstm_forward(_cell(params), xb)
        out = mlp_forward(_mlp_layers(arch, params), h, arch.activation)
    return out[0] if single else out


def model_backward(arch, params: dict[str, np.ndarray], x, y):
    """Mean-batch-MSE loss and its exact gradient for every parameter."""
    y = np.asarray(y, dtype=float)
    if y.ndim == 1:
        y = y[None, :]
    layers = _mlp_layers(arch, params)
    grads: dict[str, np.ndarray] = {}
    if isinstance(arch, StaticArch):
        xb, _ = _prepare_static_input(arch, x)
        out, cache = mlp_forward_cached(layers, xb, arch.activation)
        err = out - y
        loss = float(np.mean(err * err))
        mlp_grads, _ = mlp_backward(layers, cache, 2.0 * err / err.size, arch.activation)
    else:
        xb, _ = _prepare_dynamic_input(arch, x)
        h, lstm_cache = lstm_forward(_cell(params), xb, want_cache=True)
        out, cache = mlp_forward_cached(layers, h, arch.activation)
        err = out - y
        loss = float(np.mean(err * err))
        mlp_grads, dh = mlp_backward(layers, cache, 2.0 * err / err.size, arch.activation)
        cell_grads = lstm_backward(_cell(params), xb, lstm_cache, dh)
        for g in GATES:
            grads[f"lstm.W_{g}"] = cell_grads.w[g]
            grads[f"lstm.U_{g}"] = cell_grads.u[g]
            grads[f"lstm.b_{g}"] = cell_grads.b[g]
    for li, (dw, db) in enumerate(mlp_grads):
        grads[f"dense{li}.W"] = dw
        grads[f"dense{li}.b"] = db
    return loss, grads


@dataclass
class ModelCheckpoint:
    arch: StaticArch | DynamicArch
    params: dict[str, np.ndarray]
    training: dict

    def copy_params(self) -> dict[str, np.ndarray]:
        return {k: v.copy() for k, v in self.params.items()}


def save_checkpoint(ckpt: ModelCheckpoint, path) -> None:
    doc = {
        "format": CHECKPOINT_FORMAT,
        "version": CHECKPOINT_VERSION,
        "architecture": arch_to_dict(ckpt.arch),
        "parameters": [
            {"name": k, "shape": list(v.shape), "data": v.ravel()}
            for k, v in ckpt.params.items()
        ],
        "training": ckpt.training,
    }
    with open(path, "w") as f:
        f.write(dumps(doc))
        f.write("\n")


def load_checkpoint(path) -> ModelCheckpoint:
    with open(path) as f:
        doc = loads(f.read())
    if doc.get("format") != CHECKPOINT_FORMAT:
        raise ValueError(f"{path}: not an {CHECKPOINT_FORMAT} file")
    arch = arch_from_dict(doc["architecture"])
    params = {
        entry["name"]: np.asarray(entry["data"], dtype=float).reshape(entry["shape"])
        for entry in doc["parameters"]
    }
    return ModelCheckpoint(arch=arch, params=params, training=doc.get("training", {}))
