"""Deterministic minibatch training, prediction and gradient checking."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .adam import adam_init, adam_step
from .models import DynamicArch, ModelCheckpoint, StaticArch, init_params, model_backward, model_forward


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 1e-3
    batch_size: int = 256
    max_epochs: int = 500
    validation_fraction: float = 0.05
    patience: int = 20
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.validation_fraction < 1.0:
            raise ValueError("validation_fraction must be in (0, 1)")
        for name in ("batch_size", "max_epochs", "patience"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be a positive integer")
        if not self.learning_rate > 0:
            raise ValueError("learning_rate must be positive")


def mse_loss(pred, target) -> float:
    pred = np.asarray(pred, dtype=float)
    target = np.asarray(target, dtype=float)
    if pred.shape != target.shape:
        raise ValueError(f"shape mismatch {pred.shape} vs {target.shape}")
    d = pred - target
    return float(np.mean(d * d))


def train_arrays(x, y, arch, config: TrainConfig):
    """Train from in-memory arrays; returns (best checkpoint, history).

    Deterministic given (x, y, arch, config): fixed init, fixed validation
    split, fixed shuffle order. Early-stops when validation loss has not
    improved for ``patience`` epochs and restores the best-validation
    parameters. History rows are (epoch, train_loss, val_loss).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = x.shape[0]
    if n == 0:
        raise ValueError("empty training set")
    if y.shape[0] != n:
        raise ValueError("inputs and targets disagree on sample count")

    params = init_params(arch, config.seed)
    state = adam_init(params, learning_rate=config.learning_rate)
    order_rng = np.random.default_rng([config.seed, 1])

    n_val = int(n * config.validation_fraction)
    split = order_rng.permutation(n)
    val_idx = split[:n_val]
    train_idx = split[n_val:]
    if train_idx.size == 0:
        raise ValueError("validation split leaves no training samples")

    best_val = np.inf
    best_params = {k: v.copy() for k, v in params.items()}
    best_epoch = 0
    since_best = 0
    history: list[tuple[int, float, float]] = []

    for epoch in range(1, config.max_epochs + 1):
        perm = train_idx[order_rng.permutation(train_idx.size)]
        total = 0.0
        batches = 0
        for start in range(0, perm.size, config.batch_size):
            idx = perm[start : start + config.batch_size]
            loss, grads = model_backward(arch, params, x[idx], y[idx])
            adam_step(state, params, grads)
            total += loss
            batches += 1
        train_loss = total / batches
        if n_val:
            val_loss = mse_loss(model_forward(arch, params, x[val_idx]), y[val_idx])
        else:
            # no holdout (tiny datasets): monitor the training loss instead
            val_loss = train_loss
        history.append((epoch, train_loss, val_loss))
        if val_loss < best_val:
            best_val = val_loss
            best_params = {k: v.copy() for k, v in params.items()}
            best_epoch = epoch
            since_best = 0
        else:
            since_best += 1
            if since_best >= config.patience:
                break

    training_meta = {
        "seed": config.seed,
        "epochs_run": history[-1][0],
        "best_epoch": best_epoch,
        "best_val_loss": best_val,
        "final_train_loss": history[-1][1],
        "final_val_loss": history[-1][2],
        "n_train": int(train_idx.size),
        "n_val": int(n_val),
        "config": {
            "learning_rate": config.learning_rate,
            "batch_size": config.batch_size,
            "max_epochs": config.max_epochs,
            "validation_fraction": config.validation_fraction,
            "patience": config.patience,
        },
    }
    return ModelCheckpoint(arch=arch, params=best_params, training=training_meta), history


def predict(checkpoint: ModelCheckpoint, x, batch_size: int = 4096) -> np.ndarray:
    """Batched forward pass through a checkpoint."""
    x = np.asarray(x, dtype=float)
    if x.ndim == 1 or (isinstance(checkpoint.arch, DynamicArch) and x.ndim == 2
                       and x.shape == (checkpoint.arch.n_steps, checkpoint.arch.input_dim)):
        return model_forward(checkpoint.arch, checkpoint.params, x)
    chunks = [
        model_forward(checkpoint.arch, checkpoint.params, x[s : s + batch_size])
        for s in range(0, x.shape[0], batch_size)
    ]
    return np.concatenate(chunks, axis=0)


def small_test_arch(kind: str):
    """Hand-sized architectures for gradient checking."""
    if kind == "static_fcnn":
        return StaticArch(input_dim=5, output_dim=3, hidden_layers=(8, 6), activation="relu")
    if kind == "dynamic_lstm":
        return DynamicArch(input_dim=3, n_steps=5, output_dim=4, hidden_dim=6,
                           decoder_layers=(8,), activation="relu")
    raise ValueError(f"unknown architecture kind {kind!r}")


def gradient_check(arch, seed: int, n_samples: int = 3, step: float = 1e-5) -> float:
    """Compare analytic gradients against central finite differences.

    Returns the max over parameters of |g_a - g_n| / max(|g_a|, |g_n|, 1e-8).
    Intended for small architectures only.
    """
    rng = np.random.default_rng([seed, 17])
    params = init_params(arch, seed)
    # perturb away from the symmetric init so the check is not run at a
    # special point (zero biases, relu kinks)
    for p in params.values():
        p += 0.1 * rng.standard_normal(p.shape)
    if isinstance(arch, StaticArch):
        x = rng.uniform(-1, 1, size=(n_samples, arch.input_dim))
    else:
        x = rng.uniform(-1, 1, size=(n_samples, arch.n_steps, arch.input_dim))
    y = rng.uniform(-1, 1, size=(n_samples, arch.output_dim))

    _, grads = model_backward(arch, params, x, y)
    worst = 0.0
    for name, p in params.items():
        flat = p.ravel()
        g_analytic = grads[name].ravel()
        for j in range(flat.size):
            orig = flat[j]
            flat[j] = orig + step
            up = mse_loss(model_forward(arch, params, x), y)
            flat[j] = orig - step
            down = mse_loss(model_forward(arch, params, x), y)
            flat[j] = orig
            g_numeric = (up - down) / (2.0 * step)
            denom = max(abs(g_analytic[j]), abs(g_numeric), 1e-8)
            worst = max(worst, abs(g_analytic[j] - g_numeric) / denom)
    return worst
