"""Dense feed-forward layers with analytic gradients.

An MLP is a list of (W, b) pairs with W of shape (out, in). Hidden layers
share one activation, the final layer is always linear.
"""

from __future__ import annotations

import numpy as np

ACTIVATIONS = ("relu", "tanh", "linear")


def activate(z: np.ndarray, kind: str) -> np.ndarray:
    if kind == "relu":
        return np.maximum(z, 0.0)
    if kind == "tanh":
        return np.tanh(z)
    if kind == "linear":
        return z
    raise ValueError(f"unknown activation {kind!r}")


def activate_grad(z: np.ndarray, kind: str) -> np.ndarray:
    """d activate / dz evaluated at pre-activation z."""
    if kind == "relu":
        return (z > 0.0).astype(z.dtype)
    if kind == "tanh":
        t = np.tanh(z)
        return 1.0 - t * t
    if kind == "linear":
        return np.ones_like(z)
    raise ValueError(f"unknown activation {kind!r}")


def glorot_uniform(rng: np.random.Generator, fan_out: int, fan_in: int) -> np.ndarray:
    lim = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-lim, lim, size=(fan_out, fan_in))


def mlp_init(rng: np.random.Generator, dims) -> list[tuple[np.ndarray, np.ndarray]]:
    """Glorot-uniform weights, zero biases, for dims[0] -> ... -> dims[-1]."""
    layers = []
    for fan_in, fan_out in zip(dims[:-1], dims[1:]):
        layers.append((glorot_uniform(rng, fan_out, fan_in), np.zeros(fan_out)))
    return layers


def mlp_forward(layers, x: np.ndarray, activation: str):
    """Forward pass; returns the output batch (B, out)."""
    a = x
    for li, (w, b) in enumerate(layers):
        z = a @ w.T + b
        a = z if li == len(layers) - 1 else activate(z, activation)
    return a


def mlp_forward_cached(layers, x: np.ndarray, activation: str):
    """Forward pass keeping pre-activations and activations for backprop."""
    acts = [x]
    zs = []
    a = x
    for li, (w, b) in enumerate(layers):
        z = a @ w.T + b
        a = z if li == len(layers) - 1 else activate(z, activation)
        zs.append(z)
        acts.append(a)
    return a, (acts, zs)


def mlp_backward(layers, cache, d_out: np.ndarray, activation: str):
    """Backprop d_out (gradient w.r.t. the linear output) through the MLP.

    Returns (per-layer [(dW, db)], gradient w.r.t. the input batch).
    """
    acts, zs = cache
    grads: list[tuple[np.ndarray, np.ndarray]] = [None] * len(layers)
    dz = d_out
    for li in reversed(range(len(layers))):
        w, _ = layers[li]
        grads[li] = (dz.T @ acts[li], dz.sum(axis=0))
        da = dz @ w
        if li > 0:
            dz = da * activate_grad(zs[li - 1], activation)
        else:
            dx = da
    return grads, dx
