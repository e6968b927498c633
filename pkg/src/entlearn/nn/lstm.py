"""Single-layer LSTM with backpropagation through time.

Gate order is (i, f, g, o): input, forget, cell candidate, output. The
recurrence, with sigma the logistic function and h_0 = c_0 = 0:

    i = sigma(W_i x_s + U_i h_{s-1} + b_i)
    f = sigma(W_f x_s + U_f h_{s-1} + b_f)
    g = tanh (W_g x_s + U_g h_{s-1} + b_g)
    o = sigma(W_o x_s + U_o h_{s-1} + b_o)
    c_s = f * c_{s-1} + i * g
    h_s = o * tanh(c_s)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .layers import glorot_uniform

GATES = "ifgo"


@dataclass
class LSTMParams:
    """Per-gate weights: W (hidden x input), U (hidden x hidden), b (hidden)."""

    w: dict[str, np.ndarray]
    u: dict[str, np.ndarray]
    b: dict[str, np.ndarray]

    @property
    def hidden_dim(self) -> int:
        return self.w["i"].shape[0]

    @property
    def input_dim(self) -> int:
        return self.w["i"].shape[1]


def lstm_init(rng: np.random.Generator, input_dim: int, hidden_dim: int) -> LSTMParams:
    """Glorot weights; forget-gate bias starts at 1, the rest at 0."""
    w = {g: glorot_uniform(rng, hidden_dim, input_dim) for g in GATES}
    u = {g: glorot_uniform(rng, hidden_dim, hidden_dim) for g in GATES}
    b = {g: np.full(hidden_dim, 1.0 if g == "f" else 0.0) for g in GATES}
    return LSTMParams(w=w, u=u, b=b)


def _sigmoid(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def lstm_forward(params: LSTMParams, x: np.ndarray, want_cache: bool = False):
    """Run the recurrence over a batch of sequences x of shape (B, S, D).

    Returns the final hidden state (B, H), plus the step-by-step cache when
    ``want_cache`` (needed for BPTT).
    """
    if x.ndim != 3:
        raise ValueError(f"expected (batch, steps, features), got shape {x.shape}")
    batch, n_steps, input_dim = x.shape
    if input_dim != params.input_dim:
        raise ValueError(
            f"sequence feature dim {input_dim} != cell input dim {params.input_dim}"
        )
    hidden = params.hidden_dim
    w_all = np.concatenate([params.w[g] for g in GATES], axis=0)  # (4H, D)
    u_all = np.concatenate([params.u[g] for g in GATES], axis=0)  # (4H, H)
    b_all = np.concatenate([params.b[g] for g in GATES])
    # input contributions for every step at once
    xw = (x.reshape(batch * n_steps, input_dim) @ w_all.T).reshape(batch, n_steps, 4 * hidden)

    h = np.zeros((batch, hidden))
    c = np.zeros((batch, hidden))
    cache = {k: [] for k in ("i", "f", "g", "o", "tc", "c_prev", "h_prev")} if want_cache else None
    for s in range(n_steps):
        a = xw[:, s, :] + h @ u_all.T + b_all
        gi = _sigmoid(a[:, :hidden])
        gf = _sigmoid(a[:, hidden : 2 * hidden])
        gg = np.tanh(a[:, 2 * hidden : 3 * hidden])
        go = _sigmoid(a[:, 3 * hidden :])
        if want_cache:
            cache["c_prev"].append(c)
            cache["h_prev"].append(h)
        c = gf * c + gi * gg
        tc = np.tanh(c)
        h = go * tc
        if want_cache:
            for key, val in zip(("i", "f", "g", "o", "tc"), (gi, gf, gg, go, tc)):
                cache[key].append(val)
    if want_cache:
        return h, cache
    return h


def lstm_backward(params: LSTMParams, x: np.ndarray, cache: dict, d_h_final: np.ndarray):
    """BPTT from the gradient of the final hidden state.

    Returns an LSTMParams of gradients (same shapes as the parameters).
    """
    batch, n_steps, _ = x.shape
    gw = {g: np.zeros_like(params.w[g]) for g in GATES}
    gu = {g: np.zeros_like(params.u[g]) for g in GATES}
    gb = {g: np.zeros_like(params.b[g]) for g in GATES}
    dh = d_h_final
    dc = np.zeros_like(d_h_final)
    for s in reversed(range(n_steps)):
        gi, gf, gg, go = (cache[k][s] for k in ("i", "f", "g", "o"))
        tc = cache["tc"][s]
        c_prev = cache["c_prev"][s]
        h_prev = cache["h_prev"][s]
        d_o = dh * tc
        dc = dc + dh * go * (1.0 - tc * tc)
        d_i = dc * gg
        d_g = dc * gi
        d_f = dc * c_prev
        da = {
            "i": d_i * gi * (1.0 - gi),
            "f": d_f * gf * (1.0 - gf),
            "g": d_g * (1.0 - gg * gg),
            "o": d_o * go * (1.0 - go),
        }
        xs = x[:, s, :]
        dh = np.zeros_like(dh)
        for g in GATES:
            gw[g] += da[g].T @ xs
            gu[g] += da[g].T @ h_prev
            gb[g] += da[g].sum(axis=0)
            dh += da[g] @ params.u[g]
        dc = dc * gf
    return LSTMParams(w=gw, u=gu, b=gb)
