"""Dense feedforward networks generic over the parameter scalar kind.

Parameters may be a plain float64 vector, a ``Cplx`` vector, or a ``BiCplx``
vector; forward and backward run the identical code path for all three, so a
zero-imaginary input reproduces the real computation bit for bit and a
perturbed input carries derivative information on its imaginary channels.

Backpropagation here is the chain rule of the *analytically promoted*
network: no conjugation anywhere (the network is holomorphic in its
parameters away from the frozen piecewise branches).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import multicomplex as mcx
from .errors import EvaluationError
from .multicomplex import BiCplx, Cplx

ACTIVATIONS = ("sigmoid", "tanh", "relu", "elu", "sin", "none")
LOSSES = ("cross_entropy", "mse", "hinge2", "logistic")


@dataclass(frozen=True)
class Dense:
    in_dim: int
    out_dim: int
    bias: bool = True


@dataclass(frozen=True)
class Activation:
    fn: str

    def __post_init__(self):
        if self.fn not in ACTIVATIONS:
            raise ValueError(f"unknown activation {self.fn!r}")


@dataclass(frozen=True)
class Batch:
    inputs: np.ndarray  # (B, d) float64
    targets: np.ndarray  # (B,) int labels or (B, d_out) float64

    @property
    def size(self) -> int:
        return self.inputs.shape[0]


class Model:
    """Ordered layer list with a flat parameter-vector view."""

    def __init__(self, layers):
        layers = tuple(layers)
        width = None
        count = 0
        for layer in layers:
            if isinstance(layer, Dense):
                if width is not None and layer.in_dim != width:
                    raise ValueError(
                        f"layer shapes do not chain: expected in_dim {width}, "
                        f"got {layer.in_dim}"
                    )
                width = layer.out_dim
                count += layer.in_dim * layer.out_dim + (layer.out_dim if layer.bias else 0)
            elif not isinstance(layer, Activation):
                raise TypeError(f"unsupported layer {layer!r}")
        if width is None:
            raise ValueError("model needs at least one Dense layer")
        self.layers = layers
        self.param_count = count
        self.in_dim = next(l.in_dim for l in layers if isinstance(l, Dense))
        self.out_dim = width

    def init_params(self, seed: int) -> np.ndarray:
        """Fan-based uniform weights, zero biases, seeded for reproducibility."""
        rng = np.random.default_rng(seed)
        parts = []
        for layer in self.layers:
            if isinstance(layer, Dense):
                limit = np.sqrt(6.0 / (layer.in_dim + layer.out_dim))
                parts.append(
                    rng.uniform(-limit, limit, layer.out_dim * layer.in_dim)
                )
                if layer.bias:
                    parts.append(np.zeros(layer.out_dim))
        return np.concatenate(parts)

    def unflatten(self, params):
        """Slice the parameter vector into (W, b) per Dense layer (row-major)."""
        out = []
        pos = 0
        for layer in self.layers:
            if not isinstance(layer, Dense):
                out.append(None)
                continue
            n_w = layer.out_dim * layer.in_dim
            w = params[pos : pos + n_w].reshape(layer.out_dim, layer.in_dim)
            pos += n_w
            b = None
            if layer.bias:
                b = params[pos : pos + layer.out_dim]
                pos += layer.out_dim
            out.append((w, b))
        if pos != _length(params):
            raise ValueError(f"parameter vector has length {_length(params)}, expected {pos}")
        return out

    def flatten(self, parts):
        """Inverse of unflatten; concatenates row-major W then b in layer order."""
        flat = []
        for layer, part in zip(self.layers, parts):
            if not isinstance(layer, Dense):
                continue
            w, b = part
            flat.append(w.reshape(layer.out_dim * layer.in_dim))
            if layer.bias:
                flat.append(b)
        return _concat(flat)


def dense_net(dims, activation="sigmoid", bias=True) -> Model:
    """Dense chain with the given widths and activations between layers."""
    layers = []
    for k in range(len(dims) - 1):
        layers.append(Dense(dims[k], dims[k + 1], bias=bias))
        if k < len(dims) - 2 and activation != "none":
            layers.append(Activation(activation))
    return Model(layers)


def _length(v) -> int:
    return int(np.shape(mcx.leading_real(v))[0])


def _concat(vs):
    if isinstance(vs[0], BiCplx):
        return BiCplx(_concat([v.z1 for v in vs]), _concat([v.z2 for v in vs]))
    if isinstance(vs[0], Cplx):
        return Cplx(
            np.concatenate([np.atleast_1d(v.re) for v in vs]),
            np.concatenate([np.atleast_1d(v.im) for v in vs]),
        )
    return np.concatenate([np.atleast_1d(v) for v in vs])


def _check_finite(x, where: str):
    ok = x.isfinite() if isinstance(x, (Cplx, BiCplx)) else bool(np.all(np.isfinite(x)))
    if not ok:
        raise EvaluationError(f"non-finite values after {where}")


_ACT_FNS = {
    "sigmoid": mcx.sigmoid,
    "tanh": mcx.tanh,
    "relu": mcx.relu,
    "elu": mcx.elu,
    "sin": mcx.sin,
    "none": lambda x: x,
}


def _act_derivative(fn: str, z, a):
    if fn == "sigmoid":
        return a * (1.0 - a)
    if fn == "tanh":
        return 1.0 - a * a
    if fn == "relu":
        return np.where(mcx.leading_real(z) > 0.0, 1.0, 0.0)
    if fn == "elu":
        ones = np.ones_like(mcx.leading_real(z))
        return mcx.select(mcx.leading_real(z) > 0.0, _like(a, ones), a + 1.0)
    if fn == "sin":
        return mcx.cos(z)
    return None  # "none": identity


def _like(sample, real_arr):
    if isinstance(sample, BiCplx):
        return BiCplx(Cplx(real_arr))
    if isinstance(sample, Cplx):
        return Cplx(real_arr)
    return real_arr


def _run_layers(model: Model, params, inputs, keep_cache: bool):
    parts = model.unflatten(params)
    x = inputs
    cache = []
    for k, (layer, part) in enumerate(zip(model.layers, parts)):
        if isinstance(layer, Dense):
            w, b = part
            x_in = x
            x = x @ w.T
            if b is not None:
                x = x + b
            if keep_cache:
                cache.append(("dense", x_in, w))
        else:
            z = x
            x = _ACT_FNS[layer.fn](z)
            if keep_cache:
                cache.append(("act", z, x))
        _check_finite(x, f"layer {k} ({layer})")
    return x, cache


# -- losses ------------------------------------------------------------------
# All losses reduce over the batch by mean, so gradient magnitudes are
# batch-size invariant.  Values/gradients keep the scalar kind of the scores.


def _softmax_parts(scores, labels):
    b = np.shape(mcx.leading_real(scores))[0]
    # shift by the max of the real parts: a constant w.r.t. differentiation
    shift = np.max(mcx.leading_real(scores), axis=1, keepdims=True)
    zs = scores - shift
    e = mcx.exp(zs)
    s = e.sum(axis=1)
    return b, zs, e, s


def _ce_value(scores, labels):
    b, zs, e, s = _softmax_parts(scores, labels)
    picked = zs[np.arange(b), labels]
    return (mcx.log(s) - picked).mean()

def _ce_delta(scores, labels):
    b, zs, e, s = _softmax_parts(scores, labels)
    probs = e / s.reshape(-1, 1)
    onehot = np.zeros(np.shape(mcx.leading_real(scores)))
    onehot[np.arange(b), labels] = 1.0
    return (probs - onehot) * (1.0 / b)


def _mse_value(pred, targets):
    d = pred - targets
    return (d * d).mean()

def _mse_delta(pred, targets):
    d = pred - targets
    return d * (2.0 / d_size(pred))

def d_size(x) -> int:
    return int(np.size(mcx.leading_real(x)))


def _hinge2_parts(scores, labels):
    b, c = np.shape(mcx.leading_real(scores))
    picked = scores[np.arange(b), labels]
    margins = scores - picked.reshape(-1, 1) + 1.0
    onehot = np.zeros((b, c), dtype=bool)
    onehot[np.arange(b), labels] = True
    active = (mcx.leading_real(margins) > 0.0) & ~onehot
    acts = mcx.select(active, margins, 0.0)
    return b, onehot, acts


def _hinge2_value(scores, labels):
    b, _, acts = _hinge2_parts(scores, labels)
    return (acts * acts).sum(axis=1).mean()

def _hinge2_delta(scores, labels):
    b, onehot, acts = _hinge2_parts(scores, labels)
    g = acts * (2.0 / b)
    return g - onehot.astype(np.float64) * g.sum(axis=1).reshape(-1, 1)


def _logistic_signed(scores, targets):
    if np.shape(mcx.leading_real(scores))[1] != 1:
        raise ValueError("logistic loss expects a single output column")
    signs = 2.0 * np.asarray(targets, dtype=np.float64) - 1.0
    return scores.reshape(-1) * (-signs), signs

def _logistic_value(scores, targets):
    u, _ = _logistic_signed(scores, targets)
    # softplus(u) = relu(u) + log(1 + exp(-|u|)), overflow-free on both sides
    sp = mcx.relu(u) + mcx.log(1.0 + mcx.exp(-mcx.absolute(u)))
    return sp.mean()

def _logistic_delta(scores, targets):
    u, signs = _logistic_signed(scores, targets)
    b = signs.shape[0]
    return (mcx.sigmoid(u) * (-signs / b)).reshape(-1, 1)


_LOSS_VALUE = {
    "cross_entropy": _ce_value,
    "mse": _mse_value,
    "hinge2": _hinge2_value,
    "logistic": _logistic_value,
}
_LOSS_DELTA = {
    "cross_entropy": _ce_delta,
    "mse": _mse_delta,
    "hinge2": _hinge2_delta,
    "logistic": _logistic_delta,
}


def _check_loss(loss: str):
    if loss not in LOSSES:
        raise ValueError(f"unknown loss {loss!r}")


def forward(model: Model, loss: str, params, batch: Batch):
    """Batch loss of the same scalar kind as ``params``."""
    _check_loss(loss)
    if batch.inputs.shape[1] != model.in_dim:
        raise ValueError(
            f"batch dimension {batch.inputs.shape[1]} does not match model input {model.in_dim}"
        )
    scores, _ = _run_layers(model, params, batch.inputs, keep_cache=False)
    value = _LOSS_VALUE[loss](scores, batch.targets)
    _check_finite(value, "loss")
    return value


def backward(model: Model, loss: str, params, batch: Batch):
    """Gradient of the batch loss w.r.t. the flat parameter vector."""
    _check_loss(loss)
    scores, cache = _run_layers(model, params, batch.inputs, keep_cache=True)
    delta = _LOSS_DELTA[loss](scores, batch.targets)
    parts = [None] * len(cache)
    for k in range(len(cache) - 1, -1, -1):
        layer = model.layers[k]
        if isinstance(layer, Dense):
            _, x_in, w = cache[k]
            d_w = delta.T @ x_in
            d_b = delta.sum(axis=0) if layer.bias else None
            parts[k] = (d_w, d_b)
            delta = delta @ w
        else:
            _, z, a = cache[k]
            deriv = _act_derivative(layer.fn, z, a)
            if deriv is not None:
                delta = delta * deriv
    return model.flatten(parts)
