"""Objective adapters: anything exposing value(w) and grad(w) generically.

Both methods must accept float64, ``Cplx`` and ``BiCplx`` parameter vectors
and return a scalar / vector of the same kind; that is what allows the
directional-derivative operators and the optimizer to run unchanged on
networks and on closed-form test problems.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol

import numpy as np

from . import tensor_net
from .tensor_net import Batch, Model


class Objective(Protocol):
    n_params: int

    def value(self, w): ...

    def grad(self, w): ...


@dataclass
class NetworkObjective:
    """Batch loss of a network as a function of its flat parameter vector."""

    model: Model
    loss: str
    batch: Batch

    @property
    def n_params(self) -> int:
        return self.model.param_count

    def value(self, w):
        return tensor_net.forward(self.model, self.loss, w, self.batch)

    def grad(self, w):
        return tensor_net.backward(self.model, self.loss, w, self.batch)


class QuadraticObjective:
    """f(w) = 0.5 * w^T A w + b^T w with symmetric A; Hessian is exactly A."""

    def __init__(self, a: np.ndarray, b: np.ndarray | None = None):
        a = np.asarray(a, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("A must be square")
        if not np.allclose(a, a.T):
            raise ValueError("A must be symmetric")
        self.a = a
        self.b = np.zeros(a.shape[0]) if b is None else np.asarray(b, dtype=np.float64)
        self.n_params = a.shape[0]

    def value(self, w):
        return (w @ (self.a @ w)) * 0.5 + self.b @ w

    def grad(self, w):
        return self.a @ w + self.b


class QuarticObjective:
    """f(w) = sum_i c_i * w_i^4; a smooth test problem with third-order error."""

    def __init__(self, coeffs):
        self.coeffs = np.atleast_1d(np.asarray(coeffs, dtype=np.float64))
        self.n_params = self.coeffs.shape[0]

    def value(self, w):
        w2 = w * w
        return (w2 * w2 * self.coeffs).sum()

    def grad(self, w):
        return w * w * w * (4.0 * self.coeffs)


def random_spd_quadratic(seed: int, n: int, cond: float = 1e3) -> QuadraticObjective:
    """Seeded SPD quadratic with log-spaced spectrum and random gradient."""
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    eigs = np.logspace(0.0, np.log10(cond), n)
    a = q @ np.diag(eigs) @ q.T
    a = 0.5 * (a + a.T)
    return QuadraticObjective(a, rng.standard_normal(n))


def random_indefinite_quadratic(seed: int, n: int) -> QuadraticObjective:
    """Seeded symmetric quadratic with at least one negative eigenvalue."""
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    eigs = rng.uniform(0.5, 3.0, n)
    eigs[0] = -rng.uniform(0.5, 3.0)
    a = q @ np.diag(eigs) @ q.T
    return QuadraticObjective(0.5 * (a + a.T), rng.standard_normal(n))
