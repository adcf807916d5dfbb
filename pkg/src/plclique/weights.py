"""Vertex weight sequences for power-law random graphs.

Vertex ids are 0-based throughout the library; file formats and the CLI
use 1-based labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError


@dataclass(frozen=True)
class WeightParams:
    """Tail law ``P(W > x) = a * x**-alpha`` for ``x >= x0``.

    ``x0`` defaults to ``a**(1/alpha)``, the pure Pareto case where
    ``P(W > x0) = 1``.
    """

    alpha: float
    a: float = 1.0
    x0: float | None = None

    def __post_init__(self):
        if not (self.alpha > 0 and np.isfinite(self.alpha)):
            raise ValidationError(f"alpha must be positive, got {self.alpha}")
        if not (self.a > 0 and np.isfinite(self.a)):
            raise ValidationError(f"a must be positive, got {self.a}")
        if self.x0 is None:
            object.__setattr__(self, "x0", self.a ** (1.0 / self.alpha))
        if not self.x0 > 0:
            raise ValidationError(f"x0 must be positive, got {self.x0}")
        # below a**(1/alpha) the tail formula would exceed probability one
        if self.x0 < self.pareto_x0 * (1 - 1e-12):
            raise ValidationError(
                f"x0={self.x0} is below a**(1/alpha)={self.pareto_x0}")

    @property
    def pareto_x0(self) -> float:
        return self.a ** (1.0 / self.alpha)


@dataclass(frozen=True, eq=False)
class WeightVector:
    """Weights ``w[i]`` of vertices ``0..n-1`` and their decreasing-weight order."""

    w: np.ndarray
    rank: np.ndarray = field(default=None)

    def __post_init__(self):
        w = np.asarray(self.w, dtype=np.float64)
        if w.ndim != 1:
            raise ValidationError("weights must be one-dimensional")
        if w.size and not np.all(w > 0):
            raise ValidationError("weights must be positive")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)
        rank = rank_by_weight(w) if self.rank is None else np.asarray(self.rank, dtype=np.int64)
        rank.setflags(write=False)
        object.__setattr__(self, "rank", rank)

    @property
    def n(self) -> int:
        return int(self.w.size)

    @property
    def max(self) -> float:
        return float(self.w.max()) if self.w.size else 0.0

    def __len__(self):
        return self.n


def rank_by_weight(w) -> np.ndarray:
    """Vertex ids by decreasing weight, ties broken by ascending id."""
    w = np.asarray(w, dtype=np.float64)
    return np.argsort(-w, kind="stable").astype(np.int64)


def pareto_from_uniform(u, params: WeightParams) -> np.ndarray:
    """Inverse CDF of the tail law applied to ``u`` in (0, 1].

    Weights below ``x0`` are lifted to ``x0``, which leaves the tail above
    ``x0`` exact and is the identity in the pure Pareto case.
    """
    u = np.asarray(u, dtype=np.float64)
    if np.any((u <= 0) | (u > 1)):
        raise ValidationError("uniforms must lie in (0, 1]")
    return np.maximum(params.x0, (params.a / u) ** (1.0 / params.alpha))


def sample_iid_pareto(n: int, params: WeightParams, seed=None) -> WeightVector:
    if n < 0:
        raise ValidationError(f"n must be nonnegative, got {n}")
    rng = np.random.default_rng(seed)
    u = 1.0 - rng.random(n)
    return WeightVector(pareto_from_uniform(u, params))


def deterministic_weights(n: int, a: float, alpha: float) -> WeightVector:
    """Weights ``a**(1/alpha) * (n/i)**(1/alpha)`` for labels ``i = 1..n``."""
    if n < 1:
        raise ValidationError(f"n must be at least 1, got {n}")
    WeightParams(alpha=alpha, a=a)
    i = np.arange(1, n + 1, dtype=np.float64)
    w = (a * n / i) ** (1.0 / alpha)
    return WeightVector(w, rank=np.arange(n, dtype=np.int64))


def sample_poisson_vertex_count(n: float, seed=None) -> int:
    if not n >= 0:
        raise ValidationError(f"mean vertex count must be nonnegative, got {n}")
    return int(np.random.default_rng(seed).poisson(n))


def read_weights(path) -> WeightVector:
    with open(path) as fh:
        try:
            vals = [float(line) for line in fh if line.strip()]
        except ValueError as e:
            raise ValidationError(f"{path}: {e}") from None
    return WeightVector(np.array(vals, dtype=np.float64))


def write_weights(path, weights: WeightVector):
    with open(path, "w") as fh:
        for x in weights.w:
            fh.write(f"{float(x)!r}\n")
