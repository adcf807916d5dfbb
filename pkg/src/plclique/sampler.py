"""Samplers for G(n, alpha) and its kernel variants.

``sample_pairwise`` is the O(n^2) reference. The fast samplers produce the
same per-pair laws in time roughly linear in the number of edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EdgeBudgetError, ValidationError
from .graph import Graph
from .model import ModelParams, edge_probability
from .weights import WeightVector

DEFAULT_EDGE_BUDGET = 200_000_000
CAPPED_LAMBDA_HIGH = 0.9


def _scale(weights: WeightVector, params: ModelParams, n_scale):
    if params.normalization == "by-weight-sum":
        return float(weights.w.sum())
    return float(weights.n if n_scale is None else n_scale)


def sample_pairwise(weights: WeightVector, params: ModelParams, seed=None,
                    n_scale=None, block=1 << 22) -> Graph:
    """One uniform per pair ``i < j`` in lexicographic order; edge iff ``u < p_ij``.

    ``n_scale`` replaces the vertex count in by-n normalization (used when the
    vertex count itself is random).
    """
    rng = np.random.default_rng(seed)
    n = weights.n
    if n < 2:
        return Graph.empty(n, weights)
    beta = params.pair_factor(_scale(weights, params, n_scale))
    w = weights.w
    us, vs = [], []
    row = 0
    while row < n - 1:
        # rows row..stop-1 hold at most `block` pairs
        stop = row + 1
        size = n - 1 - row
        while stop < n - 1 and size + (n - 1 - stop) <= block:
            size += n - 1 - stop
            stop += 1
        i, j = _rows_pairs(n, row, stop)
        u = rng.random(i.size)
        p = edge_probability(beta * w[i] * w[j], params.kernel)
        hit = u < p
        us.append(i[hit])
        vs.append(j[hit])
        row = stop
    return Graph.from_pairs(n, np.concatenate(us), np.concatenate(vs), weights, assume_unique=True)


def _rows_pairs(n, start, stop):
    counts = n - 1 - np.arange(start, stop)
    i = np.repeat(np.arange(start, stop), counts)
    offs = np.arange(i.size) - np.repeat(np.cumsum(counts) - counts, counts)
    return i, i + 1 + offs


def sample_multigraph_fast(weights: WeightVector, params: ModelParams, seed=None,
                           n_scale=None, max_edges=DEFAULT_EDGE_BUDGET) -> Graph:
    """Poisson multigraph with ``E_ij ~ Po(lambda_ij)``, multiplicities retained.

    Draws a Poisson total with mean ``beta * (sum W)**2 / 2`` and i.i.d.
    endpoints proportional to W, discarding self-loops.
    """
    if params.kernel != "exponential":
        raise ValidationError("the multigraph sampler realizes the exponential kernel only")
    rng = np.random.default_rng(seed)
    n = weights.n
    if n < 2:
        return Graph.empty(n, weights)
    w = weights.w
    total = float(w.sum())
    beta = params.pair_factor(_scale(weights, params, n_scale))
    mean = 0.5 * beta * total * total
    if mean > max_edges:
        raise EdgeBudgetError(f"expected {mean:.3g} multi-edges exceeds budget {max_edges:.3g}")
    m = rng.poisson(mean)
    cdf = np.cumsum(w)
    cdf /= cdf[-1]
    ends = np.searchsorted(cdf, rng.random(2 * m), side="right")
    np.minimum(ends, n - 1, out=ends)
    i, j = ends[:m], ends[m:]
    keep = i != j
    i, j = i[keep], j[keep]
    return Graph.from_pairs(n, i, j, weights, multiplicity=np.ones(i.size, dtype=np.int64))


def collapse_multigraph(g: Graph) -> Graph:
    return g.collapse()


def _split_sample(weights, params, rng, n_scale, tau, boost, max_edges):
    """Exact per-pair Bernoulli sampling with a high/low intensity split.

    Vertices are scanned in decreasing weight. For each vertex, partners with
    ``lambda >= tau`` form a contiguous run right after it and are drawn
    directly. The remaining partners form a suffix; a Poisson candidate
    process with rate ``boost * lambda`` over that suffix proposes pairs, and
    each distinct proposed pair is kept with probability
    ``p(lambda) / (1 - exp(-boost * lambda))``.
    """
    n = weights.n
    if n < 2:
        return Graph.empty(n, weights)
    kernel = params.kernel
    beta = params.pair_factor(_scale(weights, params, n_scale))
    order = weights.rank
    ws = weights.w[order]
    pos = np.arange(n)

    # h[i]: number of positions whose weight reaches tau / (beta * ws[i])
    h = np.searchsorted(-ws, -tau / (beta * ws), side="right")
    low_start = np.maximum(h, pos + 1)
    n_high = np.maximum(h - (pos + 1), 0)

    cum = np.zeros(n + 1)
    np.cumsum(ws, out=cum[1:])
    suffix = cum[n] - cum[low_start]
    np.maximum(suffix, 0.0, out=suffix)
    rates = boost * beta * ws * suffix
    expected = float(n_high.sum()) + float(rates.sum())
    if expected > max_edges:
        raise EdgeBudgetError(f"expected {expected:.3g} candidate pairs exceeds budget {max_edges:.3g}")

    total_high = int(n_high.sum())
    ha = np.repeat(pos, n_high)
    hb = ha + 1 + (np.arange(total_high) - np.repeat(np.cumsum(n_high) - n_high, n_high))
    lam = beta * ws[ha] * ws[hb]
    keep = rng.random(total_high) < edge_probability(lam, kernel)
    ha, hb = ha[keep], hb[keep]
    del lam, keep

    counts = rng.poisson(rates)
    la = np.repeat(pos, counts)
    x = cum[low_start[la]] + rng.random(la.size) * suffix[la]
    lb = np.searchsorted(cum, x, side="right") - 1
    np.clip(lb, low_start[la], n - 1, out=lb)
    del x
    key = np.unique(la * n + lb)
    del la, lb
    la, lb = np.divmod(key, n)
    del key
    if not (kernel == "exponential" and boost == 1.0):
        lam = beta * ws[la] * ws[lb]
        q = edge_probability(lam, kernel) / -np.expm1(-boost * lam)
        keep = rng.random(la.size) < q
        la, lb = la[keep], lb[keep]
        del lam, q, keep

    u = order[np.concatenate([ha, la])]
    v = order[np.concatenate([hb, lb])]
    return Graph.from_pairs(n, u, v, weights, assume_unique=True)


def sample_simple_fast(weights: WeightVector, params: ModelParams, seed=None,
                       n_scale=None, max_edges=DEFAULT_EDGE_BUDGET, tau=1.0) -> Graph:
    """Simple exponential-kernel graph without materializing parallel edges."""
    if params.kernel != "exponential":
        raise ValidationError("use sample_variant_fast for the capped and ratio kernels")
    return _split_sample(weights, params, np.random.default_rng(seed), n_scale,
                         tau, 1.0, max_edges)


def sample_variant_fast(weights: WeightVector, params: ModelParams, seed=None,
                        n_scale=None, max_edges=DEFAULT_EDGE_BUDGET,
                        lambda_high=CAPPED_LAMBDA_HIGH) -> Graph:
    """Fast sampler for the capped ``min(lambda, 1)`` and ratio ``lambda/(1+lambda)`` kernels.

    Ratio: exponential-kernel candidates thinned by
    ``[lambda/(1+lambda)] / [1 - exp(-lambda)]``. Capped: pairs with
    ``lambda >= lambda_high`` are drawn directly, the rest through candidates
    boosted by ``-log(1 - lambda_high) / lambda_high``.
    """
    if params.normalization != "by-n":
        raise ValidationError("variant kernels are sampled with by-n normalization")
    rng = np.random.default_rng(seed)
    if params.kernel == "ratio":
        return _split_sample(weights, params, rng, n_scale, 1.0, 1.0, max_edges)
    if params.kernel == "capped":
        if not 0 < lambda_high < 1:
            raise ValidationError("lambda_high must lie in (0, 1)")
        boost = -math.log1p(-lambda_high) / lambda_high
        return _split_sample(weights, params, rng, n_scale, lambda_high, boost, max_edges)
    raise ValidationError(f"sample_variant_fast handles capped and ratio kernels, not {params.kernel!r}")


def sample_graph(weights: WeightVector, params: ModelParams, seed=None, n_scale=None,
                 method="fast", max_edges=DEFAULT_EDGE_BUDGET) -> Graph:
    """Dispatch to the right sampler for ``params.kernel``."""
    if method == "pairwise":
        return sample_pairwise(weights, params, seed, n_scale)
    if method == "multigraph":
        return sample_multigraph_fast(weights, params, seed, n_scale, max_edges)
    if method != "fast":
        raise ValidationError(f"unknown sampler {method!r}")
    if params.kernel == "exponential":
        return sample_simple_fast(weights, params, seed, n_scale, max_edges)
    return sample_variant_fast(weights, params, seed, n_scale, max_edges)


@dataclass(frozen=True, eq=False)
class HeavyVertexSet:
    threshold_s: float
    threshold: float
    members: np.ndarray

    def complement(self, n) -> np.ndarray:
        mask = np.ones(n, dtype=bool)
        mask[self.members] = False
        return np.flatnonzero(mask)

    def __len__(self):
        return int(self.members.size)


def heavy_vertex_set(weights: WeightVector, s: float) -> HeavyVertexSet:
    """Vertices with ``W_i > s * sqrt(n log n)`` (natural log)."""
    n = weights.n
    if n < 2:
        raise ValidationError("heavy vertex set needs n >= 2")
    if not s > 0:
        raise ValidationError(f"s must be positive, got {s}")
    thr = s * math.sqrt(n * math.log(n))
    return HeavyVertexSet(s, thr, np.flatnonzero(weights.w > thr))


def degrees(g: Graph, multigraph=False) -> np.ndarray:
    return g.multidegrees() if multigraph else g.degrees()
