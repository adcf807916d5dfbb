"""Immutable simple graph stored as sorted neighbor lists (CSR)."""

from __future__ import annotations

import numpy as np

from .errors import ValidationError
from .weights import WeightVector


class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``indices[indptr[v]:indptr[v+1]]`` is the sorted neighbor list of ``v``.
    ``multiplicity``, when present, is aligned with ``indices`` and holds the
    number of parallel edges the pair carried in the multigraph.
    """

    __slots__ = ("n", "indptr", "indices", "weights", "multiplicity")

    def __init__(self, n, indptr, indices, weights: WeightVector | None = None,
                 multiplicity=None):
        self.n = int(n)
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int32)
        if self.indptr.shape != (self.n + 1,) or self.indptr[-1] != self.indices.size:
            raise ValidationError("inconsistent CSR arrays")
        if weights is not None and weights.n != self.n:
            raise ValidationError(f"{weights.n} weights for {self.n} vertices")
        self.weights = weights
        self.multiplicity = None if multiplicity is None else np.asarray(multiplicity, dtype=np.int64)
        for arr in (self.indptr, self.indices, self.multiplicity):
            if arr is not None:
                arr.setflags(write=False)

    @classmethod
    def from_pairs(cls, n, i, j, weights=None, multiplicity=None, assume_unique=False):
        """Build from endpoint arrays.

        Duplicate pairs are merged; with ``multiplicity`` given, the counts of
        merged duplicates are summed.
        """
        n = int(n)
        i = np.asarray(i, dtype=np.int64).ravel()
        j = np.asarray(j, dtype=np.int64).ravel()
        if i.shape != j.shape:
            raise ValidationError("endpoint arrays differ in length")
        if i.size:
            if min(i.min(), j.min()) < 0 or max(i.max(), j.max()) >= n:
                raise ValidationError(f"vertex id out of range for n={n}")
            if np.any(i == j):
                raise ValidationError("self-loops are not allowed")
        lo = np.minimum(i, j)
        hi = np.maximum(i, j)
        key = lo * n + hi
        del lo, hi
        if multiplicity is not None:
            mult = np.asarray(multiplicity, dtype=np.int64).ravel()
            if mult.shape != key.shape or np.any(mult < 1):
                raise ValidationError("multiplicities must be >= 1, one per pair")
            key, inv = np.unique(key, return_inverse=True)
            mult = np.bincount(inv.ravel(), weights=mult, minlength=key.size).astype(np.int64)
        else:
            mult = None
            if not assume_unique:
                key = np.unique(key)
        return cls._from_upper_keys(n, key, weights, mult)

    @classmethod
    def _from_upper_keys(cls, n, key, weights, mult):
        lo = (key // n).astype(np.int32) if n else key.astype(np.int32)
        hi = (key % n).astype(np.int32) if n else key.astype(np.int32)
        deg = np.bincount(lo, minlength=n) + np.bincount(hi, minlength=n)
        both = np.concatenate([key, hi.astype(np.int64) * n + lo])
        del lo, hi
        if mult is None:
            both.sort()
            m_sorted = None
        else:
            order = np.argsort(both, kind="stable")
            both = both[order]
            m_sorted = np.concatenate([mult, mult])[order]
        if n:
            np.remainder(both, n, out=both)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(deg, out=indptr[1:])
        return cls(n, indptr, both.astype(np.int32), weights, m_sorted)

    @classmethod
    def empty(cls, n, weights=None):
        return cls(n, np.zeros(n + 1, dtype=np.int64), np.zeros(0, dtype=np.int32), weights)

    @property
    def edge_count(self) -> int:
        return int(self.indices.size // 2)

    def neighbors(self, v) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def multidegrees(self) -> np.ndarray:
        if self.multiplicity is None:
            return self.degrees()
        rows = np.repeat(np.arange(self.n), self.degrees())
        return np.bincount(rows, weights=self.multiplicity, minlength=self.n).astype(np.int64)

    def has_edge(self, u, v) -> bool:
        nb = self.neighbors(u)
        k = np.searchsorted(nb, v)
        return bool(k < nb.size and nb[k] == v)

    def edges(self):
        """Endpoint arrays ``(u, v)`` with ``u < v``, lexicographically sorted."""
        rows = np.repeat(np.arange(self.n, dtype=np.int32), self.degrees())
        upper = rows < self.indices
        return rows[upper], self.indices[upper]

    def edge_multiplicities(self):
        """Multiplicities aligned with :meth:`edges`."""
        if self.multiplicity is None:
            return np.ones(self.edge_count, dtype=np.int64)
        rows = np.repeat(np.arange(self.n, dtype=np.int32), self.degrees())
        return self.multiplicity[rows < self.indices]

    def edge_keys(self) -> np.ndarray:
        u, v = self.edges()
        return u.astype(np.int64) * self.n + v

    def neighbor_sets(self):
        ip, ix = self.indptr, self.indices.tolist()
        return [set(ix[ip[v]:ip[v + 1]]) for v in range(self.n)]

    def subgraph_adjacency(self, vertices):
        """Neighbor sets of the induced subgraph, relabelled to ``0..k-1``."""
        vertices = np.asarray(vertices, dtype=np.int64)
        local = np.full(self.n, -1, dtype=np.int64)
        local[vertices] = np.arange(vertices.size)
        out = []
        for v in vertices:
            nb = local[self.neighbors(v)]
            out.append(nb[nb >= 0].tolist())
        return out

    def collapse(self) -> "Graph":
        return Graph(self.n, self.indptr, self.indices, self.weights)

    def check(self):
        """Raise if symmetry, sortedness or loop-freeness is violated."""
        for v in range(self.n):
            nb = self.neighbors(v)
            if nb.size and (np.any(np.diff(nb) <= 0) or np.any(nb == v)):
                raise ValidationError(f"bad neighbor list at vertex {v}")
        u, v = self.edges()
        rows = np.repeat(np.arange(self.n), self.degrees())
        if 2 * u.size != self.indices.size:
            raise ValidationError("asymmetric adjacency")
        fwd = np.sort(u.astype(np.int64) * self.n + v)
        lower = rows > self.indices
        bwd = np.sort(self.indices[lower].astype(np.int64) * self.n + rows[lower])
        if not np.array_equal(fwd, bwd):
            raise ValidationError("asymmetric adjacency")
        if self.multiplicity is not None and np.any(self.multiplicity < 1):
            raise ValidationError("multiplicity below one")

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.edge_count})"
