"""Ordered clique heuristics, an exact maximum-clique oracle and small-clique counts."""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, ValidationError
from .graph import Graph

DEFAULT_NODE_BUDGET = 10 ** 8

METHODS = ("greedy", "quasi_top", "full_top", "exact",
           "degree_greedy", "degree_quasi_top", "degree_full_top")


@dataclass(frozen=True)
class CliqueResult:
    vertices: tuple
    method: str
    order_used: str | None = None

    @property
    def size(self) -> int:
        return len(self.vertices)


def weight_order(g: Graph) -> np.ndarray:
    if g.weights is None:
        raise ValidationError("graph carries no weights; pass an explicit order")
    return g.weights.rank


def degree_order(g: Graph, multigraph=False) -> np.ndarray:
    """Vertices by decreasing degree, then decreasing weight, then increasing id."""
    deg = g.multidegrees() if multigraph else g.degrees()
    ids = np.arange(g.n)
    if g.weights is None:
        return np.lexsort((ids, -deg)).astype(np.int64)
    return np.lexsort((ids, -g.weights.w, -deg)).astype(np.int64)


def _positions(g: Graph, order) -> tuple[np.ndarray, np.ndarray]:
    order = np.asarray(order, dtype=np.int64)
    if order.shape != (g.n,):
        raise ValidationError(f"order has {order.size} entries for {g.n} vertices")
    pos = np.full(g.n, -1, dtype=np.int64)
    pos[order] = np.arange(g.n)
    if g.n and pos.min() < 0:
        raise ValidationError("order is not a permutation")
    return order, pos


def _result(vertices, method, order_used):
    return CliqueResult(tuple(sorted(int(v) for v in vertices)), method, order_used)


def _adjacent_to(g: Graph, v, ids: np.ndarray) -> np.ndarray:
    nb = g.neighbors(v)
    if not nb.size:
        return np.zeros(ids.size, dtype=bool)
    k = np.searchsorted(nb, ids)
    np.minimum(k, nb.size - 1, out=k)
    return nb[k] == ids


def greedy_clique(g: Graph, order=None, order_used="weight") -> CliqueResult:
    """Scan ``order``; keep a vertex iff it is adjacent to every vertex kept so far."""
    order, pos = _positions(g, weight_order(g) if order is None else order)
    method = "greedy" if order_used == "weight" else "degree_greedy"
    if g.n == 0:
        return _result((), method, order_used)
    first = order[0]
    kept = [first]
    # positions later in the scan that are adjacent to everything kept so far
    cand = np.sort(pos[g.neighbors(first)])
    while cand.size:
        v = order[cand[0]]
        kept.append(v)
        cand = cand[1:]
        if cand.size:
            cand = cand[_adjacent_to(g, v, order[cand])]
    return _result(kept, method, order_used)


def _earlier_complete(g: Graph, order, pos, p) -> bool:
    """True iff the vertex at scan position ``p`` is adjacent to all earlier ones."""
    nb = g.neighbors(order[p])
    return nb.size >= p and np.count_nonzero(pos[nb] < p) == p


def quasi_top_clique(g: Graph, order=None, order_used="weight") -> CliqueResult:
    """Vertices adjacent to every vertex earlier in ``order``, selected or not."""
    order, pos = _positions(g, weight_order(g) if order is None else order)
    method = "quasi_top" if order_used == "weight" else "degree_quasi_top"
    deg = g.degrees()[order]
    cand = np.flatnonzero(deg >= np.arange(g.n))
    members = [order[p] for p in cand if _earlier_complete(g, order, pos, p)]
    return _result(members, method, order_used)


def full_top_clique(g: Graph, order=None, order_used="weight") -> CliqueResult:
    """Longest prefix of ``order`` inducing a complete subgraph."""
    order, pos = _positions(g, weight_order(g) if order is None else order)
    method = "full_top" if order_used == "weight" else "degree_full_top"
    k = 0
    while k < g.n and _earlier_complete(g, order, pos, k):
        k += 1
    return _result(order[:k], method, order_used)


def is_clique(g: Graph, vertices) -> bool:
    s = np.unique(np.asarray(list(vertices), dtype=np.int64))
    if s.size and (s[0] < 0 or s[-1] >= g.n):
        raise ValidationError(f"vertex id out of range for n={g.n}")
    for k, v in enumerate(s):
        rest = s[k + 1:]
        if rest.size and not _adjacent_to(g, v, rest).all():
            return False
    return True


def _core(g: Graph, k: int) -> np.ndarray:
    """Vertices of the k-core (every vertex keeps degree >= k inside it)."""
    deg = g.degrees().copy()
    alive = np.ones(g.n, dtype=bool)
    rows = None
    while True:
        drop = alive & (deg < k)
        if not drop.any():
            return np.flatnonzero(alive)
        alive &= ~drop
        if rows is None:
            rows = np.repeat(np.arange(g.n), g.degrees())
        deg -= np.bincount(g.indices[drop[rows]], minlength=g.n)


def _degeneracy_order(adj) -> list:
    """Smallest-last vertex ordering of an adjacency-list graph."""
    deg = [len(a) for a in adj]
    heap = [(d, v) for v, d in enumerate(deg)]
    heapq.heapify(heap)
    done = [False] * len(adj)
    out = []
    while heap:
        d, v = heapq.heappop(heap)
        if done[v] or d != deg[v]:
            continue
        done[v] = True
        out.append(v)
        for u in adj[v]:
            if not done[u]:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    return out


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _max_clique_bitset(adj, best, budget):
    """Bron-Kerbosch with pivoting over a degeneracy ordering, bounded by ``best``.

    Returns a local vertex list strictly larger than ``best`` if one exists,
    else None.
    """
    nbr = [0] * len(adj)
    for v, a in enumerate(adj):
        m = 0
        for u in a:
            m |= 1 << u
        nbr[v] = m
    found = None
    best_size = best
    nodes = 0

    def expand(r, p, x):
        nonlocal found, best_size, nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(budget, best_size)
        if not p:
            if len(r) > best_size:
                best_size = len(r)
                found = list(r)
            return
        if len(r) + p.bit_count() <= best_size:
            return
        pivot, score = -1, -1
        for u in _bits(p | x):
            s = (p & nbr[u]).bit_count()
            if s > score:
                pivot, score = u, s
        for v in _bits(p & ~nbr[pivot]):
            r.append(v)
            expand(r, p & nbr[v], x & nbr[v])
            r.pop()
            p &= ~(1 << v)
            x |= 1 << v
            if len(r) + p.bit_count() <= best_size:
                return

    remaining = (1 << len(adj)) - 1
    for v in _degeneracy_order(adj):
        remaining &= ~(1 << v)
        p = nbr[v] & remaining
        if 1 + p.bit_count() <= best_size:
            continue
        expand([v], p, nbr[v] & ~remaining)
    return found


def max_clique_exact(g: Graph, node_budget: int = DEFAULT_NODE_BUDGET) -> CliqueResult:
    """A maximum clique; raises :class:`BudgetExceeded` past ``node_budget`` search nodes.

    The empty graph on n >= 1 vertices has clique number 1.
    """
    if g.n == 0:
        return CliqueResult((), "exact")
    if g.edge_count == 0:
        return CliqueResult((0,), "exact")
    best = greedy_clique(g, degree_order(g), order_used="degree").vertices
    # a clique larger than `best` lives in the len(best)-core
    core = _core(g, len(best))
    if core.size > len(best):
        adj = g.subgraph_adjacency(core)
        found = _max_clique_bitset(adj, len(best), node_budget)
        if found is not None:
            best = core[found]
    return _result(best, "exact", None)


def run_method(g: Graph, method: str, node_budget: int = DEFAULT_NODE_BUDGET) -> CliqueResult:
    if method == "exact":
        return max_clique_exact(g, node_budget)
    if method not in METHODS:
        raise ValidationError(f"unknown clique method {method!r}; expected one of {METHODS}")
    if method.startswith("degree_"):
        fn = {"degree_greedy": greedy_clique, "degree_quasi_top": quasi_top_clique,
              "degree_full_top": full_top_clique}[method]
        return fn(g, degree_order(g), order_used="degree")
    fn = {"greedy": greedy_clique, "quasi_top": quasi_top_clique, "full_top": full_top_clique}[method]
    return fn(g, weight_order(g), order_used="weight")


def _forward_sets(g: Graph):
    """Edges oriented from lower to higher (degree, id) rank, as neighbor sets."""
    rank = np.empty(g.n, dtype=np.int64)
    rank[np.lexsort((np.arange(g.n), g.degrees()))] = np.arange(g.n)
    u, v = g.edges()
    flip = rank[u] > rank[v]
    a = np.where(flip, v, u)
    b = np.where(flip, u, v)
    fwd = [set() for _ in range(g.n)]
    for x, y in zip(a.tolist(), b.tolist()):
        fwd[x].add(y)
    return fwd, a.tolist(), b.tolist()


def count_triangles(g: Graph) -> int:
    if g.edge_count < 3:
        return 0
    fwd, a, b = _forward_sets(g)
    return sum(len(fwd[x] & fwd[y]) for x, y in zip(a, b))


def count_k4(g: Graph) -> int:
    if g.edge_count < 6:
        return 0
    fwd, a, b = _forward_sets(g)
    total = 0
    for x, y in zip(a, b):
        common = fwd[x] & fwd[y]
        if len(common) > 1:
            total += sum(len(fwd[z] & common) for z in common)
    return total
