"""Edge-list and DIMACS clique-format readers and writers (1-based vertex labels)."""

from __future__ import annotations

import numpy as np

from .errors import ValidationError
from .graph import Graph


def write_edgelist(path, g: Graph):
    u, v = g.edges()
    with open(path, "w") as fh:
        fh.write(f"{g.n} {u.size}\n")
        np.savetxt(fh, np.column_stack([u + 1, v + 1]), fmt="%d")


def write_dimacs(path, g: Graph, comment=None):
    u, v = g.edges()
    with open(path, "w") as fh:
        if comment:
            for line in comment.splitlines():
                fh.write(f"c {line}\n")
        fh.write(f"p edge {g.n} {u.size}\n")
        np.savetxt(fh, np.column_stack([u + 1, v + 1]), fmt="e %d %d")


def _finish(n, m, pairs, path, weights):
    if len(pairs) != m:
        raise ValidationError(f"{path}: header declares {m} edges, found {len(pairs)}")
    arr = np.array(pairs, dtype=np.int64).reshape(-1, 2) - 1
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        raise ValidationError(f"{path}: vertex label outside 1..{n}")
    if np.any(arr[:, 0] == arr[:, 1]):
        raise ValidationError(f"{path}: self-loop")
    return Graph.from_pairs(n, arr[:, 0], arr[:, 1], weights)


def read_edgelist(path, weights=None) -> Graph:
    with open(path) as fh:
        lines = [ln.split() for ln in fh if ln.strip() and not ln.startswith("#")]
    if not lines or len(lines[0]) != 2:
        raise ValidationError(f"{path}: expected header line 'n m'")
    try:
        n, m = int(lines[0][0]), int(lines[0][1])
        pairs = [(int(a), int(b)) for a, b in lines[1:]]
    except ValueError as e:
        raise ValidationError(f"{path}: malformed edge list ({e})") from None
    return _finish(n, m, pairs, path, weights)


def read_dimacs(path, weights=None) -> Graph:
    n = m = None
    pairs = []
    with open(path) as fh:
        for ln in fh:
            tok = ln.split()
            if not tok or tok[0] == "c":
                continue
            try:
                if tok[0] == "p":
                    n, m = int(tok[2]), int(tok[3])
                elif tok[0] == "e":
                    pairs.append((int(tok[1]), int(tok[2])))
                else:
                    raise ValidationError(f"{path}: unexpected line {ln.strip()!r}")
            except (IndexError, ValueError):
                raise ValidationError(f"{path}: malformed line {ln.strip()!r}") from None
    if n is None:
        raise ValidationError(f"{path}: missing 'p edge n m' line")
    return _finish(n, m, pairs, path, weights)


def read_graph(path, fmt="edgelist", weights=None) -> Graph:
    if fmt == "edgelist":
        return read_edgelist(path, weights)
    if fmt == "dimacs":
        return read_dimacs(path, weights)
    raise ValidationError(f"unknown graph format {fmt!r}")


def write_graph(path, g: Graph, fmt="edgelist"):
    if fmt == "edgelist":
        write_edgelist(path, g)
    elif fmt == "dimacs":
        write_dimacs(path, g)
    else:
        raise ValidationError(f"unknown graph format {fmt!r}")
