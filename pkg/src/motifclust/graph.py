"""Weighted graph container and a small line-oriented text format.

Vertices are dense 0-based integers.  Adjacency is stored per vertex as a
sorted tuple of (neighbor, weight) pairs with strictly positive weights.
Undirected graphs keep every edge in both endpoint lists; directed graphs
keep out-edges only but expose a direction-blind "walk" adjacency used by
breadth-first searches and tree walks.  Graphs are immutable once built.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from collections import deque
from typing import Iterable, Sequence

import numpy as np


class GraphFormatError(ValueError):
    """Malformed graph text.  The message carries the offending line number."""


def _check_vertex(u, n):
    if not isinstance(u, (int, np.integer)) or isinstance(u, bool):
        raise ValueError(f"vertex id {u!r} is not an integer")
    if not 0 <= u < n:
        raise ValueError(f"vertex id {u} out of range for n={n}")
    return int(u)


class Graph:
    """Immutable weighted graph on vertices 0..n-1.

    Parameters
    ----------
    n : vertex count
    edges : iterable of (u, v) or (u, v, weight); weight defaults to 1.0
    directed : orientation flag; undirected edges are stored symmetrically
    labels : optional original vertex labels (dense id -> label), kept for
        output only and ignored by equality
    """

    __slots__ = ("n", "directed", "adj", "labels", "_ids", "_walk", "_strength")

    def __init__(self, n: int, edges: Iterable[tuple] = (), directed: bool = False,
                 labels: Sequence[int] | None = None):
        if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 0:
            raise ValueError(f"vertex count must be a non-negative integer, got {n!r}")
        n = int(n)
        seen = {}
        for edge in edges:
            if len(edge) == 2:
                u, v = edge
                w = 1.0
            elif len(edge) == 3:
                u, v, w = edge
            else:
                raise ValueError(f"edge {edge!r} must be (u, v) or (u, v, weight)")
            u = _check_vertex(u, n)
            v = _check_vertex(v, n)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            w = float(w)
            if not math.isfinite(w) or w <= 0.0:
                raise ValueError(f"edge ({u}, {v}) has non-positive weight {w}")
            key = (u, v) if directed else (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen[key] = w

        lists: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        for (u, v), w in seen.items():
            lists[u].append((v, w))
            if not directed:
                lists[v].append((u, w))
        self.adj = tuple(tuple(sorted(l)) for l in lists)
        self.n = n
        self.directed = bool(directed)
        self._ids = tuple(tuple(v for v, _ in row) for row in self.adj)
        if directed:
            walk = [set() for _ in range(n)]
            for (u, v), _ in seen.items():
                walk[u].add(v)
                walk[v].add(u)
            self._walk = tuple(tuple(sorted(s)) for s in walk)
        else:
            self._walk = self._ids
        self._strength = tuple(math.fsum(w for _, w in row) for row in self.adj)
        if labels is not None:
            labels = tuple(int(x) for x in labels)
            if len(labels) != n:
                raise ValueError("labels must have one entry per vertex")
        self.labels = labels

    # -- basic queries -------------------------------------------------

    def neighbors(self, u: int) -> tuple[int, ...]:
        """Sorted neighbor ids (out-neighbors when directed)."""
        return self._ids[u]

    def walk_neighbors(self, u: int) -> tuple[int, ...]:
        """Sorted neighbor ids ignoring edge direction."""
        return self._walk[u]

    def degree(self, u: int) -> int:
        return len(self._ids[u])

    def strength(self, u: int) -> float:
        """Sum of incident edge weights (out-weights when directed)."""
        return self._strength[u]

    def has_edge(self, u: int, v: int) -> bool:
        """Edge presence by binary search; direction-sensitive when directed."""
        row = self._ids[u]
        i = bisect_left(row, v)
        return i < len(row) and row[i] == v

    def weight(self, u: int, v: int) -> float:
        """Edge weight, 0.0 when the edge is absent."""
        row = self._ids[u]
        i = bisect_left(row, v)
        if i < len(row) and row[i] == v:
            return self.adj[u][i][1]
        return 0.0

    def edge_list(self) -> list[tuple[int, int, float]]:
        """Canonical edge list: sorted, one entry per undirected edge."""
        out = []
        for u, row in enumerate(self.adj):
            for v, w in row:
                if self.directed or u < v:
                    out.append((u, v, w))
        return out

    def edge_count(self) -> int:
        return len(self.edge_list())

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n, self.directed, self.adj) == (other.n, other.directed, other.adj)

    def __hash__(self):
        return hash((self.n, self.directed, self.adj))

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"Graph({kind}, n={self.n}, m={self.edge_count()})"


# -- module-level operations ------------------------------------------


def has_edge(g: Graph, u: int, v: int) -> bool:
    return g.has_edge(u, v)


def max_degree(g: Graph) -> int:
    """Largest vertex degree (out-degree when directed); 0 for edgeless graphs."""
    return max((len(row) for row in g.adj), default=0)


def max_walk_degree(g: Graph) -> int:
    """Largest direction-blind degree; equals max_degree for undirected graphs."""
    return max((len(row) for row in g._walk), default=0)


def neighborhood(g: Graph, u: int, depth: int) -> list[int]:
    """Vertices within `depth` hops of u ignoring direction, excluding u, sorted."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if dist[x] == depth:
            continue
        for y in g.walk_neighbors(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    dist.pop(u)
    return sorted(dist)


def connected_components(g: Graph) -> list[list[int]]:
    """Components under the direction-blind adjacency, each sorted."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.walk_neighbors(x):
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        comps.append(sorted(comp))
    return comps


def adjacency_matrix(g: Graph) -> np.ndarray:
    """Dense weighted adjacency matrix (float64)."""
    a = np.zeros((g.n, g.n))
    for u, row in enumerate(g.adj):
        for v, w in row:
            a[u, v] = w
    return a


def perturb_weights(g: Graph, eps: float, seed) -> Graph:
    """Multiplicative noise on every edge weight.

    Each canonical edge weight w is replaced by a uniform draw from
    [(1-eps)*w, (1+eps)*w].  The edge set is unchanged; draws follow the
    canonical edge order so the result is reproducible from the seed
    (anything numpy's default_rng accepts).
    """
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"eps must be in [0, 1], got {eps}")
    rng = np.random.default_rng(seed)
    edges = []
    for u, v, w in g.edge_list():
        w2 = w * rng.uniform(1.0 - eps, 1.0 + eps)
        while w2 <= 0.0:  # measure-zero guard at eps == 1
            w2 = w * rng.uniform(1.0 - eps, 1.0 + eps)
        edges.append((u, v, w2))
    return Graph(g.n, edges, directed=g.directed, labels=g.labels)


# -- text format -------------------------------------------------------
#
#   # comment
#   u <n>            header: undirected graph on n vertices (or "d <n>")
#   e <src> <dst> [<weight>]
#
# Weight defaults to 1.  Undirected edges appear once.  Vertex labels
# may be arbitrary non-negative integers; labels not already dense are
# remapped to 0..n-1 in sorted order (recorded in Graph.labels).


def _fmt_weight(w: float) -> str:
    if w == int(w) and abs(w) < 1e15:
        return str(int(w))
    return repr(w)


def parse_graph(text: str) -> Graph:
    """Parse the text format above, raising GraphFormatError with line numbers."""
    header = None
    raw_edges = []
    seen = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if not tokens or tokens[0].startswith("#"):
            continue
        kind = tokens[0]
        if kind in ("u", "d"):
            if header is not None:
                raise GraphFormatError(f"line {lineno}: duplicate header")
            if len(tokens) != 2:
                raise GraphFormatError(f"line {lineno}: header needs exactly one count")
            try:
                count = int(tokens[1])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: bad vertex count {tokens[1]!r}") from None
            if count < 0:
                raise GraphFormatError(f"line {lineno}: negative vertex count")
            header = (kind == "d", count)
        elif kind == "e":
            if header is None:
                raise GraphFormatError(f"line {lineno}: edge before header")
            if len(tokens) not in (3, 4):
                raise GraphFormatError(f"line {lineno}: edge needs 2 vertex ids and an optional weight")
            try:
                u, v = int(tokens[1]), int(tokens[2])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: bad vertex id") from None
            if u < 0 or v < 0:
                raise GraphFormatError(f"line {lineno}: negative vertex id")
            if u == v:
                raise GraphFormatError(f"line {lineno}: self-loop at {u}")
            if len(tokens) == 4:
                try:
                    w = float(tokens[3])
                except ValueError:
                    raise GraphFormatError(f"line {lineno}: bad weight {tokens[3]!r}") from None
                if not math.isfinite(w) or w <= 0.0:
                    raise GraphFormatError(f"line {lineno}: non-positive weight {tokens[3]}")
            else:
                w = 1.0
            directed = header[0]
            key = (u, v) if directed else (min(u, v), max(u, v))
            if key in seen:
                raise GraphFormatError(f"line {lineno}: duplicate edge {u} {v}")
            seen.add(key)
            raw_edges.append((u, v, w))
        else:
            raise GraphFormatError(f"line {lineno}: unknown directive {kind!r}")
    if header is None:
        raise GraphFormatError("missing header line ('u <n>' or 'd <n>')")
    directed, n = header

    used = sorted({u for u, _, _ in raw_edges} | {v for _, v, _ in raw_edges})
    if used and used[-1] >= n:
        if len(used) != n:
            raise GraphFormatError(
                f"vertex labels exceed the declared count {n} and do not form "
                f"a dense set ({len(used)} distinct labels)")
        remap = {label: i for i, label in enumerate(used)}
        raw_edges = [(remap[u], remap[v], w) for u, v, w in raw_edges]
        labels = tuple(used)
    else:
        labels = None
    return Graph(n, raw_edges, directed=directed, labels=labels)


def emit_graph(g: Graph) -> str:
    """Canonical text for g: dense ids, edges sorted, undirected edges once."""
    lines = [f"{'d' if g.directed else 'u'} {g.n}"]
    for u, v, w in g.edge_list():
        if w == 1.0:
            lines.append(f"e {u} {v}")
        else:
            lines.append(f"e {u} {v} {_fmt_weight(w)}")
    return "\n".join(lines) + "\n"
