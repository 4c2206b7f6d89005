"""Motif instance enumeration and pattern-adjacency construction.

An assignment maps every motif vertex to a distinct graph vertex so that
motif edges land on graph edges and motif non-edges on graph non-edges
(direction-sensitive when both sides are directed).  An instance is the
set of assignments sharing a vertex image and an anchor image; instances
are represented canonically by those two sorted tuples.

The pattern adjacency ("motif graph") counts, for each vertex pair, the
instances whose anchor image contains both vertices.  It is always
undirected with positive weights.  Exact construction enumerates
instances via spanning-tree walks; approximate construction BFS-limits
candidate pairs and runs each true pair count through a noisy counter.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from math import comb, factorial
from typing import Iterable

from .graph import Graph, max_walk_degree, neighborhood
from .motif import (Motif, RootedTree, TreeSplit, bfs_spanning_tree,
                    spanning_tree_split, symmetry_profile, two_anchor_decomposition)


@dataclass(frozen=True, order=True)
class MotifInstance:
    vertices: tuple[int, ...]
    anchors: tuple[int, ...]


@dataclass(frozen=True)
class Provenance:
    kind: str  # "exact" or "approx"
    eps: float | None = None
    delta: float | None = None
    seed: int | None = None


EXACT = Provenance("exact")


@dataclass(frozen=True)
class MotifGraph:
    """Pattern adjacency over the host graph's vertices."""
    graph: Graph
    motif: Motif | None
    provenance: Provenance

    @property
    def n(self) -> int:
        return self.graph.n

    def motif_degree(self, u: int) -> int:
        """Number of pattern neighbors of u."""
        return self.graph.degree(u)

    def strength(self, u: int) -> float:
        """Total pattern weight incident to u."""
        return self.graph.strength(u)


def _require_same_orientation(m: Motif, g: Graph):
    if m.directed != g.directed:
        raise ValueError("motif and graph must both be directed or both undirected")


# -- tree walks and matching -------------------------------------------


def tree_walk(tree: RootedTree, g: Graph, start: int, seq) -> list[tuple[int, int]]:
    """Map a rooted tree into g starting at `start`, driven by neighbor indices.

    Each non-root tree vertex consumes the sequence entry at its pre-order
    rank (minus one) and is placed on that neighbor of its parent's image,
    ignoring edge direction.  An index at or beyond the parent's degree
    prunes the whole subtree, so the returned (tree vertex, graph vertex)
    list may be shorter than the tree.
    """
    if len(seq) != tree.size - 1:
        raise ValueError(f"need {tree.size - 1} indices, got {len(seq)}")
    if any(i < 0 for i in seq):
        raise ValueError("neighbor indices must be non-negative")
    slot = {v: r - 1 for r, v in enumerate(tree.order)}
    out = []

    def descend(t, gv):
        out.append((t, gv))
        for c in tree.children[t]:
            i = seq[slot[c]]
            nbrs = g.walk_neighbors(gv)
            if i < len(nbrs):
                descend(c, nbrs[i])

    if not 0 <= start < g.n:
        raise ValueError(f"start vertex {start} out of range")
    descend(tree.root, start)
    return out


def _pair_checks(m: Motif):
    """Precomputed (p, q, expected) triples covering every distinct vertex pair."""
    edges = m.ordered_edges
    if m.directed:
        pairs = [(p, q) for p in range(m.s) for q in range(m.s) if p != q]
    else:
        pairs = list(combinations(range(m.s), 2))
    return [(p, q, (p, q) in edges) for p, q in pairs]


def _match_tuple(g: Graph, checks, assign: tuple[int, ...]) -> bool:
    if len(set(assign)) != len(assign):
        return False
    for p, q, expected in checks:
        if g.has_edge(assign[p], assign[q]) != expected:
            return False
    return True


def match(m: Motif, g: Graph, assignment) -> bool:
    """Is `assignment` (motif vertex -> graph vertex) a structural occurrence?

    Accepts a mapping or an iterable of (motif vertex, graph vertex) pairs.
    Incomplete or non-injective assignments simply fail.
    """
    _require_same_orientation(m, g)
    pairs = dict(assignment.items() if hasattr(assignment, "items") else assignment)
    if len(pairs) != m.s or set(pairs) != set(range(m.s)):
        return False
    values = [pairs[v] for v in range(m.s)]
    if not all(0 <= x < g.n for x in values):
        return False
    return _match_tuple(g, _pair_checks(m), tuple(values))


def _tree_parents(tree: RootedTree) -> dict:
    parent = {}
    for x in tree.order:
        for c in tree.children[x]:
            parent[c] = x
    return parent


def _iter_assignments(m: Motif, g: Graph):
    """All complete spanning-tree walk images as assignment tuples.

    Equivalent to driving tree_walk with every start vertex and index
    sequence, skipping walks that would truncate.  No injectivity or edge
    filtering happens here; match() is the arbiter.
    """
    tree = bfs_spanning_tree(m, root=0)
    order = tree.order
    parent = _tree_parents(tree)
    assign = [0] * m.s

    def descend(k):
        if k == len(order):
            yield tuple(assign)
            return
        v = order[k]
        for u in g.walk_neighbors(assign[parent[v]]):
            assign[v] = u
            yield from descend(k + 1)

    for start in range(g.n):
        assign[order[0]] = start
        yield from descend(1)


def assignment_census(m: Motif, g: Graph) -> dict[MotifInstance, int]:
    """Matched-assignment count per instance (each equals the symmetry order)."""
    _require_same_orientation(m, g)
    checks = _pair_checks(m)
    census: dict[MotifInstance, int] = defaultdict(int)
    anchors = m.anchors
    for assign in _iter_assignments(m, g):
        if _match_tuple(g, checks, assign):
            inst = MotifInstance(tuple(sorted(assign)),
                                 tuple(sorted(assign[a] for a in anchors)))
            census[inst] += 1
    return dict(census)


def enumerate_instances(m: Motif, g: Graph) -> list[MotifInstance]:
    """All motif instances, sorted canonically."""
    return sorted(assignment_census(m, g))


def brute_force_instances(m: Motif, g: Graph, max_ops: int = 200_000_000) -> list[MotifInstance]:
    """Definitional oracle: test every injective placement on every vertex subset.

    Deliberately independent of the walk machinery; uses a flat edge set
    instead of adjacency binary search.  Refuses inputs whose cost bound
    n-choose-s * s! * s^2 exceeds max_ops.
    """
    _require_same_orientation(m, g)
    from itertools import permutations
    n, s = g.n, m.s
    if n >= s and comb(n, s) * factorial(s) * s * s > max_ops:
        raise ValueError("graph too large for the brute-force oracle")
    eset = {(u, v) for u, row in enumerate(g.adj) for v, _ in row}
    motif_edges = m.ordered_edges
    ordered = [(p, q) for p in range(s) for q in range(s) if p != q]
    expected = [(p, q, (p, q) in motif_edges) for p, q in ordered]
    found = set()
    for combo in combinations(range(n), s):
        for perm in permutations(combo):
            if all(((perm[p], perm[q]) in eset) == want for p, q, want in expected):
                found.add(MotifInstance(combo, tuple(sorted(perm[a] for a in m.anchors))))
    return sorted(found)


# -- split-tree pair counting ------------------------------------------


def _iter_split_assignments(m: Motif, g: Graph, split: TreeSplit, u: int, v: int):
    """Assignments reachable by walking tree_a from u and tree_b from v."""
    order = split.tree_a.order + split.tree_b.order
    parent = _tree_parents(split.tree_a) | _tree_parents(split.tree_b)
    assign = [0] * m.s
    roots = {split.tree_a.root: u, split.tree_b.root: v}

    def descend(k):
        if k == len(order):
            yield tuple(assign)
            return
        x = order[k]
        if x in roots:
            assign[x] = roots[x]
            yield from descend(k + 1)
        else:
            for y in g.walk_neighbors(assign[parent[x]]):
                assign[x] = y
                yield from descend(k + 1)

    yield from descend(0)


def ordered_split_count(m: Motif, g: Graph, split: TreeSplit, u: int, v: int) -> int:
    """Matched assignments that pin the first anchor to u and the second to v."""
    checks = _pair_checks(m)
    return sum(1 for a in _iter_split_assignments(m, g, split, u, v)
               if _match_tuple(g, checks, a))


def exact_pair_count(m: Motif, g: Graph, u: int, v: int,
                     split: TreeSplit | None = None, order: int | None = None) -> int:
    """Number of instances whose anchor image is exactly {u, v}.

    Counts pinned assignments in both anchor orders and divides by the
    motif symmetry order; the division is exact.  Requires a two-anchor
    motif.  `split` and `order` may be precomputed and passed in.
    """
    _require_same_orientation(m, g)
    if len(m.anchors) != 2:
        raise ValueError("pair counting needs a two-anchor motif")
    if u == v:
        raise ValueError("pair counting needs two distinct vertices")
    if split is None:
        split = spanning_tree_split(m)
    if order is None:
        order = symmetry_profile(m).order
    total = (ordered_split_count(m, g, split, u, v)
             + ordered_split_count(m, g, split, v, u))
    assert total % order == 0, "pinned assignment count must be a symmetry multiple"
    return total // order


# -- motif graph construction ------------------------------------------


def build_motif_graph_exact(m: Motif, g: Graph) -> MotifGraph:
    """Exact pattern adjacency: weight = instances anchored on both endpoints."""
    _require_same_orientation(m, g)
    sym_order = symmetry_profile(m).order
    weights: dict[tuple[int, int], int] = defaultdict(int)
    for inst, count in assignment_census(m, g).items():
        if count != sym_order:
            raise AssertionError(
                f"instance {inst} found by {count} assignments, expected {sym_order}")
        for x, y in combinations(inst.anchors, 2):
            weights[(x, y)] += 1
    graph = Graph(g.n, [(x, y, float(w)) for (x, y), w in weights.items()],
                  directed=False, labels=g.labels)
    return MotifGraph(graph=graph, motif=m, provenance=EXACT)


def build_motif_graph_approx(m: Motif, g: Graph, eps: float, delta: float,
                             counter) -> MotifGraph:
    """Noise-modelled pattern adjacency.

    Candidate pairs come from BFS neighborhoods of radius equal to the
    motif's anchor span.  Each unordered pair's true count is fed once
    through `counter` (anything with the NoisyCounter count() signature)
    at per-pair failure budget delta / n^2.  A zero count never yields an
    edge, so with draws inside the relative-error band the edge set
    matches the exact builder's.
    """
    _require_same_orientation(m, g)
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must be in (0, 1), got {eps}")
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must be in (0, 1), got {delta}")
    sym = symmetry_profile(m)
    if len(m.anchors) == 2:
        parts = [(1, m, spanning_tree_split(m), sym.order)]
    else:
        parts = [(pc.weight, pc.representative, spanning_tree_split(pc.representative),
                  symmetry_profile(pc.representative).order)
                 for pc in two_anchor_decomposition(m).classes]
    space = max(1, max_walk_degree(g)) ** max(m.s - 2, 0)
    delta_pair = delta / max(1, g.n * g.n)
    edges = []
    for u in range(g.n):
        for v in neighborhood(g, u, sym.anchor_span):
            if v <= u:
                continue
            t = sum(w * exact_pair_count(k, g, u, v, split=s, order=o)
                    for w, k, s, o in parts)
            estimate = counter.count(t, eps, delta_pair, key=(u, v), space=space)
            if estimate > 0.0:
                edges.append((u, v, estimate))
    graph = Graph(g.n, edges, directed=False, labels=g.labels)
    prov = Provenance("approx", eps=eps, delta=delta, seed=getattr(counter, "seed", None))
    return MotifGraph(graph=graph, motif=m, provenance=prov)


def build_motif_graph_multi(pairs: Iterable[tuple[float, Motif]], g: Graph) -> MotifGraph:
    """Positive-weighted sum of exact pattern adjacencies."""
    pairs = list(pairs)
    if not pairs:
        raise ValueError("need at least one (coefficient, motif) pair")
    weights: dict[tuple[int, int], float] = defaultdict(float)
    for alpha, m in pairs:
        alpha = float(alpha)
        if alpha <= 0.0:
            raise ValueError(f"coefficient must be positive, got {alpha}")
        part = build_motif_graph_exact(m, g)
        for x, y, w in part.graph.edge_list():
            weights[(x, y)] += alpha * w
    graph = Graph(g.n, [(x, y, w) for (x, y), w in weights.items()],
                  directed=False, labels=g.labels)
    return MotifGraph(graph=graph, motif=None, provenance=EXACT)


def emit_motif_graph(mg: MotifGraph) -> str:
    """Graph text plus a provenance trailer comment."""
    from .graph import emit_graph
    text = emit_graph(mg.graph)
    p = mg.provenance
    if p.kind == "exact":
        return text + "# provenance exact\n"
    return text + f"# provenance approx eps={p.eps!r} delta={p.delta!r} seed={p.seed}\n"


# -- cut functionals ----------------------------------------------------


def motif_cut(instances: Iterable[MotifInstance], w) -> int:
    """Instances whose anchor image meets both sides of the (w, complement) split."""
    w = frozenset(w)
    total = 0
    for inst in instances:
        inside = sum(1 for a in inst.anchors if a in w)
        if 0 < inside < len(inst.anchors):
            total += 1
    return total


def motif_vol(instances: Iterable[MotifInstance], w) -> int:
    """Total anchor mass inside w, summed over instances."""
    w = frozenset(w)
    return sum(sum(1 for a in inst.anchors if a in w) for inst in instances)


def _phi(cut, vol) -> float:
    if cut == 0:
        return 0.0
    if vol == 0:
        raise AssertionError("positive cut with zero volume cannot happen")
    return cut / vol


def motif_conductance(instances, parts) -> float:
    """Sum over parts of motif cut over motif volume (0 where the cut is 0)."""
    instances = list(instances)
    return sum(_phi(motif_cut(instances, p), motif_vol(instances, p)) for p in parts)


def motif_ratio_cut(instances, parts) -> float:
    instances = list(instances)
    total = 0.0
    for p in parts:
        cut = motif_cut(instances, p)
        if cut:
            total += cut / len(p)
    return total


def _as_graph(graph_like) -> Graph:
    g = graph_like.graph if isinstance(graph_like, MotifGraph) else graph_like
    if g.directed:
        raise ValueError("cut functionals need an undirected graph")
    return g


def graph_cut(graph_like, w) -> float:
    """Total weight of edges leaving w (each crossing edge once)."""
    g = _as_graph(graph_like)
    w = frozenset(w)
    total = 0.0
    for u in w:
        for v, wt in g.adj[u]:
            if v not in w:
                total += wt
    return total


def graph_vol(graph_like, w) -> float:
    g = _as_graph(graph_like)
    return sum(g.strength(u) for u in w)


def conductance_set(graph_like, w) -> float:
    return _phi(graph_cut(graph_like, w), graph_vol(graph_like, w))


def ratio_cut_set(graph_like, w) -> float:
    cut = graph_cut(graph_like, w)
    return cut / len(w) if cut else 0.0


def conductance(graph_like, parts) -> float:
    """Partition conductance: sum of per-part cut/volume ratios."""
    g = _as_graph(graph_like)
    return sum(conductance_set(g, p) for p in parts)


def ratio_cut(graph_like, parts) -> float:
    """Partition ratio cut: sum of per-part cut/size ratios."""
    g = _as_graph(graph_like)
    return sum(ratio_cut_set(g, p) for p in parts)
