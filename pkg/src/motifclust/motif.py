"""Motif descriptions: a small connected pattern graph with marked anchors.

A motif has s vertices (0..s-1), an edge set, an anchor subset of at least
two vertices, and an orientation flag.  Anchors are the vertices whose
images define pattern adjacency between graph vertices; the remaining
machinery here derives the symmetry counts, spanning-tree splits and
anchor-pair decompositions that the counting engine relies on.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations

_MAX_SYMMETRY_VERTICES = 10  # factorial search bound


@dataclass(frozen=True)
class Motif:
    s: int
    edges: tuple[tuple[int, int], ...]
    anchors: tuple[int, ...]
    directed: bool = False

    def __init__(self, s, edges, anchors, directed=False):
        if not isinstance(s, int) or isinstance(s, bool) or s < 3:
            raise ValueError(f"motif needs at least 3 vertices, got {s!r}")
        canon = []
        seen = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < s and 0 <= v < s):
                raise ValueError(f"motif edge ({u}, {v}) out of range for s={s}")
            if u == v:
                raise ValueError(f"motif self-loop at {u}")
            key = (u, v) if directed else (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate motif edge ({u}, {v})")
            seen.add(key)
            canon.append(key)
        anchors = tuple(sorted(int(a) for a in anchors))
        if len(set(anchors)) != len(anchors):
            raise ValueError("repeated anchor")
        if not all(0 <= a < s for a in anchors):
            raise ValueError("anchor out of range")
        if not 2 <= len(anchors) <= s:
            raise ValueError(f"need between 2 and {s} anchors, got {len(anchors)}")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "edges", tuple(sorted(canon)))
        object.__setattr__(self, "anchors", anchors)
        object.__setattr__(self, "directed", bool(directed))
        if len(self._components()) != 1:
            raise ValueError("motif must be connected")

    @cached_property
    def ordered_edges(self) -> frozenset[tuple[int, int]]:
        """Edge set as ordered pairs; undirected edges appear both ways."""
        out = set()
        for u, v in self.edges:
            out.add((u, v))
            if not self.directed:
                out.add((v, u))
        return frozenset(out)

    @cached_property
    def underlying_adj(self) -> tuple[tuple[int, ...], ...]:
        """Sorted neighbor lists ignoring direction."""
        nbrs = [set() for _ in range(self.s)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(tuple(sorted(x)) for x in nbrs)

    def _components(self):
        seen = [False] * self.s
        comps = []
        for s0 in range(self.s):
            if seen[s0]:
                continue
            seen[s0] = True
            comp = [s0]
            queue = deque([s0])
            while queue:
                x = queue.popleft()
                for y in self.underlying_adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        queue.append(y)
            comps.append(comp)
        return comps

    def with_anchors(self, anchors) -> "Motif":
        return Motif(self.s, self.edges, anchors, self.directed)

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"Motif({kind}, s={self.s}, edges={list(self.edges)}, anchors={list(self.anchors)})"


def anchor_distance(m: Motif) -> int:
    """Largest pairwise hop distance between anchors, ignoring direction."""
    best = 0
    for a in m.anchors:
        dist = {a: 0}
        queue = deque([a])
        while queue:
            x = queue.popleft()
            for y in m.underlying_adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        for b in m.anchors:
            best = max(best, dist[b])
    return best


def _is_isomorphism(m: Motif, perm) -> bool:
    """Does vertex permutation perm map the motif edge set onto itself?"""
    edges = m.ordered_edges
    for u, v in edges:
        if (perm[u], perm[v]) not in edges:
            return False
    return True


def automorphisms(m: Motif) -> list[tuple[int, ...]]:
    """All vertex permutations preserving the (directed) edge set, anchors ignored."""
    if m.s > _MAX_SYMMETRY_VERTICES:
        raise ValueError(f"symmetry search capped at {_MAX_SYMMETRY_VERTICES} vertices")
    return [p for p in permutations(range(m.s)) if _is_isomorphism(m, p)]


@dataclass(frozen=True)
class SymmetryProfile:
    """Symmetry counts of a motif.

    order: number of edge-preserving permutations mapping the anchor set
        onto itself.
    fixed_pair: for each ordered anchor pair (a, b), the number of those
        permutations that fix a and b pointwise.
    anchor_span: largest hop distance between two anchors.
    """
    order: int
    fixed_pair: dict
    anchor_span: int


def symmetry_profile(m: Motif) -> SymmetryProfile:
    anchor_set = set(m.anchors)
    keep = [p for p in automorphisms(m) if {p[a] for a in m.anchors} == anchor_set]
    fixed = {}
    for a, b in permutations(m.anchors, 2):
        fixed[(a, b)] = sum(1 for p in keep if p[a] == a and p[b] == b)
    return SymmetryProfile(order=len(keep), fixed_pair=fixed, anchor_span=anchor_distance(m))


# -- rooted spanning trees ---------------------------------------------


@dataclass(frozen=True)
class RootedTree:
    """A rooted tree over a subset of motif vertices with sorted child lists."""
    root: int
    children: tuple[tuple[int, ...], ...]  # indexed by motif vertex id
    order: tuple[int, ...]                 # pre-order traversal of members

    @property
    def size(self) -> int:
        return len(self.order)


def _root_tree(adj: dict, root: int, s: int) -> RootedTree:
    """Orient the tree with edge dict adj away from root, children ascending."""
    children = [[] for _ in range(s)]
    seen = {root}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in sorted(adj.get(x, ())):
            if y not in seen:
                seen.add(y)
                children[x].append(y)
                queue.append(y)
    order = []
    stack = [root]
    while stack:
        x = stack.pop()
        order.append(x)
        stack.extend(reversed(children[x]))
    return RootedTree(root=root, children=tuple(tuple(c) for c in children), order=tuple(order))


def bfs_spanning_tree(m: Motif, root: int = 0) -> RootedTree:
    """BFS spanning tree over all motif vertices, neighbors visited in id order."""
    tree_adj: dict[int, set] = {v: set() for v in range(m.s)}
    seen = {root}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in m.underlying_adj[x]:
            if y not in seen:
                seen.add(y)
                tree_adj[x].add(y)
                tree_adj[y].add(x)
                queue.append(y)
    return _root_tree(tree_adj, root, m.s)


@dataclass(frozen=True)
class TreeSplit:
    """A spanning tree of a two-anchor motif split into one tree per anchor."""
    motif: Motif
    tree_edges: tuple[tuple[int, int], ...]
    removed_edge: tuple[int, int]
    tree_a: RootedTree
    tree_b: RootedTree


def spanning_tree_split(m: Motif) -> TreeSplit:
    """Split a BFS spanning tree between the two anchors.

    The tree is grown from the first anchor with lowest-id tie-breaking;
    the removed edge is the tree edge on the anchor-to-anchor path adjacent
    to the first anchor.  The two remaining components are rooted at their
    respective anchors.
    """
    if len(m.anchors) != 2:
        raise ValueError("spanning_tree_split needs exactly two anchors")
    a, b = m.anchors
    tree = bfs_spanning_tree(m, root=a)
    parent = {a: None}
    for x in tree.order:
        for c in tree.children[x]:
            parent[c] = x
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    first = path[-2]  # path vertex adjacent to a
    removed = (a, first)

    tree_adj: dict[int, set] = {v: set() for v in range(m.s)}
    edges = []
    for x in tree.order:
        for c in tree.children[x]:
            edges.append((min(x, c), max(x, c)))
            if (x, c) != removed:
                tree_adj[x].add(c)
                tree_adj[c].add(x)
    t_a = _root_tree(tree_adj, a, m.s)
    t_b = _root_tree(tree_adj, b, m.s)
    assert t_a.size + t_b.size == m.s
    assert first in t_b.order
    return TreeSplit(motif=m, tree_edges=tuple(sorted(edges)), removed_edge=removed,
                     tree_a=t_a, tree_b=t_b)


# -- anchor-pair decomposition -----------------------------------------


@dataclass(frozen=True)
class PairClass:
    """One isomorphism class of two-anchor restrictions of a motif."""
    representative: Motif
    weight: int
    members: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class TwoAnchorDecomposition:
    motif: Motif
    classes: tuple[PairClass, ...]


def two_anchor_decomposition(m: Motif) -> TwoAnchorDecomposition:
    """Reduce a many-anchor motif to weighted two-anchor motifs.

    Every unordered anchor pair (u, v) yields a candidate motif with the
    same edges and anchors {u, v}.  Candidates equivalent under an
    edge-preserving permutation are merged; each representative carries
    the number of anchor-set placements of the parent motif inside its own
    pattern graph that cover the pair.
    """
    if len(m.anchors) < 3:
        raise ValueError("decomposition needs at least three anchors")
    autos = automorphisms(m)
    anchor_images = {frozenset(p[a] for a in m.anchors) for p in autos}
    pairs = list(combinations(m.anchors, 2))

    orbit = {}
    for pair in pairs:
        if pair in orbit:
            continue
        image_pairs = {tuple(sorted((p[pair[0]], p[pair[1]]))) for p in autos}
        for q in image_pairs:
            if q in orbit:
                raise AssertionError("anchor pair orbits must not overlap")
        for q in pairs:
            if q in image_pairs:
                orbit[q] = pair

    classes = []
    for rep in sorted(set(orbit.values())):
        members = tuple(q for q in pairs if orbit[q] == rep)
        weights = {q: sum(1 for s in anchor_images if q[0] in s and q[1] in s)
                   for q in members}
        w0 = weights[rep]
        assert all(w == w0 for w in weights.values()), "weight must be class-invariant"
        assert w0 >= 1
        classes.append(PairClass(representative=m.with_anchors(rep), weight=w0,
                                 members=members))
    return TwoAnchorDecomposition(motif=m, classes=tuple(classes))


# -- construction helpers and text format --------------------------------


def named_motif(name: str) -> Motif:
    """Built-in motifs: triangle2, clique<s>a2, path<l>."""
    if name == "triangle2":
        return Motif(3, [(0, 1), (0, 2), (1, 2)], anchors=(0, 1))
    if name.startswith("clique") and name.endswith("a2"):
        try:
            s = int(name[len("clique"):-len("a2")])
        except ValueError:
            raise ValueError(f"unknown motif name {name!r}") from None
        if s < 3:
            raise ValueError("clique size must be at least 3")
        return Motif(s, list(combinations(range(s), 2)), anchors=(0, 1))
    if name.startswith("path"):
        try:
            length = int(name[len("path"):])
        except ValueError:
            raise ValueError(f"unknown motif name {name!r}") from None
        if length < 2:
            raise ValueError("path length must be at least 2 edges")
        return Motif(length + 1, [(i, i + 1) for i in range(length)], anchors=(0, length))
    raise ValueError(f"unknown motif name {name!r}")


class MotifFormatError(ValueError):
    """Malformed motif text.  The message carries the offending line number."""


def parse_motif(text: str) -> Motif:
    """Parse motif text:  'm <s> <u|d>', one 'a <id>...' line, 'e <u> <v>' lines."""
    header = None
    anchors = None
    edges = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if not tokens or tokens[0].startswith("#"):
            continue
        kind = tokens[0]
        if kind == "m":
            if header is not None:
                raise MotifFormatError(f"line {lineno}: duplicate header")
            if len(tokens) != 3 or tokens[2] not in ("u", "d"):
                raise MotifFormatError(f"line {lineno}: header must be 'm <s> <u|d>'")
            try:
                s = int(tokens[1])
            except ValueError:
                raise MotifFormatError(f"line {lineno}: bad vertex count") from None
            header = (s, tokens[2] == "d")
        elif kind == "a":
            if header is None:
                raise MotifFormatError(f"line {lineno}: anchors before header")
            if anchors is not None:
                raise MotifFormatError(f"line {lineno}: duplicate anchor line")
            try:
                anchors = [int(t) for t in tokens[1:]]
            except ValueError:
                raise MotifFormatError(f"line {lineno}: bad anchor id") from None
        elif kind == "e":
            if header is None:
                raise MotifFormatError(f"line {lineno}: edge before header")
            if len(tokens) != 3:
                raise MotifFormatError(f"line {lineno}: edge needs exactly 2 vertex ids")
            try:
                edges.append((int(tokens[1]), int(tokens[2])))
            except ValueError:
                raise MotifFormatError(f"line {lineno}: bad vertex id") from None
        else:
            raise MotifFormatError(f"line {lineno}: unknown directive {kind!r}")
    if header is None:
        raise MotifFormatError("missing header line ('m <s> <u|d>')")
    if anchors is None:
        raise MotifFormatError("missing anchor line ('a <id>...')")
    s, directed = header
    try:
        return Motif(s, edges, anchors, directed)
    except ValueError as exc:
        raise MotifFormatError(str(exc)) from None


def emit_motif(m: Motif) -> str:
    lines = [f"m {m.s} {'d' if m.directed else 'u'}",
             "a " + " ".join(str(a) for a in m.anchors)]
    lines.extend(f"e {u} {v}" for u, v in m.edges)
    return "\n".join(lines) + "\n"
