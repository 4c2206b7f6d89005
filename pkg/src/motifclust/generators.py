"""Seeded random graph families used by the experiments.

Four families: geometric blobs around circle-placed centers, two noisy
concentric circles, a planted-community graph with power-law degrees and
community sizes, and a pure heavy-tail hidden-variable graph.  All
randomness flows through numpy generators seeded by the caller, so equal
seeds give byte-identical graphs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph


def _radius_edges(points: np.ndarray, radius: float, weight_scale: float):
    """All point pairs within `radius`, weighted by weight_scale / distance."""
    n = len(points)
    edges = []
    for i in range(n):
        d = np.sqrt(((points[i + 1:] - points[i]) ** 2).sum(axis=1))
        close = np.nonzero(d <= radius)[0]
        for off in close:
            j = i + 1 + int(off)
            edges.append((i, j, weight_scale / float(d[off])))
    return edges


def _dedupe_points(points: np.ndarray, rng, jitter: float):
    """Resample any point that exactly coincides with an earlier one."""
    seen = {}
    for i, p in enumerate(points):
        key = (float(p[0]), float(p[1]))
        while key in seen:
            points[i] = p = p + rng.normal(0.0, jitter, size=2)
            key = (float(p[0]), float(p[1]))
        seen[key] = i
    return points


@dataclass(frozen=True)
class ClusterSample:
    graph: Graph
    points: np.ndarray
    centers: np.ndarray
    center_of: tuple[int, ...]


def gen_cluster_graph(n: int, k_centers: int = 5, spread: float = 0.25,
                      edge_radius: float = 0.35, weight_scale: float = 1.0,
                      seed: int = 0) -> ClusterSample:
    """Gaussian blobs around k centers evenly placed on the unit circle.

    Points i are assigned to center i mod k, offset isotropic-normally
    with standard deviation `spread`, and joined to every point within
    `edge_radius` with weight weight_scale / distance.
    """
    if n < 1 or k_centers < 1:
        raise ValueError("need n >= 1 and k_centers >= 1")
    if spread <= 0 or edge_radius <= 0 or weight_scale <= 0:
        raise ValueError("spread, edge_radius and weight_scale must be positive")
    rng = np.random.default_rng(seed)
    angles = 2.0 * np.pi * np.arange(k_centers) / k_centers
    centers = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    center_of = tuple(i % k_centers for i in range(n))
    points = centers[list(center_of)] + rng.normal(0.0, spread, size=(n, 2))
    points = _dedupe_points(points, rng, spread * 1e-6)
    g = Graph(n, _radius_edges(points, edge_radius, weight_scale))
    return ClusterSample(graph=g, points=points, centers=centers, center_of=center_of)


@dataclass(frozen=True)
class CirclesSample:
    graph: Graph
    points: np.ndarray
    circle_of: tuple[int, ...]


def gen_circles(n: int, radii: tuple[float, float] = (1.0, 0.5), noise: float = 0.05,
                threshold: float = 0.6, weight_scale: float = 20.0,
                seed: int = 0) -> CirclesSample:
    """Two noisy concentric circles, standardized, radius-thresholded edges.

    Points are evenly spaced on each circle plus isotropic noise, then each
    coordinate is shifted and scaled to zero mean and unit variance.  Pairs
    at Euclidean distance d <= threshold are joined with weight
    weight_scale / d.
    """
    if n < 4:
        raise ValueError("need at least 4 points")
    if len(radii) != 2 or min(radii) <= 0:
        raise ValueError("radii must be two positive values")
    rng = np.random.default_rng(seed)
    n_outer = n // 2
    sizes = (n_outer, n - n_outer)
    pts = []
    circle_of = []
    for which, (r, m) in enumerate(zip(radii, sizes)):
        ang = 2.0 * np.pi * np.arange(m) / m
        pts.append(np.stack([r * np.cos(ang), r * np.sin(ang)], axis=1))
        circle_of.extend([which] * m)
    points = np.concatenate(pts, axis=0)
    if noise > 0:
        points = points + rng.normal(0.0, noise, size=points.shape)
    points = (points - points.mean(axis=0)) / points.std(axis=0)
    points = _dedupe_points(points, rng, 1e-9)
    g = Graph(n, _radius_edges(points, threshold, weight_scale))
    return CirclesSample(graph=g, points=points, circle_of=tuple(circle_of))


# -- planted communities with heavy-tail degrees -------------------------


def _truncated_powerlaw(rng, exponent: float, lo: float, hi: float, size) -> np.ndarray:
    """Inverse-CDF samples with density proportional to x^-exponent on [lo, hi]."""
    u = rng.random(size)
    if abs(exponent - 1.0) < 1e-12:
        return lo * (hi / lo) ** u
    a = 1.0 - exponent
    return (lo ** a + u * (hi ** a - lo ** a)) ** (1.0 / a)


@dataclass(frozen=True)
class CommunitySample:
    graph: Graph
    communities: tuple[tuple[int, ...], ...]
    target_degrees: np.ndarray


def gen_community_graph(n: int, tau_degree: float = 2.5, tau_community: float = 1.5,
                        mu: float = 0.2, avg_degree: float = 15.0, seed: int = 0,
                        min_community: int = 20, max_community: int | None = None,
                        max_tries: int = 20) -> CommunitySample:
    """Planted communities with power-law degrees and community sizes.

    Degree targets follow a tau_degree power law with mean avg_degree and
    the natural cut-off n^(1/(tau_degree-1)); community sizes follow a
    tau_community power law in [min_community, max_community].  Each
    vertex spends a (1-mu) fraction of its expected degree inside its
    community and mu globally, wired by independent per-pair coin flips
    with product-weight probabilities.  A simplified construction in the
    spirit of standard community benchmarks, not a reference one.
    """
    if tau_degree <= 2.0:
        raise ValueError("tau_degree must exceed 2 for a finite mean")
    if not 0.0 <= mu <= 1.0:
        raise ValueError(f"mu must lie in [0, 1], got {mu}")
    if max_community is None:
        max_community = max(min_community * 2, n // 10)
    if not 2 <= min_community <= max_community <= n:
        raise ValueError("community size bounds are infeasible")
    rng = np.random.default_rng(seed)

    sizes = None
    for _ in range(max_tries):
        draw = []
        while sum(draw) < n:
            draw.append(int(round(_truncated_powerlaw(
                rng, tau_community, min_community, max_community, None))))
        excess = sum(draw) - n
        if excess and draw[-1] - excess >= min_community:
            draw[-1] -= excess
        elif excess:
            draw.pop()
            short = n - sum(draw)
            if not draw or short > len(draw) * (max_community - min_community):
                continue  # cannot absorb the remainder, redraw
            i = 0
            while short:
                give = min(short, max_community - draw[i % len(draw)])
                draw[i % len(draw)] += give
                short -= give
                i += 1
        sizes = draw
        break
    if sizes is None:
        raise RuntimeError("could not partition vertices into communities")

    d_min = avg_degree * (tau_degree - 2.0) / (tau_degree - 1.0)
    d_max = max(d_min + 1.0, float(n) ** (1.0 / (tau_degree - 1.0)))
    degrees = _truncated_powerlaw(rng, tau_degree, d_min, d_max, n)

    # place heavy vertices first, into communities that can host their
    # intra-community degree; otherwise hubs saturate and the tail flattens
    remaining = list(sizes)
    members: list[list[int]] = [[] for _ in sizes]
    for v in np.argsort(-degrees, kind="stable"):
        need = (1.0 - mu) * degrees[v]
        fits = [c for c, size in enumerate(sizes)
                if remaining[c] > 0 and size - 1 >= need]
        if not fits:
            fits = [c for c in range(len(sizes)) if remaining[c] > 0]
        c = fits[rng.integers(len(fits))]
        members[c].append(int(v))
        remaining[c] -= 1
    communities = [tuple(sorted(ms)) for ms in members]

    intra = (1.0 - mu) * degrees
    inter = mu * degrees
    total_inter = float(inter.sum())
    prob = np.zeros((n, n))
    if total_inter > 0:
        prob = np.minimum(np.outer(inter, inter) / total_inter, 1.0)
    for comm in communities:
        block = np.array(comm)
        a = intra[block]
        s = float(a.sum())
        if s <= 0:
            continue
        p_in = np.minimum(np.outer(a, a) / s, 1.0)
        sub = prob[np.ix_(block, block)]
        prob[np.ix_(block, block)] = 1.0 - (1.0 - sub) * (1.0 - p_in)

    iu, ju = np.triu_indices(n, k=1)
    hits = rng.random(len(iu)) < prob[iu, ju]
    edges = [(int(u), int(v)) for u, v in zip(iu[hits], ju[hits])]
    g = Graph(n, edges)
    return CommunitySample(graph=g, communities=tuple(communities),
                           target_degrees=degrees)


@dataclass(frozen=True)
class HiddenVariableSample:
    graph: Graph
    hidden: np.ndarray


def gen_powerlaw_graph(n: int, tau: float, seed: int = 0,
                       h_min: float = 1.0) -> HiddenVariableSample:
    """Hidden-variable graph with degree exponent tau in (2, 3).

    Each vertex draws h from a tau power law on [h_min, n^(1/(tau-1))];
    pair (u, v) is an edge with probability min(1, h_u h_v / (n * mean h)).
    """
    if not 2.0 < tau < 3.0:
        raise ValueError(f"tau must lie in (2, 3), got {tau}")
    if n < 2:
        raise ValueError("need at least 2 vertices")
    rng = np.random.default_rng(seed)
    cutoff = h_min * float(n) ** (1.0 / (tau - 1.0))
    hidden = _truncated_powerlaw(rng, tau, h_min, cutoff, n)
    norm = n * float(hidden.mean())
    edges = []
    block = 256
    for lo in range(0, n, block):
        hi = min(lo + block, n)
        p = np.minimum(np.outer(hidden[lo:hi], hidden) / norm, 1.0)
        u = rng.random(p.shape)
        rows, cols = np.nonzero(u < p)
        for r, c in zip(rows, cols):
            src = lo + int(r)
            if src < c:  # upper triangle only
                edges.append((src, int(c)))
    g = Graph(n, edges)
    return HiddenVariableSample(graph=g, hidden=hidden)


def tail_exponent(values, minimum: float) -> float:
    """Maximum-likelihood power-law tail exponent of the values >= minimum."""
    tail = np.asarray([v for v in values if v >= minimum], dtype=float)
    if len(tail) < 10:
        raise ValueError("too few tail samples for an exponent estimate")
    return 1.0 + len(tail) / float(np.log(tail / minimum).sum())
