"""Laplacian spectral clustering and robustness certificates.

Everything here works on dense symmetric matrices; at the intended scale
(a few thousand vertices) a full or partial dense eigendecomposition is
cheap and avoids iterative-solver edge cases.  Clustering removes
pattern-isolated vertices first and returns them as singleton clusters
after the k-means clusters.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .graph import Graph, adjacency_matrix, connected_components, perturb_weights

MODE_RATIO_CUT = "ratio-cut"
MODE_CONDUCTANCE = "conductance"

_SYMMETRY_RTOL = 1e-12
_RESIDUAL_RTOL = 1e-8
_SANDWICH_RTOL = 1e-9


def _as_graph(graph_like) -> Graph:
    g = getattr(graph_like, "graph", graph_like)
    if not isinstance(g, Graph):
        raise TypeError(f"expected a Graph or MotifGraph, got {type(graph_like).__name__}")
    if g.directed:
        raise ValueError("spectral operations need an undirected graph")
    return g


@dataclass(frozen=True)
class LaplacianPair:
    """Combinatorial Laplacian and, when all strengths are positive, the
    symmetric normalized Laplacian."""
    laplacian: np.ndarray
    normalized: np.ndarray | None
    strengths: np.ndarray


def build_laplacians(graph_like) -> LaplacianPair:
    g = _as_graph(graph_like)
    a = adjacency_matrix(g)
    s = a.sum(axis=1)
    lap = np.diag(s) - a
    normalized = None
    if g.n and np.all(s > 0):
        inv_sqrt = 1.0 / np.sqrt(s)
        normalized = np.eye(g.n) - inv_sqrt[:, None] * a * inv_sqrt[None, :]
    return LaplacianPair(laplacian=lap, normalized=normalized, strengths=s)


def _check_symmetric(mat: np.ndarray) -> np.ndarray:
    mat = np.asarray(mat, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"need a square matrix, got shape {mat.shape}")
    scale = max(1.0, float(np.max(np.abs(mat))) if mat.size else 0.0)
    asym = float(np.max(np.abs(mat - mat.T))) if mat.size else 0.0
    if asym > _SYMMETRY_RTOL * scale:
        raise ValueError(f"matrix is asymmetric beyond tolerance ({asym:.3e})")
    return (mat + mat.T) / 2.0


def smallest_k_eigenpairs(mat: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """The k algebraically smallest eigenpairs of a symmetric matrix.

    Eigenvalues ascend; each eigenvector's sign is fixed so its
    largest-magnitude entry is positive.  Residuals are checked against
    1e-8 times the matrix scale.
    """
    sym = _check_symmetric(mat)
    n = sym.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in [1, {n}], got {k}")
    vals, vecs = scipy.linalg.eigh(sym, subset_by_index=[0, k - 1])
    for j in range(k):
        lead = np.argmax(np.abs(vecs[:, j]))
        if vecs[lead, j] < 0:
            vecs[:, j] = -vecs[:, j]
    bound = max(1.0, float(np.linalg.norm(sym, np.inf)))
    resid = np.linalg.norm(sym @ vecs - vecs * vals[None, :], axis=0)
    if np.any(resid > _RESIDUAL_RTOL * bound):
        raise RuntimeError(f"eigenpair residual {resid.max():.3e} exceeds tolerance")
    return vals, vecs


# -- k-means -------------------------------------------------------------


@dataclass(frozen=True)
class KMeansResult:
    labels: tuple[int, ...]
    centers: np.ndarray
    inertia: float


def _plusplus_init(pts: np.ndarray, k: int, rng) -> np.ndarray:
    """Probabilistic farthest-point seeding: squared-distance weighting."""
    n = pts.shape[0]
    chosen = [int(rng.integers(n))]
    d2 = ((pts - pts[chosen[0]]) ** 2).sum(axis=1)
    while len(chosen) < k:
        total = float(d2.sum())
        if total > 0.0:
            idx = int(rng.choice(n, p=d2 / total))
            if idx in chosen:  # zero-probability guard for fp dust
                idx = int(np.argmax(d2))
        else:
            remaining = [i for i in range(n) if i not in chosen]
            idx = int(remaining[rng.integers(len(remaining))])
        chosen.append(idx)
        d2 = np.minimum(d2, ((pts - pts[idx]) ** 2).sum(axis=1))
    return pts[chosen].copy()


def lloyd_kmeans(points, k: int, seed: int = 0, restarts: int = 10,
                 max_iter: int = 100, tol: float = 1e-9) -> KMeansResult:
    """Lloyd iterations with squared-distance-weighted seeding and restarts.

    Deterministic for a given seed: restarts share one generator, ties in
    assignment go to the lowest center index, and an emptied cluster is
    reseeded with the point farthest from its current center.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2:
        raise ValueError("points must be a 2-d array")
    n = pts.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in [1, {n}], got {k}")
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(restarts):
        centers = _plusplus_init(pts, k, rng)
        labels = np.zeros(n, dtype=int)
        for _ in range(max_iter):
            d2 = ((pts[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
            labels = d2.argmin(axis=1)
            new_centers = centers.copy()
            own = d2[np.arange(n), labels].copy()
            for j in range(k):
                mask = labels == j
                if mask.any():
                    new_centers[j] = pts[mask].mean(axis=0)
                else:
                    far = int(np.argmax(own))
                    new_centers[j] = pts[far]
                    own[far] = -1.0  # not reused for another empty cluster
            move = float(np.sqrt(((new_centers - centers) ** 2).sum(axis=1)).max())
            centers = new_centers
            if move < tol:
                break
        d2 = ((pts[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        labels = d2.argmin(axis=1)
        inertia = float(d2[np.arange(n), labels].sum())
        if best is None or inertia < best.inertia:
            best = KMeansResult(labels=tuple(int(x) for x in labels),
                                centers=centers.copy(), inertia=inertia)
    return best


# -- clustering ----------------------------------------------------------


@dataclass(frozen=True)
class Partition:
    """Cluster labels per vertex: ids < k are k-means clusters, ids k, k+1,
    ... are singleton clusters of pattern-isolated vertices in id order."""
    labels: tuple[int, ...]
    k: int
    isolated: tuple[int, ...]

    @property
    def cluster_count(self) -> int:
        return self.k + len(self.isolated)

    def parts(self) -> list[set]:
        out = [set() for _ in range(self.cluster_count)]
        for v, c in enumerate(self.labels):
            out[c].add(v)
        return out

    def to_tsv(self, vertex_labels=None) -> str:
        lines = []
        for v, c in enumerate(self.labels):
            name = v if vertex_labels is None else vertex_labels[v]
            lines.append(f"{name}\t{c}")
        return "\n".join(lines) + "\n"


def spectral_cluster(graph_like, k: int, mode: str = MODE_CONDUCTANCE,
                     seed: int = 0) -> Partition:
    """Embed with the k smallest Laplacian eigenvectors, cluster by k-means.

    ratio-cut mode uses the combinatorial Laplacian directly; conductance
    mode uses the normalized Laplacian and renormalizes embedding rows to
    unit length.  Vertices without any incident weight are split off as
    singleton clusters before the decomposition.
    """
    g = _as_graph(graph_like)
    if not isinstance(k, (int, np.integer)) or k < 2:
        raise ValueError(f"k must be an integer >= 2, got {k!r}")
    if mode not in (MODE_RATIO_CUT, MODE_CONDUCTANCE):
        raise ValueError(f"unknown mode {mode!r}")
    strengths = np.array([g.strength(u) for u in range(g.n)])
    isolated = [u for u in range(g.n) if strengths[u] == 0.0]
    active = [u for u in range(g.n) if strengths[u] > 0.0]
    if len(active) < k:
        raise ValueError(f"only {len(active)} non-isolated vertices for k={k}")

    a = adjacency_matrix(g)[np.ix_(active, active)]
    s = a.sum(axis=1)
    if mode == MODE_RATIO_CUT:
        lap = np.diag(s) - a
        _, feats = smallest_k_eigenpairs(lap, k)
    else:
        inv_sqrt = 1.0 / np.sqrt(s)
        lap = np.eye(len(active)) - inv_sqrt[:, None] * a * inv_sqrt[None, :]
        _, feats = smallest_k_eigenpairs(lap, k)
        norms = np.linalg.norm(feats, axis=1)
        if not np.all(norms > 0.0):
            raise AssertionError("zero embedding row for a non-isolated vertex")
        feats = feats / norms[:, None]

    km = lloyd_kmeans(feats, k, seed=seed)
    labels = [0] * g.n
    for row, u in enumerate(active):
        labels[u] = km.labels[row]
    for i, u in enumerate(sorted(isolated)):
        labels[u] = k + i
    return Partition(labels=tuple(labels), k=k, isolated=tuple(sorted(isolated)))


# -- robustness certificates ----------------------------------------------


@dataclass(frozen=True)
class SandwichResult:
    ok: bool
    lower_margin: float   # min eig of (perturbed - (1-eps) reference)
    upper_margin: float   # min eig of ((1+eps) reference - perturbed)
    tolerance: float
    witness: np.ndarray | None


def sandwich_check(reference: np.ndarray, perturbed: np.ndarray,
                   eps: float) -> SandwichResult:
    """Verify (1-eps) L <= L~ <= (1+eps) L in the semidefinite order.

    Margins are smallest eigenvalues of the two difference matrices; both
    must clear -1e-9 times the reference spectral norm.  On failure the
    witness is the offending eigenvector.
    """
    ref = _check_symmetric(reference)
    pert = _check_symmetric(perturbed)
    if ref.shape != pert.shape:
        raise ValueError("matrix shapes differ")
    if eps < 0:
        raise ValueError("eps must be non-negative")
    norm = float(np.max(np.abs(scipy.linalg.eigvalsh(ref)))) if ref.size else 0.0
    tol = _SANDWICH_RTOL * norm
    lo_vals, lo_vecs = scipy.linalg.eigh(pert - (1.0 - eps) * ref)
    hi_vals, hi_vecs = scipy.linalg.eigh((1.0 + eps) * ref - pert)
    lower, upper = float(lo_vals[0]), float(hi_vals[0])
    ok = lower >= -tol and upper >= -tol
    witness = None
    if not ok:
        witness = lo_vecs[:, 0] if lower <= upper else hi_vecs[:, 0]
    return SandwichResult(ok=ok, lower_margin=lower, upper_margin=upper,
                          tolerance=tol, witness=witness)


@dataclass(frozen=True)
class NogoResult:
    degenerate: bool
    certificate: float | None
    vector: np.ndarray | None
    perturbed: Graph | None
    delta: float
    tries: int


def _normalized_laplacian(a: np.ndarray) -> np.ndarray:
    d = a.sum(axis=1)
    inv_sqrt = 1.0 / np.sqrt(d)
    return np.eye(a.shape[0]) - inv_sqrt[:, None] * a * inv_sqrt[None, :]


def nogo_certificate(adjacency: np.ndarray, perturbed: np.ndarray,
                     delta: float) -> tuple[bool, float | None, np.ndarray | None]:
    """Evaluate the normalized-Laplacian lower-bound violation.

    With degree vectors D and D~, the vector sqrt(D~) annihilates the
    perturbed normalized Laplacian, so its quadratic form against
    L~_norm - (1-delta) L_norm is negative whenever D~ is not a constant
    multiple of D.  Returns (degenerate, value, vector); degenerate means
    the multiples coincide and no such witness exists.
    """
    a = _check_symmetric(adjacency)
    at = _check_symmetric(perturbed)
    if a.shape != at.shape:
        raise ValueError("matrix shapes differ")
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must be in (0, 1), got {delta}")
    d = a.sum(axis=1)
    dt = at.sum(axis=1)
    if np.any(d <= 0) or np.any(dt <= 0):
        raise ValueError("all weighted degrees must be positive")
    ratio = dt / d
    if np.max(ratio) - np.min(ratio) <= 1e-9 * np.max(ratio):
        return True, None, None
    vec = np.sqrt(dt)
    gap = _normalized_laplacian(at) - (1.0 - delta) * _normalized_laplacian(a)
    return False, float(vec @ gap @ vec), vec


def normalized_nogo_witness(g, eps: float, seed: int, delta: float = 0.5,
                            max_tries: int = 16) -> NogoResult:
    """Search random multiplicative perturbations for a no-go witness.

    Requires a connected undirected graph.  Draws perturbations until the
    perturbed degrees are not a uniform rescaling of the originals (some
    tiny graphs never leave that case and come back flagged degenerate).
    """
    graph = _as_graph(g)
    if graph.n < 2:
        raise ValueError("need at least two vertices")
    if len(connected_components(graph)) != 1:
        raise ValueError("graph must be connected")
    if not 0.0 < eps <= 1.0:
        raise ValueError(f"eps must be in (0, 1], got {eps}")
    a = adjacency_matrix(graph)
    last = None
    for i in range(max_tries):
        pg = perturb_weights(graph, eps, seed=(seed, i))
        last = pg
        degenerate, value, vec = nogo_certificate(a, adjacency_matrix(pg), delta)
        if not degenerate:
            return NogoResult(degenerate=False, certificate=value, vector=vec,
                              perturbed=pg, delta=delta, tries=i + 1)
    return NogoResult(degenerate=True, certificate=None, vector=None,
                      perturbed=last, delta=delta, tries=max_tries)
