"""Perturbation-stability experiments for spectral clustering.

Each trial generates a graph, clusters it, perturbs every edge weight by
a relative epsilon, re-clusters with the same k-means seed, and scores
both partitions by conductance on the original graph.  The recorded
phi_diff is (perturbed partition score) - (original partition score), so
a small value means the clustering survived the perturbation.
"""

from __future__ import annotations

import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .engine import conductance
from .generators import gen_cluster_graph, gen_community_graph
from .graph import Graph, perturb_weights
from .spectral import MODE_CONDUCTANCE, Partition, spectral_cluster

GENERATORS = ("cluster", "community")


@dataclass(frozen=True)
class PhiDiffRecord:
    generator: str
    n: int
    eps: float
    trial: int
    phi_original: float
    phi_perturbed: float

    @property
    def phi_diff(self) -> float:
        return self.phi_perturbed - self.phi_original


@dataclass(frozen=True)
class PhiDiffSummary:
    generator: str
    n: int
    eps: float
    trials: int
    mean: float
    std: float


def trial_seeds(seed: int, n: int, eps: float, trial: int) -> tuple[int, int, int]:
    """Independent (generator, perturbation, k-means) seeds for one trial."""
    ss = np.random.SeedSequence([seed, n, int(round(eps * 10 ** 6)), trial])
    a, b, c = (int(x) for x in ss.generate_state(3))
    return a, b, c


def make_graph(generator: str, n: int, seed: int, params: dict | None = None) -> Graph:
    params = dict(params or {})
    if generator == "cluster":
        return gen_cluster_graph(n, seed=seed, **params).graph
    if generator == "community":
        return gen_community_graph(n, seed=seed, **params).graph
    raise ValueError(f"unknown generator {generator!r}, expected one of {GENERATORS}")


def run_trial(generator: str, n: int, eps: float, trial: int, k: int,
              mode: str, seed: int, params: dict | None = None) -> PhiDiffRecord:
    gen_seed, perturb_seed, kmeans_seed = trial_seeds(seed, n, eps, trial)
    g = make_graph(generator, n, gen_seed, params)
    base = spectral_cluster(g, k, mode=mode, seed=kmeans_seed)
    shaken = perturb_weights(g, eps, seed=perturb_seed)
    moved = spectral_cluster(shaken, k, mode=mode, seed=kmeans_seed)
    # both partitions are scored on the unperturbed graph
    phi0 = conductance(g, base.parts())
    phi1 = conductance(g, moved.parts())
    return PhiDiffRecord(generator=generator, n=n, eps=eps, trial=trial,
                         phi_original=phi0, phi_perturbed=phi1)


def _run_trial_tuple(args) -> PhiDiffRecord:
    return run_trial(*args)


def phi_diff_experiment(generator: str, ns, eps_values, trials: int, k: int = 5,
                        mode: str = MODE_CONDUCTANCE, seed: int = 0,
                        params: dict | None = None, jobs: int = 1,
                        ) -> tuple[list[PhiDiffRecord], list[PhiDiffSummary]]:
    """Run trials for every (n, eps) pair and summarize each pair.

    Trials are independent and seeded by (seed, n, eps, trial), so any
    subset of the grid reproduces the same per-trial numbers.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    work = [(generator, n, eps, t, k, mode, seed, params)
            for n in ns for eps in eps_values for t in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_run_trial_tuple, work, chunksize=1))
    else:
        records = [_run_trial_tuple(w) for w in work]
    records.sort(key=lambda r: (r.n, r.eps, r.trial))
    summaries = summarize(records)
    return records, summaries


def summarize(records) -> list[PhiDiffSummary]:
    groups: dict[tuple, list[PhiDiffRecord]] = {}
    for r in records:
        groups.setdefault((r.generator, r.n, r.eps), []).append(r)
    out = []
    for (gen, n, eps), rs in sorted(groups.items()):
        diffs = np.array([r.phi_diff for r in rs])
        out.append(PhiDiffSummary(generator=gen, n=n, eps=eps, trials=len(rs),
                                  mean=float(diffs.mean()), std=float(diffs.std())))
    return out


def records_csv(records, k: int, mode: str, seed: int) -> str:
    buf = io.StringIO()
    buf.write(f"# k={k} mode={mode} seed={seed}\n")
    buf.write("generator,n,eps,trial,phi_original,phi_perturbed,phi_diff\n")
    for r in records:
        buf.write(f"{r.generator},{r.n},{r.eps!r},{r.trial},"
                  f"{r.phi_original!r},{r.phi_perturbed!r},{r.phi_diff!r}\n")
    return buf.getvalue()


def summary_csv(summaries, k: int, mode: str, seed: int) -> str:
    buf = io.StringIO()
    buf.write(f"# k={k} mode={mode} seed={seed}\n")
    buf.write("generator,n,eps,trials,mean_phi_diff,std_phi_diff\n")
    for s in summaries:
        buf.write(f"{s.generator},{s.n},{s.eps!r},{s.trials},{s.mean!r},{s.std!r}\n")
    return buf.getvalue()


def spearman_rank_correlation(xs, ys) -> float:
    """Spearman correlation with average ranks for ties."""
    def ranks(vals):
        order = np.argsort(vals, kind="stable")
        r = np.empty(len(vals))
        sv = np.asarray(vals)[order]
        i = 0
        while i < len(vals):
            j = i
            while j + 1 < len(vals) and sv[j + 1] == sv[i]:
                j += 1
            r[order[i:j + 1]] = 0.5 * (i + j) + 1.0
            i = j + 1
        return r
    rx, ry = ranks(xs), ranks(ys)
    rx -= rx.mean()
    ry -= ry.mean()
    denom = np.sqrt((rx ** 2).sum() * (ry ** 2).sum())
    if denom == 0:
        raise ValueError("constant sequence has no rank correlation")
    return float((rx * ry).sum() / denom)
