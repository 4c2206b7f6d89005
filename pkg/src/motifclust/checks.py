"""Self-contained verification suites runnable from the command line.

Each check returns a CheckResult; `run_checks` runs a named subset.  These
are fast spot checks of the library's core identities, meant for a quick
health verdict after installation.  The test suite runs the same
identities at larger sizes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .counting import ExactCounter, NoisyCounter
from .costs import algorithm_costs, crossover_tau0, crossover_tau1, powerlaw_analysis
from .engine import (brute_force_instances, build_motif_graph_approx,
                     build_motif_graph_exact, enumerate_instances, graph_cut,
                     graph_vol, motif_cut, motif_vol)
from .graph import Graph, perturb_weights
from .motif import Motif, named_motif, two_anchor_decomposition
from .spectral import build_laplacians, normalized_nogo_witness, sandwich_check


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def _random_graph(rng, n: int, p: float, directed: bool) -> Graph:
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if directed:
                if rng.random() < p:
                    edges.append((u, v))
                if rng.random() < p:
                    edges.append((v, u))
            elif rng.random() < p:
                edges.append((u, v))
    return Graph(n, edges, directed=directed)


def _check_enumeration() -> CheckResult:
    rng = np.random.default_rng(7)
    motifs = [named_motif("triangle2"), named_motif("path2"),
              Motif(3, [(0, 1), (0, 2), (1, 2)], anchors=(0, 1, 2))]
    dmotifs = [Motif(3, [(0, 1), (1, 2), (2, 0)], anchors=(0, 1), directed=True),
               Motif(3, [(0, 1), (1, 2)], anchors=(0, 2), directed=True)]
    tried = 0
    for _ in range(6):
        n = int(rng.integers(5, 10))
        g = _random_graph(rng, n, 0.5, directed=False)
        dg = _random_graph(rng, n, 0.5, directed=True)
        for m in motifs:
            if set(enumerate_instances(m, g)) != set(brute_force_instances(m, g)):
                return CheckResult("enumeration", False,
                                   f"mismatch on n={n} motif={m}")
            tried += 1
        for m in dmotifs:
            if set(enumerate_instances(m, dg)) != set(brute_force_instances(m, dg)):
                return CheckResult("enumeration", False,
                                   f"mismatch on directed n={n} motif={m}")
            tried += 1
    return CheckResult("enumeration", True, f"{tried} motif/graph pairs agree")


def _check_cut_vol_identities() -> CheckResult:
    rng = np.random.default_rng(11)
    for m, factor in ((named_motif("triangle2"), 1.0),
                      (Motif(3, [(0, 1), (0, 2), (1, 2)], anchors=(0, 1, 2)), 0.5)):
        for _ in range(4):
            g = _random_graph(rng, 9, 0.5, directed=False)
            inst = enumerate_instances(m, g)
            mg = build_motif_graph_exact(m, g)
            for _ in range(25):
                w = [u for u in range(g.n) if rng.random() < 0.5]
                if not w or len(w) == g.n:
                    continue
                lhs = motif_vol(inst, w) * (len(m.anchors) - 1)
                if lhs != graph_vol(mg, w):
                    return CheckResult("cut-vol", False, f"vol mismatch on {w}")
                if motif_cut(inst, w) != factor * graph_cut(mg, w):
                    return CheckResult("cut-vol", False, f"cut mismatch on {w}")
    return CheckResult("cut-vol", True, "volume and cut identities hold")


def _check_decomposition() -> CheckResult:
    rng = np.random.default_rng(13)
    paw = Motif(4, [(0, 1), (1, 2), (1, 3), (2, 3)], anchors=(0, 1, 2))
    dec = two_anchor_decomposition(paw)
    if sorted(pc.weight for pc in dec.classes) != [1, 1, 2]:
        return CheckResult("decomposition", False, "paw weights are not {1,1,2}")
    g = _random_graph(rng, 9, 0.5, directed=False)
    whole = {(u, v): w for u, v, w in build_motif_graph_exact(paw, g).graph.edge_list()}
    total: dict[tuple[int, int], float] = {}
    for pc in dec.classes:
        part = build_motif_graph_exact(pc.representative, g)
        for u, v, w in part.graph.edge_list():
            total[(u, v)] = total.get((u, v), 0.0) + pc.weight * w
    if {k: v for k, v in total.items() if v} != whole:
        return CheckResult("decomposition", False, "pair-class sum != whole")
    return CheckResult("decomposition", True, "pair classes recompose exactly")


def _check_counter() -> CheckResult:
    c = NoisyCounter(eps=0.1, delta=0.01, seed=5)
    for t in (1.0, 7.0, 123.0):
        for _ in range(2000):
            got = c.count(t)
            if not (1 - 0.1) * t <= got <= (1 + 0.1) * t:
                return CheckResult("counter", False, f"{got} out of band for t={t}")
    if c.count(0.0) != 0.0:
        return CheckResult("counter", False, "zero count not preserved")
    return CheckResult("counter", True, "relative error band respected")


def _check_approx_build() -> CheckResult:
    k4 = Graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    tri = named_motif("triangle2")
    exact = build_motif_graph_exact(tri, k4)
    approx = build_motif_graph_approx(tri, k4, eps=0.1, delta=0.01,
                                      counter=ExactCounter())
    if approx.graph.edge_list() != exact.graph.edge_list():
        return CheckResult("approx-build", False, "noiseless approx != exact")
    noisy = build_motif_graph_approx(tri, k4, eps=0.1, delta=0.01,
                                     counter=NoisyCounter(eps=0.1, delta=0.01, seed=3))
    bad = [w for _, _, w in noisy.graph.edge_list() if not 1.8 <= w <= 2.2]
    if bad:
        return CheckResult("approx-build", False, f"weights out of band: {bad}")
    return CheckResult("approx-build", True, "approximate weights in band")


def _check_costs() -> CheckResult:
    if abs(crossover_tau0(3) - 2.2153) > 1e-3 or abs(crossover_tau1() - 2.7208) > 1e-3:
        return CheckResult("costs", False, "crossover points off")
    reg = powerlaw_analysis(3, 2.5)
    if abs(reg.exponents["classical"] - (1 + 2 / 1.5)) > 1e-12:
        return CheckResult("costs", False, "classical exponent off at tau=2.5")
    report = algorithm_costs(n=10 ** 4, d=100, s=3, l=1, instances=10 ** 5)
    if min(report.estimates.values()) <= 0:
        return CheckResult("costs", False, "non-positive cost estimate")
    return CheckResult("costs", True, "crossovers and exponents agree")


def _check_spectrum() -> CheckResult:
    rng = np.random.default_rng(17)
    for _ in range(10):
        n = int(rng.integers(8, 30))
        g = _random_graph(rng, n, 0.4, directed=False)
        if any(g.strength(u) == 0 for u in range(n)):
            continue
        shaken = perturb_weights(g, 0.2, seed=int(rng.integers(2 ** 31)))
        lap = build_laplacians(g).laplacian
        lap_shaken = build_laplacians(shaken).laplacian
        if not sandwich_check(lap, lap_shaken, 0.2).ok:
            return CheckResult("spectrum", False, "sandwich violated in band")
        if sandwich_check(lap, 1.4 * lap_shaken, 0.2).ok:
            return CheckResult("spectrum", False, "x1.4 scaling not flagged")
    path = Graph(3, [(0, 1), (1, 2)])
    wit = normalized_nogo_witness(path, eps=0.5, seed=1)
    if wit.degenerate or wit.certificate >= 0:
        return CheckResult("spectrum", False, "no-go witness not found on path")
    return CheckResult("spectrum", True, "sandwich bounds and no-go behave")


CHECKS = {
    "enumeration": _check_enumeration,
    "cut-vol": _check_cut_vol_identities,
    "decomposition": _check_decomposition,
    "counter": _check_counter,
    "approx-build": _check_approx_build,
    "costs": _check_costs,
    "spectrum": _check_spectrum,
}


def run_checks(names=None) -> list[CheckResult]:
    if names is None:
        names = list(CHECKS)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {unknown}; have {sorted(CHECKS)}")
    return [CHECKS[n]() for n in names]
