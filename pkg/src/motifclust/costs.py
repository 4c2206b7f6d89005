"""Query-cost bookkeeping for the counting pipelines.

Costs are dominant terms with unit constants, expressed in oracle queries
as a function of vertex count n, degree bound d, motif size s, anchor
span l, and the total instance count.  Five strategies are compared:

  classical             n * d^(s-1)          exhaustive walk enumeration
  grover_preprocess     n*d + sqrt(n * d^(s-1) * M)   amplitude search over
                        walks after degree-sorting the adjacency structure
  grover_no_preprocess  sqrt(n * d^s * M)    amplitude search, unsorted
  approx_classical      n * d^(l + s/2 - 1)  per-pair approximate counting
  approx_quantum        sqrt(n^3 * d^(s-2))  per-pair amplitude counting

The power-law analysis specializes these to clique counting on heavy-tail
degree graphs (degree exponent tau in (2, 3), degree cut-off n^(1/(tau-1)),
expected instance count n^((s/2)(3-tau))) and reports the exponent of n
per strategy plus the regime boundaries where the best quantum strategy
changes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

#: evaluation order, also the tie-breaking order for argmin
ALGORITHMS = ("classical", "grover_preprocess", "grover_no_preprocess",
              "approx_classical", "approx_quantum")
#: candidates for regime selection; the exhaustive baseline is reported only
SELECTABLE_ALGORITHMS = ("grover_preprocess", "grover_no_preprocess",
                         "approx_classical", "approx_quantum")


def grover_cost(space: float, t: float) -> float:
    """Queries to find one of t marked items among `space` (sqrt(space) if t=0)."""
    if space < 1:
        raise ValueError("candidate space must be at least 1")
    if t < 0 or t > space:
        raise ValueError("marked count must lie in [0, space]")
    return math.sqrt(space / t) if t > 0 else math.sqrt(space)


def find_all_cost(space: float, t: float) -> float:
    """Queries to list all t marked items (sqrt(space) if t=0)."""
    if space < 1:
        raise ValueError("candidate space must be at least 1")
    if t < 0 or t > space:
        raise ValueError("marked count must lie in [0, space]")
    return math.sqrt(space * t) if t > 0 else math.sqrt(space)


def approx_count_cost(space: float, t: float, eps: float, delta: float) -> float:
    """Queries to estimate t within relative error eps, failure rate delta."""
    if space < 1:
        raise ValueError("candidate space must be at least 1")
    if t < 0 or t > space:
        raise ValueError("marked count must lie in [0, space]")
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must be in (0, 1), got {eps}")
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must be in (0, 1), got {delta}")
    if t == 0:
        return math.sqrt(space)
    return math.sqrt(space / t) * math.log(1.0 / delta) / eps


@dataclass(frozen=True)
class CostReport:
    n: int
    d: int
    s: int
    l: int
    instances: float
    preprocess: bool
    estimates: dict
    best: str
    kmeans_term: str = "T_kmeans"

    def exponent_of_n(self, name: str):
        """Effective exponent log_n(estimate); None when n <= 1."""
        if self.n <= 1:
            return None
        return math.log(self.estimates[name]) / math.log(self.n)

    def to_csv(self) -> str:
        lines = [f"# n={self.n},d={self.d},s={self.s},l={self.l},"
                 f"instances={self.instances},preprocess={int(self.preprocess)}",
                 "algorithm,dominant_term,exponent_of_n,selected"]
        for name in ALGORITHMS:
            expo = self.exponent_of_n(name)
            lines.append(f"{name},{self.estimates[name]!r},"
                         f"{'' if expo is None else format(expo, '.6f')},"
                         f"{int(name == self.best)}")
        lines.append(f"kmeans_postprocess,{self.kmeans_term},,0")
        return "\n".join(lines) + "\n"


def algorithm_costs(n: int, d: int, s: int, l: int, instances: float,
                    preprocess: bool = False) -> CostReport:
    """Dominant query costs of the five counting strategies.

    `instances` is the total instance count (0 allowed: searches then pay
    their sqrt-of-space floor).  The preprocess flag adds the n*d sorting
    pass to the two per-pair counting strategies; the sorted amplitude
    search always includes it.
    """
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    if s < 3:
        raise ValueError("motif size must be at least 3")
    if not 1 <= l <= s - 1:
        raise ValueError("anchor span must lie in [1, s-1]")
    if instances < 0 or instances > n * float(d) ** (s - 1):
        raise ValueError("instance count must lie in [0, n * d^(s-1)]")
    m_count = float(instances)
    walk_space = n * float(d) ** (s - 1)
    est = {
        "classical": walk_space,
        "grover_preprocess": n * d + find_all_cost(walk_space, m_count),
        "grover_no_preprocess": find_all_cost(n * float(d) ** s, m_count),
        "approx_classical": n * float(d) ** (l + s / 2.0 - 1.0),
        "approx_quantum": math.sqrt(float(n) ** 3 * float(d) ** (s - 2)),
    }
    if preprocess:
        est["approx_classical"] += n * d
        est["approx_quantum"] += n * d
    best = min(ALGORITHMS, key=lambda name: est[name])
    return CostReport(n=n, d=d, s=s, l=l, instances=m_count, preprocess=preprocess,
                      estimates=est, best=best)


# -- heavy-tail degree regime ------------------------------------------


def crossover_tau0(s: int) -> float:
    """Degree exponent where per-pair quantum counting stops winning."""
    if s < 3:
        raise ValueError("motif size must be at least 3")
    return (math.sqrt(s * s - 2 * s + 4) + 2 * s - 2) / s


def crossover_tau1() -> float:
    """Degree exponent above which skipping the sort wins for 3-cliques."""
    return (5.0 + math.sqrt(10.0)) / 3.0


@dataclass(frozen=True)
class PowerLawRegime:
    s: int
    tau: float
    exponents: dict
    tau0: float
    tau1: float
    best: str

    def to_csv(self) -> str:
        lines = [f"# s={self.s},tau={self.tau!r},tau0={self.tau0!r},tau1={self.tau1!r}",
                 "algorithm,exponent_of_n,selected"]
        for name in ALGORITHMS:
            lines.append(f"{name},{self.exponents[name]!r},{int(name == self.best)}")
        return "\n".join(lines) + "\n"


def powerlaw_analysis(s: int, tau: float) -> PowerLawRegime:
    """Exponents of n for clique-of-size-s counting under a tau power law.

    Sets d = n^(1/(tau-1)), expected instances n^((s/2)(3-tau)), anchor
    span 1, and reads off the exponent of each strategy's dominant term.
    `best` is the smallest-exponent quantum strategy (the classical
    exponent is reported for reference but never selected).
    """
    if s < 3:
        raise ValueError("motif size must be at least 3")
    if not 2.0 < tau < 3.0:
        raise ValueError(f"tau must lie in (2, 3), got {tau}")
    inv = 1.0 / (tau - 1.0)
    sort_cost = 1.0 + inv  # n * d
    search = 0.5 + (s / 2.0) * (inv + (3.0 - tau) / 2.0)
    exps = {
        "classical": 1.0 + (s - 1) * inv,
        "grover_preprocess": max(sort_cost, search - inv / 2.0),
        "grover_no_preprocess": search,
        "approx_classical": 1.0 + (s / 2.0) * inv,
        "approx_quantum": 1.5 + (s / 2.0) * inv - inv,
    }
    best = min(SELECTABLE_ALGORITHMS, key=lambda name: exps[name])
    return PowerLawRegime(s=s, tau=tau, exponents=exps,
                          tau0=crossover_tau0(s), tau1=crossover_tau1(), best=best)
