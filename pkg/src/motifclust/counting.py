"""Noise model for counting with multiplicative error and a query ledger.

A counter answers "how many of the N candidates match" with relative
error eps, except with probability delta (failure mode, off by default),
where the answer is uniform on [0, 2t].  A true count of zero is always
answered exactly.  Every call can log a modelled query cost against the
candidate-space size N: ceil(sqrt(N / t) / eps) for positive counts and
ceil(sqrt(N)) for zero counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


def _check_eps(eps):
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must be in (0, 1), got {eps}")
    return float(eps)


def _check_delta(delta):
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must be in (0, 1), got {delta}")
    return float(delta)


def _check_count(t):
    if isinstance(t, float) and not t.is_integer():
        raise ValueError(f"true count must be integral, got {t}")
    t = int(t)
    if t < 0:
        raise ValueError(f"true count must be non-negative, got {t}")
    return t


@dataclass
class QueryLedger:
    calls: int = 0
    queries: int = 0

    def charge(self, space, t, eps):
        if space is None:
            return
        if space < 1:
            raise ValueError(f"candidate space must be at least 1, got {space}")
        if t > 0:
            self.queries += math.ceil(math.sqrt(space / t) / eps)
        else:
            self.queries += math.ceil(math.sqrt(space))
        self.calls += 1


@dataclass
class NoisyCounter:
    """Seeded multiplicative-error counter.

    count(t) draws uniformly from [(1-eps)t, (1+eps)t]; with failure_mode
    on, a delta-probability failure draws uniformly from [0, 2t] instead.
    t == 0 returns 0 with certainty.  Passing key=(u, v) derives a
    dedicated stream from (seed, u, v) so results do not depend on call
    order; otherwise a shared sequential stream is used.
    """
    eps: float
    delta: float
    seed: int
    failure_mode: bool = False
    ledger: QueryLedger = field(default_factory=QueryLedger)

    def __post_init__(self):
        self.eps = _check_eps(self.eps)
        self.delta = _check_delta(self.delta)
        if not isinstance(self.seed, (int, np.integer)) or self.seed < 0:
            raise ValueError(f"seed must be a non-negative integer, got {self.seed!r}")
        self.seed = int(self.seed)
        self._stream = np.random.default_rng(self.seed)

    def count(self, t, eps=None, delta=None, *, key=None, space=None) -> float:
        t = _check_count(t)
        eps = self.eps if eps is None else _check_eps(eps)
        delta = self.delta if delta is None else _check_delta(delta)
        self.ledger.charge(space, t, eps)
        if t == 0:
            return 0.0
        rng = self._stream if key is None else np.random.default_rng((self.seed, *key))
        if self.failure_mode and rng.uniform() < delta:
            return float(rng.uniform(0.0, 2.0 * t))
        return float(rng.uniform((1.0 - eps) * t, (1.0 + eps) * t))


@dataclass
class ExactCounter:
    """Same interface as NoisyCounter but answers exactly; costs still logged."""
    seed: int = 0
    ledger: QueryLedger = field(default_factory=QueryLedger)

    def count(self, t, eps=None, delta=None, *, key=None, space=None) -> float:
        t = _check_count(t)
        self.ledger.charge(space, t, eps if eps is not None else 0.1)
        return float(t)
