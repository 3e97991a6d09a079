"""Size caps for the exact searches.

Every cap can be overridden through an environment variable named
``RDSS_<FIELD>`` (upper case), e.g. ``RDSS_STATE_CAP=65536``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

ENV_PREFIX = "RDSS_"


@dataclass(frozen=True)
class Limits:
    state_cap: int = 2**20  # q^n strings for confusion-graph work
    subset_cap: int = 30  # vertices for exact subset searches
    cycle_cap: int = 10**5  # simple cycles enumerated
    minrank_cap: int = 2**24  # fitting matrices (after diagonal normalization)
    covering_cap: int = 4096  # q^n for greedy covering (quadratic per step)
    aq_exact_cap: int = 128  # q^n for brute-force A_q(n, d)

    def override(self, **kwargs) -> "Limits":
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


def from_env(base: Limits | None = None) -> Limits:
    base = base or Limits()
    found = {}
    for f in fields(Limits):
        raw = os.environ.get(ENV_PREFIX + f.name.upper())
        if raw is not None:
            found[f.name] = int(raw)
    return base.override(**found)


DEFAULT = Limits()


def resolve(limits: Limits | None) -> Limits:
    return DEFAULT if limits is None else limits
