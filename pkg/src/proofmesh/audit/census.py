"""Exhaustive check that colluding servers' views do not depend on the secret.

The colluders' view is what they receive: their prover shares U and, in
the composed protocol, the reshare messages Ũ from every server
(themselves included). Their own randomness is not part of the view.

Enumerating prover and server randomness jointly costs |F|^(T·M·(1+N))
runs. Given the prover's randomness v the servers' reshare messages are
independent of one another, so the joint distribution of (U, Ũ) is

    Σ_v  δ_U(v) ⊗ hist_1(v) ⊗ ... ⊗ hist_N(v)

where hist_γ(v) is the histogram of server γ's messages to the colluders
over all of γ's randomness. Each histogram is built by running the real
server step for every randomness vector, so the census still executes
every randomness value but only |F|^(T·M)·(1 + N·|F|^(T·M)) steps.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from ..mpc import COMPOSED, COSET_IFFT, ProtocolConfig, ServerState, prover_share_phase, \
    server_local_ifft, server_reshare

PRIVATE, LEAKS = "private", "leaks"
DEFAULT_BUDGET = 10**7


class CensusBudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int):
        super().__init__(f"census needs {required} step executions, budget is {budget}")
        self.required = required
        self.budget = budget


def _space(config: ProtocolConfig) -> int:
    """Number of values one party's randomness (T vectors of length M) can take."""
    if config.zero_randomness:
        return 1
    return config.p ** (config.T * config.M)


def census_cost(config: ProtocolConfig, colluders: Iterable[int] = (1,), protocol: str = COMPOSED) -> dict:
    C = len(set(colluders))
    rp = _space(config)
    steps = rp if protocol == COSET_IFFT else rp * (1 + config.N * rp)
    joint = 1 if protocol == COSET_IFFT else config.p ** (C * config.M * config.N)
    return {"steps": steps, "joint_cells": joint}


def _all_randomness(config: ProtocolConfig):
    T, M, p = config.T, config.M, config.p
    if config.zero_randomness:
        yield [[0] * M for _ in range(T)]
        return
    for flat in itertools.product(range(p), repeat=T * M):
        yield [list(flat[t * M:(t + 1) * M]) for t in range(T)]


def _encode(vec: Sequence[int], p: int) -> int:
    idx = 0
    for x in reversed(vec):
        idx = idx * p + x
    return idx


def _serialize(vec: Sequence[int]) -> bytes:
    return np.asarray(vec, dtype="<u8").tobytes()


@dataclass
class ViewCensus:
    modulus: int
    n: int
    K: int
    T: int
    colluders: tuple[int, ...]
    protocol: str
    randomness_dim: int
    steps: int = 0
    # secret -> serialized U -> list of per-v factor tuples (one histogram per server)
    views: dict[tuple[int, ...], dict[bytes, list[tuple[np.ndarray, ...]]]] = field(default_factory=dict)

    @property
    def multiset_size(self) -> int:
        """Total number of views per secret, |F|^(randomness dimension)."""
        return self.modulus ** self.randomness_dim

    def joint(self, secret, U: bytes) -> np.ndarray | int:
        """Multiplicities of every Ũ value that co-occurs with ``U`` (flattened, server-major)."""
        factors = self.views[tuple(secret)].get(U, [])
        if not factors:
            return 0
        if not factors[0]:
            return len(factors)
        total = None
        for fs in factors:
            term = reduce(np.multiply.outer, fs).ravel()
            total = term if total is None else total + term
        return total

    def total(self, secret) -> int:
        return int(sum(np.sum(self.joint(secret, U)) for U in self.views[tuple(secret)]))

    def same_views(self, s1, s2) -> bool:
        v1, v2 = self.views[tuple(s1)], self.views[tuple(s2)]
        if set(v1) != set(v2):
            return False
        return all(np.array_equal(self.joint(s1, U), self.joint(s2, U)) for U in v1)

    def is_uniform(self, secret) -> bool:
        """Every possible view occurs equally often."""
        v = self.views[tuple(secret)]
        n_u = self.modulus ** (len(self.colluders) * (self.n // self.K))
        if len(v) != n_u:
            return False
        counts = set()
        for U in v:
            j = self.joint(secret, U)
            counts.update(np.unique(j).tolist() if isinstance(j, np.ndarray) else [j])
        return len(counts) == 1

    @property
    def verdict(self) -> str:
        keys = list(self.views)
        return PRIVATE if all(self.same_views(keys[0], k) for k in keys[1:]) else LEAKS

    def summary(self) -> str:
        return (f"{self.verdict.upper()} secrets={len(self.views)} colluders={list(self.colluders)} "
                f"multiset_size={self.multiset_size} steps={self.steps}")


def privacy_census(config: ProtocolConfig, colluders: Iterable[int], secrets: Sequence[Sequence[int]],
                   protocol: str = COMPOSED, budget: int = DEFAULT_BUDGET) -> ViewCensus:
    C = tuple(sorted(set(colluders)))
    if len(C) > config.T:
        raise ValueError(f"{len(C)} colluders exceed the privacy threshold T={config.T}")
    if any(not 1 <= c <= config.N for c in C):
        raise ValueError(f"colluder indices must lie in 1..{config.N}")
    if protocol not in (COMPOSED, COSET_IFFT):
        raise ValueError(f"unknown protocol {protocol!r}")
    cost = census_cost(config, C, protocol)
    required = cost["steps"] * len(secrets)
    if required > budget or cost["joint_cells"] > budget:
        raise CensusBudgetExceeded(max(required, cost["joint_cells"]), budget)

    p, M = config.p, config.M
    dim = 0 if config.zero_randomness else config.T * M * (1 if protocol == COSET_IFFT else 1 + config.N)
    census = ViewCensus(p, config.n, config.K, config.T, C, protocol, dim)
    cells = p ** (len(C) * M)
    for secret in secrets:
        key = tuple(int(x) % p for x in secret)
        table: dict[bytes, list] = {}
        for v in _all_randomness(config):
            shares = prover_share_phase(config, key, v)
            census.steps += 1
            U = _serialize([x for c in C for x in shares[c - 1]])
            hists = []
            if protocol == COMPOSED and C:
                for gamma in range(1, config.N + 1):
                    st = ServerState(gamma)
                    st.scratch["share"] = shares[gamma - 1]
                    server_local_ifft(st, config)
                    idx = []
                    for r in _all_randomness(config):
                        out = server_reshare(st, config, r)
                        census.steps += 1
                        idx.append(_encode([x for c in C for x in out[c - 1]], p))
                    hists.append(np.bincount(idx, minlength=cells).astype(np.int64))
            table.setdefault(U, []).append(tuple(hists))
        census.views[key] = table
    return census
