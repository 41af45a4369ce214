"""Instrumented op counts for the distributed transforms.

Counts come from the kernels' exact per-call cost formulas, attributed to
the party that executes each step.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from ..field import DESK, PrimeField
from ..mpc import COMPOSED, COSET_IFFT, ProtocolConfig, run_simulation
from ..opcount import OpCounter

PIPELINE = "pipeline"
CSV_HEADER = ("n", "K", "T", "party", "mul_count", "add_count")


@dataclass(frozen=True)
class ComplexityRow:
    n: int
    K: int
    T: int
    party: str
    mul_count: int
    add_count: int

    def astuple(self):
        return (self.n, self.K, self.T, self.party, self.mul_count, self.add_count)


def measure_run(field: PrimeField, n: int, K: int, T: int, seed: int = 0,
                protocol: str = PIPELINE) -> OpCounter:
    """Op counts for one composed or coset-IFFT run, or for the whole distributed quotient.

    The quotient runs three composed transforms, the prover-side division
    and one coset-IFFT transform on random inputs.
    """
    from ..snark import quotient_distributed

    config = ProtocolConfig.build(field, n, K, T, seed)
    rng = np.random.default_rng([seed, n, K, T])
    vecs = [field.random_vector(rng, n) for _ in range(3)]
    if protocol == PIPELINE:
        return quotient_distributed(config, *vecs).ops
    if protocol not in (COMPOSED, COSET_IFFT):
        raise ValueError(f"unknown protocol {protocol!r}")
    return run_simulation(config, protocol, vecs[0])[1].ops


def complexity_report(grid: Iterable[tuple[int, int, int]], field: PrimeField = DESK, seed: int = 0,
                      protocol: str = PIPELINE) -> list[ComplexityRow]:
    rows = []
    for n, K, T in grid:
        ops = measure_run(field, n, K, T, seed, protocol)
        for name in ["prover"] + [f"server{t}" for t in range(1, K + T + 1)]:
            t = ops.party(name)
            rows.append(ComplexityRow(n, K, T, name, t.mul, t.add))
    return rows


def report_csv(rows: Iterable[ComplexityRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.astuple())
    return buf.getvalue()


def per_server_max(rows: Iterable[ComplexityRow], n: int, K: int, T: int) -> int:
    return max(r.mul_count for r in rows if (r.n, r.K, r.T) == (n, K, T) and r.party.startswith("server"))


def prover_count(rows: Iterable[ComplexityRow], n: int, K: int, T: int) -> int:
    (r,) = [r for r in rows if (r.n, r.K, r.T, r.party) == (n, K, T, "prover")]
    return r.mul_count


def predicted_server(n: int, K: int) -> float:
    m = n // K
    return m * math.log2(m) if m > 1 else 1.0


def predicted_prover(n: int, K: int) -> float:
    return float(K * n)
