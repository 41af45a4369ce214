"""Lagrange sharing of vectors over public evaluation points.

A sharing encodes K data chunks and T random chunks as the vector
polynomial u(z) through (β_j, chunk_j); server θ holds u(α_θ).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from . import kernels
from .field import PrimeField
from .opcount import Tally, charge


class SharingError(ValueError):
    pass


def _basis_at(points: Sequence[int], z: int, p: int, denom_inv: Sequence[int]) -> list[int]:
    """Lagrange basis over ``points`` at ``z``, given the inverted denominators."""
    n = len(points)
    out = [0] * n
    for i in range(n):
        num = 1
        for k in range(n):
            if k != i:
                num = num * (z - points[k]) % p
        out[i] = num * denom_inv[i] % p
    return out


def _denominators(points: Sequence[int], p: int) -> list[int]:
    out = []
    for i, a in enumerate(points):
        d = 1
        for k, b in enumerate(points):
            if k != i:
                d = d * (a - b) % p
        out.append(d)
    return out


@dataclass(frozen=True)
class SharingParams:
    field: PrimeField
    K: int
    T: int
    beta: tuple[int, ...]
    alpha: tuple[int, ...]

    @property
    def N(self) -> int:
        return self.K + self.T

    def __post_init__(self):
        p = self.field.modulus
        if self.K < 1 or self.T < 0:
            raise SharingError(f"need K >= 1 and T >= 0, got K={self.K}, T={self.T}")
        beta = tuple(b % p for b in self.beta)
        alpha = tuple(a % p for a in self.alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "alpha", alpha)
        if len(beta) != self.N or len(alpha) != self.N:
            raise SharingError(f"need {self.N} β and α points")
        if len(set(beta)) != len(beta) or len(set(alpha)) != len(alpha):
            raise SharingError("evaluation points must be distinct")
        if 0 in beta or 0 in alpha:
            raise SharingError("evaluation points must be nonzero")
        if set(alpha) & set(beta[: self.K]):
            raise SharingError("α points must avoid β_1..β_K")

    @classmethod
    def canonical(cls, field: PrimeField, K: int, T: int) -> SharingParams:
        """β_j = j for j ≤ K+T and α_θ = K+T+θ."""
        N = K + T
        if 2 * N >= field.modulus:
            raise SharingError(f"F_{field.modulus} too small for N={N} canonical points")
        return cls(field, K, T, tuple(range(1, N + 1)), tuple(range(N + 1, 2 * N + 1)))

    @cached_property
    def _beta_denom_inv(self) -> list[int]:
        return self.field.batch_inv(_denominators(self.beta, self.field.modulus))

    @cached_property
    def _alpha_denom_inv(self) -> list[int]:
        return self.field.batch_inv(_denominators(self.alpha, self.field.modulus))

    def beta_basis(self, z: int) -> list[int]:
        """ℓ_j(z) over the β points (the coefficients defining u)."""
        return _basis_at(self.beta, z % self.field.modulus, self.field.modulus, self._beta_denom_inv)

    @cached_property
    def encode_matrix(self) -> list[list[int]]:
        """Row θ: coefficients mapping (chunks, randomness) to u(α_θ)."""
        return [self.beta_basis(a) for a in self.alpha]

    @cached_property
    def decode_matrix(self) -> list[list[int]]:
        """Row j < K: coefficients mapping the N shares to u(β_j)."""
        return [lagrange_coefficients(self, b) for b in self.beta[: self.K]]


def lagrange_coefficients(params: SharingParams, z: int) -> list[int]:
    """∏_{k≠θ} (z-α_k)/(α_θ-α_k) for each θ."""
    p = params.field.modulus
    return _basis_at(params.alpha, z % p, p, params._alpha_denom_inv)


def share(
    params: SharingParams,
    chunks: Sequence[Sequence[int]],
    randomness: Sequence[Sequence[int]],
    tally: Tally | None = None,
) -> list[list[int]]:
    """Return [u(α_1), ..., u(α_N)]."""
    if len(chunks) != params.K or len(randomness) != params.T:
        raise SharingError(
            f"expected {params.K} chunks and {params.T} random vectors, "
            f"got {len(chunks)} and {len(randomness)}"
        )
    rows = list(chunks) + list(randomness)
    m = len(rows[0])
    if any(len(r) != m for r in rows):
        raise SharingError("chunks and randomness must share one length")
    charge(tally, kernels.lincomb_cost(params.encode_matrix, m))
    return kernels.lincomb(params.encode_matrix, rows, params.field.modulus)


def reconstruct_at(
    params: SharingParams,
    shares: Sequence[Sequence[int]] | dict[int, Sequence[int]],
    z: int,
) -> list[int]:
    """Interpolate the shares at ``z``.

    ``shares`` is either a length-N list ordered by server, or a mapping
    from 1-based server index to share.
    """
    if isinstance(shares, dict):
        if sorted(shares) != list(range(1, params.N + 1)):
            raise SharingError(f"need shares from servers 1..{params.N}, got {sorted(shares)}")
        ordered = [shares[t] for t in range(1, params.N + 1)]
    else:
        ordered = list(shares)
        if len(ordered) != params.N:
            raise SharingError(f"need exactly {params.N} shares, got {len(ordered)}")
    coeffs = lagrange_coefficients(params, z)
    return kernels.lincomb([coeffs], ordered, params.field.modulus)[0]


def pq_matrices(params: SharingParams) -> tuple[list[list[int]], list[list[int]]]:
    """P (K×T) and Q (T×T): u(α_j) = Σ_i p_ij chunk_i + Σ_i q_ij v_i over the first T α points."""
    K, T = params.K, params.T
    cols = [params.beta_basis(a) for a in params.alpha[:T]]
    P = [[cols[j][i] for j in range(T)] for i in range(K)]
    Q = [[cols[j][K + i] for j in range(T)] for i in range(T)]
    return P, Q
