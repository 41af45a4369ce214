"""Evaluation domains S = <ω> and their cosets D = ηS, with (coset) FFTs."""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

from . import kernels
from .field import PrimeField
from .opcount import Tally, charge


class DomainError(ValueError):
    pass


def _is_pow2(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


class EvaluationDomain:
    """Multiplicative subgroup of order ``n`` generated by ``omega``, optionally shifted by ``eta``."""

    def __init__(self, field: PrimeField, n: int, omega: int | None = None, eta: int | None = None):
        if not _is_pow2(n):
            raise DomainError(f"domain size {n} is not a power of two")
        p = field.modulus
        if omega is None:
            omega = field.root_of_unity_int(n)
        omega %= p
        if pow(omega, n, p) != 1 or (n > 1 and pow(omega, n // 2, p) == 1):
            raise DomainError(f"{omega} is not a primitive {n}-th root of unity")
        if eta is not None:
            eta %= p
            # η ∉ S  <=>  η^n ≠ 1
            if eta == 0 or pow(eta, n, p) == 1:
                raise DomainError(f"coset shift {eta} lies in S (η^n = 1) or is zero")
        self.field = field
        self.n = n
        self.omega = omega
        self.eta = eta

    @classmethod
    def standard(cls, field: PrimeField, n: int, eta: int | None = None) -> EvaluationDomain:
        """Domain with ω = g^((p-1)/n) and η defaulting to the field generator."""
        return cls(field, n, eta=field.generator if eta is None else eta)

    def __repr__(self):
        return f"EvaluationDomain(p={self.field.modulus}, n={self.n}, ω={self.omega}, η={self.eta})"

    @property
    def p(self) -> int:
        return self.field.modulus

    @cached_property
    def omega_inv(self) -> int:
        return self.field.inv_int(self.omega)

    @cached_property
    def eta_inv(self) -> int:
        return self.field.inv_int(self._require_eta())

    @cached_property
    def n_inv(self) -> int:
        return self.field.inv_int(self.n)

    @cached_property
    def _twiddles(self) -> list[int]:
        return [pow(self.omega, k, self.p) for k in range(max(self.n // 2, 1))]

    @cached_property
    def _inv_twiddles(self) -> list[int]:
        return [pow(self.omega_inv, k, self.p) for k in range(max(self.n // 2, 1))]

    def elements(self) -> list[int]:
        """S itself, or D when η is set."""
        start = 1 if self.eta is None else self.eta
        return [start * pow(self.omega, i, self.p) % self.p for i in range(self.n)]

    def without_coset(self) -> EvaluationDomain:
        return EvaluationDomain(self.field, self.n, self.omega)

    def stride(self, K: int) -> EvaluationDomain:
        """Subdomain S' = <ω^K> of size n/K, with shift η^K (so D' = η^K S')."""
        if K < 1 or self.n % K:
            raise DomainError(f"K={K} does not divide n={self.n}")
        eta = None if self.eta is None else pow(self.eta, K, self.p)
        return EvaluationDomain(self.field, self.n // K, pow(self.omega, K, self.p), eta)

    def _require_eta(self) -> int:
        if self.eta is None:
            raise DomainError("domain has no coset shift η")
        return self.eta

    def _check_len(self, xs: Sequence[int]) -> None:
        if len(xs) != self.n:
            raise DomainError(f"expected length {self.n}, got {len(xs)}")


def fft(domain: EvaluationDomain, coeffs: Sequence[int], tally: Tally | None = None) -> list[int]:
    """Evaluate the polynomial with coefficients ``coeffs`` on S."""
    domain._check_len(coeffs)
    charge(tally, kernels.ntt_cost(domain.n))
    return kernels.ntt(coeffs, domain._twiddles, domain.p)


def ifft(domain: EvaluationDomain, evals: Sequence[int], tally: Tally | None = None) -> list[int]:
    """Interpolate values on S back to coefficients (carries the 1/n factor)."""
    domain._check_len(evals)
    n, p = domain.n, domain.p
    out = kernels.ntt(evals, domain._inv_twiddles, p)
    charge(tally, kernels.ntt_cost(n))
    if n > 1:
        out = kernels.geometric_scale(out, domain.n_inv, 1, p)
        charge(tally, (n, 0))
    return out


def coset_fft(domain: EvaluationDomain, coeffs: Sequence[int], tally: Tally | None = None) -> list[int]:
    """Evaluate on D = {ηω^i}: scale coefficient μ by η^μ, then FFT on S."""
    eta = domain._require_eta()
    domain._check_len(coeffs)
    scaled = kernels.geometric_scale(coeffs, 1, eta, domain.p)
    charge(tally, kernels.geometric_scale_cost(domain.n))
    return fft(domain, scaled, tally)


def coset_ifft(domain: EvaluationDomain, evals: Sequence[int], tally: Tally | None = None) -> list[int]:
    """Inverse of :func:`coset_fft`: IFFT on S, then scale entry i by η^-i."""
    domain._require_eta()
    coeffs = ifft(domain, evals, tally)
    charge(tally, kernels.geometric_scale_cost(domain.n))
    return kernels.geometric_scale(coeffs, 1, domain.eta_inv, domain.p)


def target_eval_on_coset(domain: EvaluationDomain) -> list[int]:
    """[T(ηω^j)] for T(x) = x^n - 1. Constant, since ω^(jn) = 1."""
    eta = domain._require_eta()
    v = (pow(eta, domain.n, domain.p) - 1) % domain.p
    if v == 0:
        raise DomainError("η^n = 1: T vanishes on the coset")
    return [v] * domain.n


def target_eval_on_subgroup(domain: EvaluationDomain) -> list[int]:
    return [0] * domain.n


def stride_partition(x: Sequence[int], K: int) -> list[list[int]]:
    """Split into K interleaved chunks: chunk j (0-based) is x[j], x[j+K], x[j+2K], ..."""
    n = len(x)
    if K < 1 or n % K:
        raise DomainError(f"K={K} does not divide length {n}")
    if K & (K - 1):
        raise DomainError(f"K={K} is not a power of two")
    return [list(x[j::K]) for j in range(K)]


def stride_unpartition(chunks: Sequence[Sequence[int]]) -> list[int]:
    K = len(chunks)
    m = len(chunks[0])
    out = [0] * (K * m)
    for j, chunk in enumerate(chunks):
        out[j::K] = chunk
    return out
