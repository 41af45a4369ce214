"""Textbook O(n^2) reference implementations.

Nothing here touches the fast kernels, so these serve as ground truth.
"""

from __future__ import annotations

from typing import Sequence

MAX_NAIVE = 4096


class OracleSizeError(ValueError):
    pass


def _guard(n: int) -> None:
    if n > MAX_NAIVE:
        raise OracleSizeError(f"naive transform of size {n} exceeds the {MAX_NAIVE} guard")


def naive_dft(domain, coeffs: Sequence[int]) -> list[int]:
    """out_j = Σ_i c_i ω^(ij)."""
    n, p, w = domain.n, domain.p, domain.omega
    _guard(n)
    if len(coeffs) != n:
        raise ValueError(f"expected {n} values")
    return [sum(c * pow(w, i * j, p) for i, c in enumerate(coeffs)) % p for j in range(n)]


def naive_idft(domain, evals: Sequence[int]) -> list[int]:
    n, p, w = domain.n, domain.p, domain.omega
    _guard(n)
    if len(evals) != n:
        raise ValueError(f"expected {n} values")
    w_inv = pow(w, p - 2, p)
    n_inv = pow(n, p - 2, p)
    return [n_inv * sum(e * pow(w_inv, i * j, p) for j, e in enumerate(evals)) % p for i in range(n)]


def poly_eval(coeffs: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def naive_coset_eval(coeffs: Sequence[int], point: int, p: int) -> int:
    """Evaluate the coefficient vector at one point (e.g. ηω^j)."""
    _guard(len(coeffs))
    return poly_eval(coeffs, point, p)


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return [(x - y) % p for x, y in zip(a, b)]


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def naive_poly_divide(P: Sequence[int], T: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    """Schoolbook long division P = T·H + R with deg R < deg T. Coefficients low-to-high."""
    T = _trim([t % p for t in T])
    if not T:
        raise ZeroDivisionError("division by the zero polynomial")
    if len(T) < 2:
        raise ValueError("divisor must have degree >= 1")
    R = _trim([c % p for c in P])
    dt = len(T) - 1
    lead_inv = pow(T[-1], p - 2, p)
    H = [0] * max(len(R) - dt, 1)
    while len(R) - 1 >= dt:
        k = len(R) - 1 - dt
        q = R[-1] * lead_inv % p
        H[k] = q
        for i, t in enumerate(T):
            R[k + i] = (R[k + i] - q * t) % p
        _trim(R)
    return H, R


def matrix_rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank by Gaussian elimination over F_p."""
    m = [[int(x) % p for x in r] for r in rows]
    if not m or not m[0]:
        return 0
    rank, cols = 0, len(m[0])
    for col in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], p - 2, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank
