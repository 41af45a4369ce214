"""Kernel dispatch: compiled extension when importable, pure Python otherwise.

Set ``PROOFMESH_PURE=1`` to force the fallback. Moduli of 2**32 or more
always take the Python path.

The ``*_cost`` helpers give the exact multiplication/addition counts the
kernel loops perform; the instrumentation layer charges them per call.
"""

from __future__ import annotations

import os

from . import _pykernels as py

try:
    if os.environ.get("PROOFMESH_PURE"):
        raise ImportError("pure mode requested")
    from . import _ckernels as _c
except ImportError:  # pragma: no cover - depends on build
    _c = None

HAVE_COMPILED = _c is not None
BACKEND = "cython" if HAVE_COMPILED else "python"


def _impl(p: int):
    if _c is not None and p < _c.MAX_MODULUS:
        return _c
    return py


def ntt(values, twiddles, p):
    return _impl(p).ntt(values, twiddles, p)


def pointwise_mul(x, y, p):
    return _impl(p).pointwise_mul(x, y, p)


def geometric_scale(x, start, ratio, p):
    return _impl(p).geometric_scale(x, start % p, ratio % p, p)


def lincomb(matrix, vectors, p):
    return _impl(p).lincomb(matrix, vectors, p)


def vec_sum(vectors, p):
    return _impl(p).vec_sum(vectors, p)


def horner_recombine(w, n, x0, rho, s0, sigma, p):
    return _impl(p).horner_recombine(w, n, x0 % p, rho % p, s0 % p, sigma % p, p)


# -- operation counts (mul, add) matching the loops above --

def ntt_cost(n: int) -> tuple[int, int]:
    if n <= 1:
        return 0, 0
    log = n.bit_length() - 1
    return (n // 2) * log, n * log


def geometric_scale_cost(n: int) -> tuple[int, int]:
    return 2 * n, 0


def lincomb_cost(matrix, m: int) -> tuple[int, int]:
    nnz = sum(1 for row in matrix for c in row if c)
    return nnz * m, nnz * m


def horner_cost(n: int, k: int, scaled: bool) -> tuple[int, int]:
    muls = n * (k - 1) + n + (2 * n if scaled else 0)
    return muls, n * (k - 1)
