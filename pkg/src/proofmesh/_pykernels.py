"""Pure-Python reference kernels.

Same signatures as the compiled ``_ckernels`` module. All inputs are
sequences of canonical ints modulo ``p``; outputs are fresh lists.
"""


def ntt(values, twiddles, p):
    """Iterative radix-2 transform; ``twiddles[k] = root**k`` for k < n/2."""
    a = list(values)
    n = len(a)
    if n <= 1:
        return a
    j = 0
    for i in range(1, n):
        bit = n >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j |= bit
        if i < j:
            a[i], a[j] = a[j], a[i]
    length = 2
    while length <= n:
        half = length >> 1
        step = n // length
        tw = twiddles[::step][:half]
        for start in range(0, n, length):
            for k in range(half):
                u = a[start + k]
                v = a[start + k + half] * tw[k] % p
                s = u + v
                a[start + k] = s - p if s >= p else s
                d = u - v
                a[start + k + half] = d + p if d < 0 else d
        length <<= 1
    return a


def pointwise_mul(x, y, p):
    return [a * b % p for a, b in zip(x, y)]


def geometric_scale(x, start, ratio, p):
    """``x[i] * start * ratio**i``."""
    out = [0] * len(x)
    w = start % p
    for i, v in enumerate(x):
        out[i] = v * w % p
        w = w * ratio % p
    return out


def lincomb(matrix, vectors, p):
    """Rows of ``matrix @ vectors`` where each of ``vectors`` is a length-M list."""
    out = []
    m = len(vectors[0]) if vectors else 0
    for row in matrix:
        acc = [0] * m
        for c, vec in zip(row, vectors):
            if c == 0:
                continue
            acc = [(s + c * v) % p for s, v in zip(acc, vec)]
        out.append(acc)
    return out


def vec_sum(vectors, p):
    acc = list(vectors[0])
    for vec in vectors[1:]:
        acc = [(s + v) % p for s, v in zip(acc, vec)]
    return acc


def horner_recombine(w, n, x0, rho, s0, sigma, p):
    """``out[i] = s0*sigma**i * sum_j (x0*rho**i)**j * w[j][i % M]``."""
    K = len(w)
    M = len(w[0])
    scaled = not (s0 % p == 1 and sigma % p == 1)
    out = [0] * n
    x = x0 % p
    s = s0 % p
    for i in range(n):
        r = i % M
        acc = w[K - 1][r]
        for j in range(K - 2, -1, -1):
            acc = (acc * x + w[j][r]) % p
        if scaled:
            acc = acc * s % p
            s = s * sigma % p
        out[i] = acc
        x = x * rho % p
    return out
