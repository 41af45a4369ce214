# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; moduli must be below 2**32 so products fit in 64 bits."""

from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64

MAX_MODULUS = 1 << 32


cdef u64* _to_c(object seq, Py_ssize_t n) except NULL:
    cdef u64* buf = <u64*> malloc((n if n > 0 else 1) * sizeof(u64))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = seq[i]
    return buf


cdef list _to_py(u64* buf, Py_ssize_t n):
    cdef Py_ssize_t i
    return [buf[i] for i in range(n)]


def ntt(values, twiddles, u64 p):
    cdef Py_ssize_t n = len(values)
    if n <= 1:
        return list(values)
    cdef u64* a = _to_c(values, n)
    cdef u64* tw = _to_c(twiddles, n // 2)
    cdef Py_ssize_t i, j = 0, bit, length, half, step, start, k
    cdef u64 u, v, t
    try:
        for i in range(1, n):
            bit = n >> 1
            while j & bit:
                j ^= bit
                bit >>= 1
            j |= bit
            if i < j:
                t = a[i]; a[i] = a[j]; a[j] = t
        length = 2
        while length <= n:
            half = length >> 1
            step = n // length
            start = 0
            while start < n:
                for k in range(half):
                    u = a[start + k]
                    v = a[start + k + half] * tw[k * step] % p
                    t = u + v
                    a[start + k] = t - p if t >= p else t
                    a[start + k + half] = u - v if u >= v else u + p - v
                start += length
            length <<= 1
        return _to_py(a, n)
    finally:
        free(a)
        free(tw)


def pointwise_mul(x, y, u64 p):
    cdef Py_ssize_t n = len(x), i
    cdef u64* a = _to_c(x, n)
    cdef u64* b = _to_c(y, n)
    try:
        for i in range(n):
            a[i] = a[i] * b[i] % p
        return _to_py(a, n)
    finally:
        free(a)
        free(b)


def geometric_scale(x, u64 start, u64 ratio, u64 p):
    cdef Py_ssize_t n = len(x), i
    cdef u64* a = _to_c(x, n)
    cdef u64 w = start % p
    try:
        for i in range(n):
            a[i] = a[i] * w % p
            w = w * ratio % p
        return _to_py(a, n)
    finally:
        free(a)


def lincomb(matrix, vectors, u64 p):
    cdef Py_ssize_t R = len(matrix), C = len(vectors)
    cdef Py_ssize_t M = len(vectors[0]) if C else 0
    cdef Py_ssize_t r, c, t
    cdef u64 coef
    cdef u64* vecs = <u64*> malloc((C * M if C * M > 0 else 1) * sizeof(u64))
    cdef u64* acc = <u64*> malloc((M if M > 0 else 1) * sizeof(u64))
    if vecs == NULL or acc == NULL:
        free(vecs); free(acc)
        raise MemoryError()
    out = []
    try:
        for c in range(C):
            vec = vectors[c]
            for t in range(M):
                vecs[c * M + t] = vec[t]
        for r in range(R):
            row = matrix[r]
            for t in range(M):
                acc[t] = 0
            for c in range(C):
                coef = row[c]
                if coef == 0:
                    continue
                for t in range(M):
                    acc[t] = (acc[t] + coef * vecs[c * M + t]) % p
            out.append(_to_py(acc, M))
        return out
    finally:
        free(vecs)
        free(acc)


def vec_sum(vectors, u64 p):
    cdef Py_ssize_t C = len(vectors), M = len(vectors[0]), c, t
    cdef u64* acc = _to_c(vectors[0], M)
    try:
        for c in range(1, C):
            vec = vectors[c]
            for t in range(M):
                acc[t] = (acc[t] + <u64> vec[t]) % p
        return _to_py(acc, M)
    finally:
        free(acc)


def horner_recombine(w, Py_ssize_t n, u64 x0, u64 rho, u64 s0, u64 sigma, u64 p):
    cdef Py_ssize_t K = len(w), M = len(w[0]), i, j, r
    cdef u64* ws = <u64*> malloc(K * M * sizeof(u64))
    cdef u64* out = <u64*> malloc((n if n > 0 else 1) * sizeof(u64))
    if ws == NULL or out == NULL:
        free(ws); free(out)
        raise MemoryError()
    cdef u64 x = x0 % p, s = s0 % p, acc
    cdef bint scaled = not (s0 % p == 1 and sigma % p == 1)
    try:
        for j in range(K):
            row = w[j]
            for r in range(M):
                ws[j * M + r] = row[r]
        for i in range(n):
            r = i % M
            acc = ws[(K - 1) * M + r]
            for j in range(K - 2, -1, -1):
                acc = (acc * x + ws[j * M + r]) % p
            if scaled:
                acc = acc * s % p
                s = s * sigma % p
            out[i] = acc
            x = x * rho % p
        return _to_py(out, n)
    finally:
        free(ws)
        free(out)
