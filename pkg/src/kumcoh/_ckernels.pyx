# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Streaming row compression over Z/p^a (compiled counterpart of _modring.howell_rows)."""

import numpy as np

from libc.stdint cimport int64_t as i64


cdef inline void _axpy(i64[:] dst, i64[:] src, i64 f, Py_ssize_t start, Py_ssize_t c, i64 q) noexcept nogil:
    # dst[start:] = (dst - f*src) mod q
    cdef Py_ssize_t t
    cdef i64 y
    for t in range(start, c):
        y = (dst[t] - f * src[t]) % q
        if y < 0:
            y += q
        dst[t] = y


def _tables(p, a):
    q = p**a
    val = np.zeros(q, dtype=np.int64)
    uinv = np.zeros(q, dtype=np.int64)
    val[0] = a
    for x in range(1, q):
        v, u = 0, x
        while u % p == 0:
            u //= p
            v += 1
        val[x] = v
        uinv[x] = pow(u, -1, q)
    return val, uinv


def howell_rows(rows, long p, long a, block=None):
    cdef i64 q = 1
    cdef Py_ssize_t k
    for k in range(a):
        q *= p
    cdef i64[:, :] src = np.ascontiguousarray(np.asarray(rows, dtype=np.int64) % q)
    cdef Py_ssize_t n = src.shape[0], c = src.shape[1]

    val_np, uinv_np = _tables(p, a)
    cdef i64[:] val = val_np
    cdef i64[:] uinv = uinv_np
    cdef i64[:] ppow = np.array([p**k for k in range(a + 1)], dtype=np.int64)

    basis_np = np.zeros((c, c), dtype=np.int64)
    bval_np = np.full(c, -1, dtype=np.int64)
    cdef i64[:, :] basis = basis_np
    cdef i64[:] bval = bval_np
    cdef Py_ssize_t cap = c * (a + 1) + 4
    cdef i64[:, :] stack = np.zeros((cap, c), dtype=np.int64)
    cdef i64[:] cur = np.zeros(c, dtype=np.int64)
    cdef i64[:] tmp = np.zeros(c, dtype=np.int64)
    cdef Py_ssize_t top, r, j, t
    cdef i64 x, w, f, inv, s
    cdef bint overflow = False

    with nogil:
        for r in range(n):
            for t in range(c):
                stack[0, t] = src[r, t]
            top = 1
            while top > 0 and not overflow:
                top -= 1
                for t in range(c):
                    cur[t] = stack[top, t]
                j = 0
                while j < c:
                    x = cur[j]
                    if x == 0:
                        j += 1
                        continue
                    w = val[x]
                    if bval[j] >= 0 and w >= bval[j]:
                        f = x // ppow[bval[j]]
                        _axpy(cur, basis[j], f, j, c, q)
                        j += 1
                        continue
                    # cur becomes the pivot row at column j
                    inv = uinv[x]
                    for t in range(j, c):
                        tmp[t] = basis[j, t]
                        basis[j, t] = cur[t] * inv % q
                    s = ppow[a - w]
                    if top + 1 >= cap:
                        overflow = True
                        break
                    for t in range(c):
                        stack[top, t] = 0
                    for t in range(j + 1, c):
                        stack[top, t] = basis[j, t] * s % q
                    top += 1
                    if bval[j] < 0:
                        bval[j] = w
                        break
                    # the displaced pivot row keeps being reduced
                    bval[j] = w
                    for t in range(c):
                        cur[t] = 0
                    for t in range(j, c):
                        cur[t] = tmp[t]
    if overflow:
        raise RuntimeError("row stack overflow")
    keep = [j for j in range(c) if bval_np[j] >= 0]
    return np.ascontiguousarray(basis_np[keep])
