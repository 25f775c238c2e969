# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled dense elimination mod p; same contract as _elim_py.rref_modp_dense."""

import numpy as np
cimport numpy as cnp

ctypedef long long i64


cdef i64 _inv(i64 a, i64 p):
    cdef i64 t = 0, nt = 1, r = p, nr = a % p, q, tmp
    while nr != 0:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    if t < 0:
        t += p
    return t


def rref_modp_dense(cnp.ndarray A_in, i64 p):
    if A_in.dtype != np.int64 or not A_in.flags.c_contiguous:
        raise TypeError("expected a C-contiguous int64 array")
    cdef i64[:, ::1] A = A_in
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k
    cdef i64 inv, f, x
    pivots = []
    for i in range(m):
        for j in range(n):
            x = A[i, j] % p
            if x < 0:
                x += p
            A[i, j] = x
    for c in range(n):
        if r == m:
            break
        k = -1
        for i in range(r, m):
            if A[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(c, n):
                x = A[r, j]
                A[r, j] = A[k, j]
                A[k, j] = x
        inv = _inv(A[r, c], p)
        if inv != 1:
            for j in range(c, n):
                A[r, j] = A[r, j] * inv % p
        for i in range(m):
            if i == r:
                continue
            f = A[i, c]
            if f == 0:
                continue
            f = p - f
            for j in range(c, n):
                if A[r, j] != 0:
                    A[i, j] = (A[i, j] + f * A[r, j]) % p
        pivots.append(c)
        r += 1
    return pivots
