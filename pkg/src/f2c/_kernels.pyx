# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_kernels_py``."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()

BACKEND = "cython"

from ._kernels_py import normalized_positions  # cheap, not worth compiling


cdef inline int64_t cmod(int64_t a, int64_t n) nogil:
    cdef int64_t r = a % n
    return r + n if r < 0 else r


cdef inline int64_t cgcd(int64_t a, int64_t b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef void cxgcd(int64_t a, int64_t b, int64_t* g, int64_t* s, int64_t* t) nogil:
    cdef int64_t x0 = 1, x1 = 0, y0 = 0, y1 = 1, q, tmp
    while b:
        q = a // b
        tmp = a - q * b
        a = b
        b = tmp
        tmp = x0 - q * x1
        x0 = x1
        x1 = tmp
        tmp = y0 - q * y1
        y0 = y1
        y1 = tmp
    g[0] = a
    s[0] = x0
    t[0] = y0


cdef int64_t modinv(int64_t a, int64_t n) nogil:
    cdef int64_t g, s, t
    cxgcd(cmod(a, n), n, &g, &s, &t)
    return cmod(s, n)


def coboundary(table, signs, values, int n, int64_t m):
    cdef const int64_t[:, ::1] T = np.ascontiguousarray(table, dtype=np.int64)
    cdef const int64_t[::1] S = np.ascontiguousarray(signs, dtype=np.int64)
    cdef const int64_t[::1] V = np.ascontiguousarray(values, dtype=np.int64).reshape(-1)
    cdef int64_t g = T.shape[0]
    cdef Py_ssize_t total, cell, j, i
    cdef int64_t acc, idx, p, stride
    if n == 0:
        return (np.asarray(S) * V[0] - V[0]) % m
    total = g ** (n + 1)
    out = np.empty(total, dtype=np.int64)
    cdef int64_t[::1] O = out
    cdef int64_t[32] dig
    for cell in range(total):
        idx = cell
        for j in range(n, -1, -1):
            dig[j] = idx % g
            idx //= g
        # face 0
        p = 0
        for j in range(1, n + 1):
            p = p * g + dig[j]
        acc = S[dig[0]] * V[p]
        for i in range(1, n + 1):
            p = 0
            for j in range(0, i - 1):
                p = p * g + dig[j]
            p = p * g + T[dig[i - 1], dig[i]]
            for j in range(i + 1, n + 1):
                p = p * g + dig[j]
            if i % 2:
                acc -= V[p]
            else:
                acc += V[p]
        p = 0
        for j in range(0, n):
            p = p * g + dig[j]
        if (n + 1) % 2 == 0:
            acc += V[p]
        else:
            acc -= V[p]
        O[cell] = cmod(acc, m)
    return out


def differential_matrix(table, signs, int64_t identity, int n):
    cdef const int64_t[:, ::1] T = np.ascontiguousarray(table, dtype=np.int64)
    cdef const int64_t[::1] S = np.ascontiguousarray(signs, dtype=np.int64)
    cdef int64_t g = T.shape[0]
    cdef int64_t k = g - 1
    cdef Py_ssize_t rows = k ** (n + 1)
    cdef Py_ssize_t cols = k ** n if n > 0 else 1
    mat = np.zeros((rows, cols), dtype=np.int64)
    if rows == 0:
        return mat
    cdef int64_t[:, ::1] M = mat
    nid_np = np.array([x for x in range(g) if x != identity], dtype=np.int64)
    pos_np = np.full(g, -1, dtype=np.int64)
    pos_np[nid_np] = np.arange(k)
    cdef int64_t[::1] nid = nid_np
    cdef int64_t[::1] pos = pos_np
    cdef int64_t[32] el
    cdef Py_ssize_t row, j, i
    cdef int64_t idx, p, q
    cdef bint ok
    if n == 0:
        for row in range(rows):
            M[row, 0] = S[nid[row]] - 1
        return mat
    for row in range(rows):
        idx = row
        for j in range(n, -1, -1):
            el[j] = nid[idx % k]
            idx //= k
        p = 0
        ok = True
        for j in range(1, n + 1):
            q = pos[el[j]]
            p = p * k + q
        M[row, p] += S[el[0]]
        for i in range(1, n + 1):
            p = 0
            ok = True
            for j in range(0, i - 1):
                p = p * k + pos[el[j]]
            q = pos[T[el[i - 1], el[i]]]
            if q < 0:
                continue
            p = p * k + q
            for j in range(i + 1, n + 1):
                p = p * k + pos[el[j]]
            if i % 2:
                M[row, p] -= 1
            else:
                M[row, p] += 1
        p = 0
        for j in range(0, n):
            p = p * k + pos[el[j]]
        if (n + 1) % 2 == 0:
            M[row, p] += 1
        else:
            M[row, p] -= 1
    return mat


cdef int64_t cdivide(int64_t a, int64_t p, int64_t N) nogil:
    cdef int64_t g = cgcd(p, N)
    cdef int64_t sub = N // g
    if sub == 1:
        return 0
    return cmod((a // g) % sub * modinv((p // g) % sub, sub), sub)


def snf_mod(a, modulus, want_p=True, want_q=True):
    cdef int64_t N = modulus
    A_np = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % N)
    cdef int64_t[:, ::1] A = A_np
    cdef Py_ssize_t r = A.shape[0], c = A.shape[1]
    P_np = np.eye(r, dtype=np.int64) if want_p else np.zeros((0, 0), dtype=np.int64)
    Q_np = np.eye(c, dtype=np.int64) if want_q else np.zeros((0, 0), dtype=np.int64)
    Qi_np = np.eye(c, dtype=np.int64) if want_q else np.zeros((0, 0), dtype=np.int64)
    cdef int64_t[:, ::1] P = P_np
    cdef int64_t[:, ::1] Q = Q_np
    cdef int64_t[:, ::1] Qi = Qi_np
    cdef bint hp = want_p, hq = want_q
    diag = []
    if N == 1:
        return (np.array(diag, dtype=np.int64), P_np if hp else None,
                Q_np if hq else None, Qi_np if hq else None)
    cdef Py_ssize_t k = 0, i, j, bi, bj, x, y, lim = min(r, c)
    cdef int64_t best, gg, p, q, g, s, t, u, v, e1, e2, val
    cdef bint found, changed
    while k < lim:
        # pivot search: unit in column k, else minimal gcd in the block
        bi = -1
        for i in range(k, r):
            if A[i, k] != 0 and cgcd(A[i, k], N) == 1:
                bi = i
                bj = k
                break
        if bi < 0:
            best = N
            for i in range(k, r):
                for j in range(k, c):
                    if A[i, j] != 0:
                        gg = cgcd(A[i, j], N)
                        if gg < best:
                            best = gg
                            bi = i
                            bj = j
            if bi < 0:
                break
        if bi != k:
            for x in range(c):
                A[k, x], A[bi, x] = A[bi, x], A[k, x]
            if hp:
                for x in range(r):
                    P[k, x], P[bi, x] = P[bi, x], P[k, x]
        if bj != k:
            for x in range(r):
                A[x, k], A[x, bj] = A[x, bj], A[x, k]
            if hq:
                for x in range(c):
                    Q[x, k], Q[x, bj] = Q[x, bj], Q[x, k]
                    Qi[k, x], Qi[bj, x] = Qi[bj, x], Qi[k, x]
        while True:
            g = cgcd(A[k, k], N)
            changed = False
            if g != 1:
                for i in range(k + 1, r):
                    if A[i, k] % g:
                        p = A[k, k]
                        val = A[i, k]
                        cxgcd(p, val, &gg, &s, &t)
                        u = -val // gg
                        v = p // gg
                        for x in range(c):
                            e1 = A[k, x]
                            e2 = A[i, x]
                            A[k, x] = cmod(s * e1 + t * e2, N)
                            A[i, x] = cmod(u * e1 + v * e2, N)
                        if hp:
                            for x in range(r):
                                e1 = P[k, x]
                                e2 = P[i, x]
                                P[k, x] = cmod(s * e1 + t * e2, N)
                                P[i, x] = cmod(u * e1 + v * e2, N)
                        changed = True
                        break
                if changed:
                    continue
                for j in range(k + 1, c):
                    if A[k, j] % g:
                        p = A[k, k]
                        val = A[k, j]
                        cxgcd(p, val, &gg, &s, &t)
                        u = -val // gg
                        v = p // gg
                        for x in range(r):
                            e1 = A[x, k]
                            e2 = A[x, j]
                            A[x, k] = cmod(s * e1 + t * e2, N)
                            A[x, j] = cmod(u * e1 + v * e2, N)
                        if hq:
                            for x in range(c):
                                e1 = Q[x, k]
                                e2 = Q[x, j]
                                Q[x, k] = cmod(s * e1 + t * e2, N)
                                Q[x, j] = cmod(u * e1 + v * e2, N)
                                e1 = Qi[k, x]
                                e2 = Qi[j, x]
                                Qi[k, x] = cmod(v * e1 + (val // gg) * e2, N)
                                Qi[j, x] = cmod(-t * e1 + s * e2, N)
                        changed = True
                        break
                if changed:
                    continue
            p = A[k, k]
            for i in range(k + 1, r):
                if A[i, k] != 0:
                    q = cdivide(A[i, k], p, N)
                    for x in range(k, c):
                        if A[k, x] != 0:
                            A[i, x] = cmod(A[i, x] - q * A[k, x], N)
                    if hp:
                        for x in range(r):
                            if P[k, x] != 0:
                                P[i, x] = cmod(P[i, x] - q * P[k, x], N)
            for j in range(k + 1, c):
                if A[k, j] != 0:
                    q = cdivide(A[k, j], p, N)
                    A[k, j] = 0
                    if hq:
                        for x in range(c):
                            if Q[x, k] != 0:
                                Q[x, j] = cmod(Q[x, j] - q * Q[x, k], N)
                            if Qi[j, x] != 0:
                                Qi[k, x] = cmod(Qi[k, x] + q * Qi[j, x], N)
            if g != 1:
                found = False
                for i in range(k + 1, r):
                    for j in range(k + 1, c):
                        if A[i, j] % g:
                            found = True
                            break
                    if found:
                        break
                if found:
                    for x in range(c):
                        A[k, x] = cmod(A[k, x] + A[i, x], N)
                    if hp:
                        for x in range(r):
                            P[k, x] = cmod(P[k, x] + P[i, x], N)
                    continue
            break
        diag.append(A[k, k])
        k += 1
    return (np.array(diag, dtype=np.int64), P_np if hp else None,
            Q_np if hq else None, Qi_np if hq else None)
