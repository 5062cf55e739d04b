"""Pure numpy implementations of the hot kernels.

Same signatures as the compiled ``_kernels`` module; :mod:`f2c.kernels`
picks one at import time.
"""
from __future__ import annotations

import numpy as np

BACKEND = "python"


def _flat(digits, order):
    idx = np.zeros(digits[0].shape if len(digits) else (), dtype=np.int64)
    for d in digits:
        idx = idx * order + d
    return idx


def coboundary(table, signs, values, n, m):
    """Inhomogeneous bar differential of a full cochain (flat, lex order)."""
    table = np.asarray(table, dtype=np.int64)
    signs = np.asarray(signs, dtype=np.int64)
    values = np.asarray(values, dtype=np.int64).reshape(-1)
    g = table.shape[0]
    if n == 0:
        return (signs * values[0] - values[0]) % m
    idx = np.indices((g,) * (n + 1), dtype=np.int64).reshape(n + 1, -1)
    res = signs[idx[0]] * values[_flat(idx[1:], g)]
    for i in range(1, n + 1):
        merged = table[idx[i - 1], idx[i]]
        digits = list(idx[: i - 1]) + [merged] + list(idx[i + 1:])
        term = values[_flat(digits, g)]
        res = res - term if i % 2 else res + term
    last = values[_flat(idx[:n], g)]
    res = res + last if (n + 1) % 2 == 0 else res - last
    return res % m


def normalized_positions(order, identity, n):
    """Flat full-array indices of the normalized basis cells (lex order)."""
    nid = np.array([x for x in range(order) if x != identity], dtype=np.int64)
    if n == 0:
        return np.zeros(1, dtype=np.int64)
    if len(nid) == 0:
        return np.zeros(0, dtype=np.int64)
    digits = np.indices((len(nid),) * n, dtype=np.int64).reshape(n, -1)
    return _flat([nid[d] for d in digits], order)


def differential_matrix(table, signs, identity, n):
    """Matrix of ``d: C^n -> C^{n+1}`` on normalized cochains (dense int64)."""
    table = np.asarray(table, dtype=np.int64)
    signs = np.asarray(signs, dtype=np.int64)
    g = table.shape[0]
    k = g - 1
    nid = np.array([x for x in range(g) if x != identity], dtype=np.int64)
    pos = np.full(g, -1, dtype=np.int64)
    pos[nid] = np.arange(k)
    rows = k ** (n + 1)
    cols = k ** n if n > 0 else 1
    mat = np.zeros((rows, cols), dtype=np.int64)
    if rows == 0:
        return mat
    if n == 0:
        mat[:, 0] = signs[nid] - 1
        return mat
    digits = np.indices((k,) * (n + 1), dtype=np.int64).reshape(n + 1, -1)
    elems = nid[digits]
    row_ids = np.arange(rows)

    def add(face_elems, coef):
        p = pos[np.stack(face_elems)]
        ok = (p >= 0).all(axis=0)
        col = _flat(list(p[:, ok]), k)
        np.add.at(mat, (row_ids[ok], col), coef[ok] if np.ndim(coef) else coef)

    add(list(elems[1:]), signs[elems[0]])
    for i in range(1, n + 1):
        merged = table[elems[i - 1], elems[i]]
        add(list(elems[: i - 1]) + [merged] + list(elems[i + 1:]), -1 if i % 2 else 1)
    add(list(elems[:n]), 1 if (n + 1) % 2 == 0 else -1)
    return mat


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _divide(a, p, modulus):
    """Some ``q`` with ``q*p = a`` mod ``modulus`` (vectorised over ``a``)."""
    g = int(np.gcd(int(p), modulus))
    sub = modulus // g
    if sub == 1:
        return np.zeros_like(a)
    inv = pow(int(p) // g % sub, -1, sub)
    return ((a // g) % sub) * inv % sub


def snf_mod(a, modulus, want_p=True, want_q=True):
    """Diagonalise ``a`` over Z/modulus.

    Returns ``(diag, P, Q, Qinv)`` with ``P @ a @ Q = D`` mod ``modulus``,
    ``D[i, i] = diag[i]`` for ``i < len(diag)`` and zero elsewhere.  ``P`` is
    ``None`` unless ``want_p``; ``Q, Qinv`` are ``None`` unless ``want_q``.
    """
    N = int(modulus)
    A = np.array(a, dtype=np.int64) % N
    r, c = A.shape
    P = np.eye(r, dtype=np.int64) if want_p else None
    Q = np.eye(c, dtype=np.int64) if want_q else None
    Qi = np.eye(c, dtype=np.int64) if want_q else None
    diag = []
    if N == 1:
        return np.array(diag, dtype=np.int64), P, Q, Qi

    def swap_rows(i, j):
        if i != j:
            A[[i, j]] = A[[j, i]]
            if P is not None:
                P[[i, j]] = P[[j, i]]

    def swap_cols(i, j):
        if i != j:
            A[:, [i, j]] = A[:, [j, i]]
            if Q is not None:
                Q[:, [i, j]] = Q[:, [j, i]]
                Qi[[i, j]] = Qi[[j, i]]

    def row_gcd(k, i):
        p, x = int(A[k, k]), int(A[i, k])
        g, s, t = _xgcd(p, x)
        u, v = -x // g, p // g
        for M in (A, P):
            if M is None:
                continue
            rk, ri = M[k].copy(), M[i].copy()
            M[k] = (s * rk + t * ri) % N
            M[i] = (u * rk + v * ri) % N

    def col_gcd(k, j):
        p, x = int(A[k, k]), int(A[k, j])
        g, s, t = _xgcd(p, x)
        u, v = -x // g, p // g
        ck, cj = A[:, k].copy(), A[:, j].copy()
        A[:, k] = (s * ck + t * cj) % N
        A[:, j] = (u * ck + v * cj) % N
        if Q is not None:
            ck, cj = Q[:, k].copy(), Q[:, j].copy()
            Q[:, k] = (s * ck + t * cj) % N
            Q[:, j] = (u * ck + v * cj) % N
            rk, rj = Qi[k].copy(), Qi[j].copy()
            Qi[k] = (v * rk + (x // g) * rj) % N
            Qi[j] = (-t * rk + s * rj) % N

    k = 0
    while k < min(r, c):
        sub = A[k:, k:]
        if not sub.any():
            break
        col = A[k:, k]
        units = np.nonzero(np.gcd(col, N) == 1)[0]
        if units.size:
            i, j = k + int(units[0]), k
        else:
            G = np.gcd(sub, N)
            G[sub == 0] = N
            i, j = np.unravel_index(int(np.argmin(G)), G.shape)
            i, j = int(i) + k, int(j) + k
        swap_rows(k, i)
        swap_cols(k, j)
        while True:
            g = int(np.gcd(int(A[k, k]), N))
            if g != 1:
                colk = A[k + 1:, k]
                bad = np.nonzero(colk % g)[0]
                if bad.size:
                    row_gcd(k, k + 1 + int(bad[0]))
                    continue
                rowk = A[k, k + 1:]
                bad = np.nonzero(rowk % g)[0]
                if bad.size:
                    col_gcd(k, k + 1 + int(bad[0]))
                    continue
            p = int(A[k, k])
            rows = np.nonzero(A[k + 1:, k])[0] + k + 1
            if rows.size:
                q = _divide(A[rows, k], p, N)
                A[rows, k:] = (A[rows, k:] - q[:, None] * A[k, k:]) % N
                if P is not None:
                    P[rows] = (P[rows] - q[:, None] * P[k]) % N
            cols = np.nonzero(A[k, k + 1:])[0] + k + 1
            if cols.size:
                qc = _divide(A[k, cols], p, N)
                A[k, cols] = 0
                if Q is not None:
                    Q[:, cols] = (Q[:, cols] - Q[:, [k]] * qc[None, :]) % N
                    Qi[k] = (Qi[k] + qc @ Qi[cols]) % N
            if g != 1:
                rest = A[k + 1:, k + 1:]
                bad = np.argwhere(rest % g)
                if len(bad):
                    rr = k + 1 + int(bad[0][0])
                    A[k] = (A[k] + A[rr]) % N
                    if P is not None:
                        P[k] = (P[k] + P[rr]) % N
                    continue
            break
        diag.append(int(A[k, k]))
        k += 1
    return np.array(diag, dtype=np.int64), P, Q, Qi
