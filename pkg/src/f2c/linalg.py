"""Linear algebra over Z/N for normalized bar cochains.

Differential matrices and their Smith forms are cached per
``(group, action signs, degree, modulus)``; every consumer (cohomology
groups, coboundary witnesses, supercohomology transports) goes through
:func:`snf` and :func:`solve` so repeated work is shared.
"""
from __future__ import annotations

import threading
from math import gcd

import numpy as np

from . import kernels
from .errors import EnumerationLimitExceeded
from .groups import FiniteGroup, limits

_lock = threading.Lock()
_dmat_cache: dict = {}
_snf_cache: dict = {}


def clear_caches():
    with _lock:
        _dmat_cache.clear()
        _snf_cache.clear()


def cochain_dim(group: FiniteGroup, n: int) -> int:
    """Number of normalized cells in degree ``n`` (0 for ``n < 0``)."""
    if n < 0:
        return 0
    return (group.order - 1) ** n


def check_cells(group: FiniteGroup, n: int):
    """Refuse a differential ``C^n -> C^{n+1}`` whose matrix exceeds the cap."""
    cells = cochain_dim(group, n + 1)
    if cells > limits.max_cochain_cells:
        raise EnumerationLimitExceeded(
            f"degree {n + 1} normalized cochains on {group.name} have {cells} cells",
            cells=cells, cap=limits.max_cochain_cells,
        )


def dmatrix(group: FiniteGroup, signs: tuple[int, ...], n: int) -> np.ndarray:
    """Integer matrix of ``d: C^n -> C^{n+1}`` on normalized cells."""
    if n < 0:
        return np.zeros((cochain_dim(group, 0), 0), dtype=np.int64)
    key = (group, signs, n)
    with _lock:
        hit = _dmat_cache.get(key)
    if hit is not None:
        return hit
    check_cells(group, n)
    mat = kernels.differential_matrix(
        group.table, np.asarray(signs, dtype=np.int64), group.identity, n
    )
    mat.setflags(write=False)
    with _lock:
        _dmat_cache[key] = mat
    return mat


class SNF:
    """Smith form ``P A Q = D`` of a differential matrix over Z/N."""

    __slots__ = ("modulus", "diag", "P", "Q", "Qinv", "shape")

    def __init__(self, modulus, diag, P, Q, Qinv, shape):
        self.modulus = modulus
        self.diag = diag
        self.P = P
        self.Q = Q
        self.Qinv = Qinv
        self.shape = shape

    def row_moduli(self) -> np.ndarray:
        """``gcd(D_i, N)`` per row, ``N`` for rows past the diagonal."""
        out = np.full(self.shape[0], self.modulus, dtype=np.int64)
        if len(self.diag):
            out[: len(self.diag)] = np.gcd(self.diag, self.modulus)
        return out


def snf(group: FiniteGroup, signs: tuple[int, ...], n: int, modulus: int,
        want_p: bool = True, want_q: bool = True) -> SNF:
    key = (group, signs, n, int(modulus))
    with _lock:
        hit = _snf_cache.get(key)
    if hit is not None and (hit.P is not None or not want_p) and (hit.Q is not None or not want_q):
        return hit
    a = dmatrix(group, signs, n)
    diag, P, Q, Qi = kernels.snf_mod(a, int(modulus), want_p, want_q)
    for arr in (diag, P, Q, Qi):
        if arr is not None:
            arr.setflags(write=False)
    res = SNF(int(modulus), diag, P, Q, Qi, a.shape)
    with _lock:
        prev = _snf_cache.get(key)
        covers = prev is None or (
            (res.P is not None or prev.P is None) and (res.Q is not None or prev.Q is None)
        )
        if covers:
            _snf_cache[key] = res
    return res


def matmul_mod(a: np.ndarray, b: np.ndarray, modulus: int) -> np.ndarray:
    """``a @ b mod modulus`` for int64 inputs already reduced mod ``modulus``.

    Goes through float64 BLAS when every partial sum stays below 2**53, which
    is the common case here; falls back to object arithmetic otherwise.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    inner = a.shape[-1] if a.ndim else 1
    if inner == 0:
        shape = a.shape[:-1] + b.shape[1:]
        return np.zeros(shape, dtype=np.int64)
    if inner * (modulus - 1) ** 2 < 2 ** 53:
        out = np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
        return out % modulus
    return (a.astype(object) @ b.astype(object) % modulus).astype(np.int64)


def solve(group: FiniteGroup, signs: tuple[int, ...], n: int, rhs: np.ndarray,
          modulus: int) -> np.ndarray | None:
    """A solution ``x`` of ``D_n x = rhs`` over Z/modulus, or ``None``.

    Free coordinates in the Smith basis are set to zero, so the answer is a
    fixed linear function of ``rhs`` whenever one exists.
    """
    N = int(modulus)
    rhs = np.asarray(rhs, dtype=np.int64) % N
    cols = cochain_dim(group, n)
    if n < 0:
        return np.zeros(0, dtype=np.int64) if not rhs.any() else None
    if not rhs.any():
        return np.zeros(cols, dtype=np.int64)
    f = snf(group, signs, n, N)
    b = matmul_mod(f.P, rhs, N)
    r = len(f.diag)
    if b[r:].any():
        return None
    y = np.zeros(cols, dtype=np.int64)
    for i in range(r):
        p = int(f.diag[i])
        g = gcd(p, N)
        bi = int(b[i])
        if bi % g:
            return None
        sub = N // g
        if sub > 1:
            y[i] = (bi // g) * pow(p // g % sub, -1, sub) % sub
    return matmul_mod(f.Q, y, N)


def kernel_basis(group: FiniteGroup, signs: tuple[int, ...], n: int, modulus: int) -> np.ndarray:
    """Columns generating ``ker(D_n mod modulus)`` (possibly redundant orders)."""
    N = int(modulus)
    cols = cochain_dim(group, n)
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    f = snf(group, signs, n, N, want_p=False)
    scale = np.ones(cols, dtype=np.int64)
    r = len(f.diag)
    if r:
        scale[:r] = N // np.gcd(f.diag, N)
    keep = np.nonzero(scale % N)[0]
    return (np.asarray(f.Q)[:, keep] * scale[keep][None, :]) % N


def divide(a: int, p: int, modulus: int) -> int:
    """Some ``q`` with ``q*p = a`` mod ``modulus``; caller guarantees existence."""
    g = gcd(p, modulus)
    sub = modulus // g
    if sub == 1:
        return 0
    return (a // g) * pow(p // g % sub, -1, sub) % sub


def rref_mod2(rows: np.ndarray):
    """Reduced row echelon form over F2.

    Returns ``(R, pivots, combo)`` where ``R = combo @ rows`` (mod 2), ``R``
    keeps only the nonzero rows, and ``pivots`` lists their leading columns.
    """
    A = np.array(rows, dtype=np.int64) % 2
    if A.ndim == 1:
        A = A[None, :]
    m, n = A.shape
    combo = np.eye(m, dtype=np.int64)
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
            combo[[r, i]] = combo[[i, r]]
        for j in range(m):
            if j != r and A[j, c]:
                A[j] ^= A[r]
                combo[j] ^= combo[r]
        pivots.append(c)
        r += 1
    return A[:r], pivots, combo[:r]


def reduce_mod2(vec: np.ndarray, R: np.ndarray, pivots) -> tuple[np.ndarray, np.ndarray]:
    """Reduce ``vec`` against an RREF basis; returns ``(remainder, used_rows)``."""
    v = np.array(vec, dtype=np.int64) % 2
    used = np.zeros(len(pivots), dtype=np.int64)
    for k, c in enumerate(pivots):
        if v[c]:
            v ^= R[k]
            used[k] = 1
    return v, used
