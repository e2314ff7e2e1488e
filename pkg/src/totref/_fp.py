"""Dense linear algebra over the prime field F_p, vectorized with numpy.

Graded computations reduce every question to finite dimensional slices, and
those slices land here.  All matrices are int64 arrays with entries in
[0, p).  Pivoting is deterministic (first nonzero in column order), so
kernels, solutions and quotient bases are reproducible.
"""

from __future__ import annotations

import numpy as np


def asmat(a) -> np.ndarray:
    m = np.asarray(a, dtype=np.int64)
    if m.ndim != 2:
        raise ValueError("expected a 2d array")
    return m


def zeros(m: int, n: int) -> np.ndarray:
    return np.zeros((m, n), dtype=np.int64)


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot column list."""
    m = a.copy() % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        m -= np.outer(col, m[r])
        m %= p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """Particular solution X of A X = B with free variables pinned to 0."""
    a = a % p
    b = b % p
    m, n = a.shape
    if b.shape[0] != m:
        raise ValueError("shape mismatch")
    aug = np.concatenate([a, b], axis=1)
    red, pivots = rref(aug, p)
    for c in pivots:
        if c >= n:
            return None
    x = zeros(n, b.shape[1])
    for i, c in enumerate(pivots):
        x[c] = red[i, n:]
    return x


def kernel(a: np.ndarray, p: int) -> np.ndarray:
    """Columns form a basis of the right kernel."""
    a = a % p
    m, n = a.shape
    if n == 0:
        return zeros(0, 0)
    red, pivots = rref(a, p)
    free = [c for c in range(n) if c not in pivots]
    basis = zeros(n, len(free))
    for j, c in enumerate(free):
        basis[c, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = (-red[i, c]) % p
    return basis


def extend_independent(span: np.ndarray | None, cand: np.ndarray, p: int) -> list[int]:
    """Indices of candidate columns that enlarge the span, greedily.

    ``span`` may be None or empty.  Always processes candidates left to
    right, so the result is deterministic.  A fully reduced basis is kept
    incrementally, so each candidate costs one matrix-vector product.
    """
    cand = asmat(cand) % p
    rows = cand.shape[0]
    basis = zeros(rows, 0)
    pivot_rows: list[int] = []

    def absorb(vec: np.ndarray) -> bool:
        nonlocal basis
        v = vec % p
        if pivot_rows:
            v = (v - basis @ v[pivot_rows]) % p
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        pr = int(nz[0])
        v = (v * pow(int(v[pr]), p - 2, p)) % p
        if pivot_rows:
            basis = (basis - np.outer(v, basis[pr])) % p
        basis = np.concatenate([basis, v[:, None]], axis=1)
        pivot_rows.append(pr)
        return True

    if span is not None and span.size:
        for j in range(span.shape[1]):
            absorb(span[:, j])
    picked: list[int] = []
    for j in range(cand.shape[1]):
        if absorb(cand[:, j]):
            picked.append(j)
    return picked
