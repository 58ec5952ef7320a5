"""Exact linear algebra mod p on small dense systems (numpy int64)."""

from __future__ import annotations

import numpy as np


def rref_mod(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p; returns (matrix, pivot columns)."""
    m = a.astype(np.int64, copy=True) % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        pr = None
        for i in range(r, rows):
            if m[i, c] % p:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = m[r] * inv % p
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        pivots.append(c)
        r += 1
    return m, pivots


def solve_affine_mod(
    a: np.ndarray, b: np.ndarray, p: int
) -> tuple[np.ndarray | None, list[np.ndarray]]:
    """All solutions of a x = b over F_p as (particular, kernel basis).

    Returns (None, basis) when the system is inconsistent; the kernel
    basis of a is returned either way.
    """
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    rows, cols = a.shape
    aug = np.concatenate([a, b.reshape(rows, 1)], axis=1)
    m, pivots = rref_mod(aug, p)
    if cols in pivots:
        particular = None
    else:
        particular = np.zeros(cols, dtype=np.int64)
        for r, c in enumerate(pivots):
            particular[c] = m[r, cols]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    piv_rows = {c: r for r, c in enumerate(pivots) if c < cols}
    for fc in free:
        v = np.zeros(cols, dtype=np.int64)
        v[fc] = 1
        for c, r in piv_rows.items():
            v[c] = (-int(m[r, fc])) % p
        basis.append(v)
    return particular, basis


def solve_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution of a x = b over F_p, or None."""
    particular, _ = solve_affine_mod(a, b, p)
    return particular
