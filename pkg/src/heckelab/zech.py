"""Zech-logarithm tables for small extension fields.

For q = p^k up to a few million, the whole multiplicative group is
tabulated against a generator g: elements are exponents (ints in
[0, q-1)), with -1 as the zero sentinel.  Multiplication becomes index
addition and field addition one table lookup, which makes elliptic
curve group operations cheap enough for per-point work on census-sized
fields.  Tables are built per tower level with vectorized numpy passes.
"""

from __future__ import annotations

import random

import numpy as np

from .errors import BudgetExceeded
from .fastpoly import FieldKernel, _mulmat_np
from .integers import Factorization

ZERO = -1


class CyclicTable:
    """Discrete-log arithmetic for one field level."""

    def __init__(self, kernel: FieldKernel, qm1_factors: Factorization,
                 rng: random.Random, limit: int = 4 * 10**6):
        p, k = kernel.p, kernel.k
        q = p**k
        if q > limit:
            raise BudgetExceeded(f"field of size {q} exceeds table limit {limit}")
        if not qm1_factors.complete or qm1_factors.n != q - 1:
            raise ValueError("need a complete factorization of q - 1")
        self.kernel = kernel
        self.p = p
        self.k = k
        self.q = q
        self.order = q - 1
        g = self._find_generator(qm1_factors, rng)
        self.gen = g
        self._build_tables(g)

    def _find_generator(self, fact: Factorization, rng: random.Random):
        kern = self.kernel
        primes = fact.primes()
        n = self.order
        while True:
            cand = tuple(rng.randrange(self.p) for _ in range(self.k))
            if not any(cand):
                continue
            if all(kern.pow(cand, n // l) != kern.one for l in primes):
                return cand

    def _build_tables(self, g):
        kern = self.kernel
        p, k, q = self.p, self.k, self.q
        n = self.order
        block = 1 << 10
        baby = np.zeros((min(block, n), k), dtype=np.int64)
        cur = kern.one
        for i in range(min(block, n)):
            baby[i] = cur
            cur = kern.mul(cur, g)
        rows = [baby]
        total = baby.shape[0]
        # cur == g^block here; multiply whole blocks by fixed powers of g
        step = cur
        while total < n:
            mstep = _mulmat_np(kern, step)
            nxt = rows[-1] @ mstep % p
            take = min(block, n - total)
            rows.append(nxt[:take])
            total += take
        expm = np.concatenate(rows, axis=0)[:n]
        pows = p ** np.arange(k, dtype=np.int64)
        packed = expm @ pows
        self.exp_packed = packed
        self.exp_coeffs = expm.astype(np.int16)
        log = np.full(q, ZERO, dtype=np.int64)
        log[packed] = np.arange(n, dtype=np.int64)
        self.log = log
        # zech[t] = log(1 + g^t); adding one only changes the low digit
        low = packed % p
        shifted = packed - low + (low + 1) % p
        self.zech = log[shifted]
        assert int(np.count_nonzero(self.zech == ZERO)) == 1

    # --- scalar ops on log indices (ZERO = -1 is the zero element) ---

    def from_coeffs(self, coeffs) -> int:
        idx = 0
        for c in reversed(coeffs):
            idx = idx * self.p + int(c)
        return int(self.log[idx]) if idx else ZERO

    def to_coeffs(self, a: int) -> tuple[int, ...]:
        if a == ZERO:
            return self.kernel.zero
        return tuple(int(c) for c in self.exp_coeffs[a])

    def one(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        if a == ZERO or b == ZERO:
            return ZERO
        return (a + b) % self.order

    def inv(self, a: int) -> int:
        if a == ZERO:
            raise ZeroDivisionError("zero has no inverse")
        return (-a) % self.order

    def pow(self, a: int, e: int) -> int:
        if a == ZERO:
            if e == 0:
                return 0
            return ZERO
        return (a * e) % self.order

    def neg(self, a: int) -> int:
        if a == ZERO:
            return ZERO
        return (a + self.order // 2) % self.order

    def add(self, a: int, b: int) -> int:
        if a == ZERO:
            return b
        if b == ZERO:
            return a
        z = self.zech[(b - a) % self.order]
        if z == ZERO:
            return ZERO
        return (a + int(z)) % self.order

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def frob(self, a: int, times: int = 1) -> int:
        if a == ZERO:
            return ZERO
        return a * pow(self.p, times, self.order) % self.order

    def is_square(self, a: int) -> bool:
        return a == ZERO or a % 2 == 0

    def sqrt(self, a: int) -> int:
        """One square root; the other is its negative."""
        if a == ZERO:
            return ZERO
        if a % 2:
            raise ValueError("not a square")
        return a // 2

    # --- vector ops (numpy arrays of log indices) ---

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = np.where(a == ZERO, b, a)
        both = (a != ZERO) & (b != ZERO)
        if np.any(both):
            d = (b[both] - a[both]) % self.order
            z = self.zech[d]
            res = (a[both] + z) % self.order
            res[z == ZERO] = ZERO
            out[both] = res
        return out

    def vmul_const(self, a: np.ndarray, c: int) -> np.ndarray:
        if c == ZERO:
            return np.full_like(a, ZERO)
        out = (a + c) % self.order
        out[a == ZERO] = ZERO
        return out
