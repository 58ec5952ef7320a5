#!/usr/bin/env python3
"""Generate the classical modular polynomial data files.

For each prime level l in the shipped set, Phi_l(X, Y) is built from
q-expansions: the power sums of the l+1 conjugate functions j(l tau),
j((tau+b)/l) are integer q-series (the roots of unity cancel), Newton's
identities give the elementary symmetric functions, and each of those
is reduced to a polynomial in j by repeatedly subtracting powers of the
j-series until the pole is gone.

Everything is exact integer arithmetic.  The output is validated by
symmetry, the Kronecker congruence Phi_l(x, y) = (x^l - y)(x - y^l)
mod l, and a literal check of Phi_2 against its textbook coefficients.

Run from the repository root:  python3 tools/gen_modular_polys.py
"""

from __future__ import annotations

import os
import sys

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "src", "heckelab", "data")
LEVELS = [2, 3, 5, 7, 11, 13]

PHI2_KNOWN = {
    (3, 0): 1,
    (2, 2): -1,
    (2, 1): 1488,
    (2, 0): -162000,
    (1, 1): 40773375,
    (1, 0): 8748000000,
    (0, 0): -157464000000000,
}


class Laurent:
    """Integer Laurent series on a fixed exponent window [lo, hi]."""

    __slots__ = ("lo", "hi", "c")

    def __init__(self, lo: int, hi: int, coeffs=None):
        self.lo = lo
        self.hi = hi
        self.c = list(coeffs) if coeffs is not None else [0] * (hi - lo + 1)

    def __getitem__(self, e: int) -> int:
        if e < self.lo or e > self.hi:
            return 0
        return self.c[e - self.lo]

    def __setitem__(self, e: int, v: int):
        self.c[e - self.lo] = v

    def copy(self):
        return Laurent(self.lo, self.hi, self.c)

    def add_scaled(self, other: "Laurent", scale: int):
        for e in range(max(self.lo, other.lo), min(self.hi, other.hi) + 1):
            self.c[e - self.lo] += scale * other.c[e - other.lo]

    def mul(self, other: "Laurent", lo: int, hi: int) -> "Laurent":
        out = Laurent(lo, hi)
        oc = out.c
        for i, a in enumerate(self.c):
            if not a:
                continue
            ea = self.lo + i
            jlo = max(other.lo, lo - ea)
            jhi = min(other.hi, hi - ea)
            base = ea - lo
            for j in range(jlo - other.lo, jhi - other.lo + 1):
                b = other.c[j]
                if b:
                    oc[base + j + other.lo] += a * b
        return out

    def pole_order(self) -> int:
        for e in range(self.lo, min(self.hi, -1) + 1):
            if self.c[e - self.lo]:
                return -e if e < 0 else 0
        return 0

    def is_zero_above(self, e0: int) -> bool:
        return all(self[e] == 0 for e in range(max(e0, self.lo), self.hi + 1))


def j_series(n_terms: int) -> list[int]:
    """Coefficients of j: entry m is the coefficient of q^(m-1)."""
    n = n_terms + 2
    # unit = prod (1 - q^k)^24 mod q^n
    prod = [0] * n
    prod[0] = 1
    for k in range(1, n):
        # multiply by (1 - q^k)
        for e in range(n - 1, k - 1, -1):
            prod[e] -= prod[e - k]
    unit = [0] * n
    unit[0] = 1
    for _ in range(24):
        unit = _mul_trunc(unit, prod, n)
    inv = _series_inv(unit, n)
    e4 = [1] + [240 * _sigma3(m) for m in range(1, n)]
    e43 = _mul_trunc(_mul_trunc(e4, e4, n), e4, n)
    out = _mul_trunc(e43, inv, n)
    expect = [1, 744, 196884, 21493760, 864299970]
    assert out[: len(expect)] == expect, "j-series self-check failed"
    return out[:n_terms]


def _sigma3(m: int) -> int:
    s = 0
    for d in range(1, m + 1):
        if m % d == 0:
            s += d * d * d
    return s


def _mul_trunc(a, b, n):
    out = [0] * n
    for i, x in enumerate(a):
        if not x or i >= n:
            continue
        for j, y in enumerate(b):
            if i + j >= n:
                break
            if y:
                out[i + j] += x * y
    return out


def _series_inv(a, n):
    assert a[0] in (1, -1)
    inv = [a[0]] + [0] * (n - 1)
    for m in range(1, n):
        s = 0
        for k in range(1, m + 1):
            if k < len(a) and a[k]:
                s += a[k] * inv[m - k]
        inv[m] = -a[0] * s
    return inv


def build_phi(ell: int) -> dict[tuple[int, int], int]:
    """Phi_ell as a monomial dict, via two-stage power sums.

    The ell conjugates j((tau+b)/ell) alone have shallow q-poles (their
    symmetric functions e'_i have pole <= ceil(i/ell)), so Newton's
    identities run on narrow Laurent windows.  The deep-pole factor
    (X - j(ell tau)) is multiplied in afterwards.
    """
    psi = ell + 1
    guard = 2
    # window for the prime-level symmetric functions and power sums
    e_lo = -(psi + 3)
    e_hi = guard + ell + 2 * psi + 6
    # window for powers of j (read at u-exponents up to ell * e_hi)
    j_lo = -(psi + 1)
    j_hi = ell * e_hi + 2
    jn = j_series(j_hi + 6)

    jq = Laurent(j_lo, j_hi)
    for m, c in enumerate(jn):
        e = m - 1
        if j_lo <= e <= j_hi:
            jq[e] = c
    jpow = [None, jq]
    for r in range(2, psi + 1):
        jpow.append(jpow[-1].mul(jq, j_lo, j_hi))

    # P'_r = sum_b j((tau+b)/ell)^r: keep u-exponents divisible by ell
    psums = [None]
    for r in range(1, ell + 1):
        pr = Laurent(e_lo, e_hi)
        jr = jpow[r]
        for e in range(e_lo, e_hi + 1):
            pr[e] = ell * jr[e * ell]
        psums.append(pr)

    # Newton: i e'_i = sum_{r=1..i} (-1)^(r-1) e'_{i-r} P'_r
    # Each level consumes one exponent of headroom (P' poles are <= 1),
    # so entries above e_hi - i are truncation noise and get zeroed.
    eprime = [Laurent(e_lo, e_hi)]
    eprime[0][0] = 1
    for i in range(1, ell + 1):
        acc = Laurent(e_lo, e_hi)
        for r in range(1, i + 1):
            term = eprime[i - r].mul(psums[r], e_lo, e_hi)
            acc.add_scaled(term, 1 if r % 2 == 1 else -1)
        valid_top = e_hi - i
        for idx, v in enumerate(acc.c):
            if e_lo + idx > valid_top:
                acc.c[idx] = 0
                continue
            quo, rem = divmod(v, i)
            assert rem == 0, "Newton identity produced a non-integer"
            acc.c[idx] = quo
        eprime.append(acc)

    # multiply in (X - f0), f0 = j(ell tau):  e_i = e'_i + f0 * e'_{i-1}
    f_lo = -(ell + psi + 3)
    f0 = Laurent(f_lo, e_hi)
    for m in range(f_lo, e_hi + 1):
        if m % ell == 0:
            f0[m] = jq[m // ell]
    es = [None]
    for i in range(1, psi + 1):
        acc = Laurent(f_lo, guard)
        if i <= ell:
            acc.add_scaled(eprime[i], 1)
        prev = eprime[i - 1]
        prod = f0.mul(prev, f_lo, guard)
        acc.add_scaled(prod, 1)
        es.append(acc)

    # reduce each e_i to a polynomial in j
    monomials: dict[tuple[int, int], int] = {(psi, 0): 1}
    for i in range(1, psi + 1):
        series = es[i].copy()
        sign = 1 if i % 2 == 0 else -1
        poly: dict[int, int] = {}
        d = series.pole_order()
        while d > 0:
            c = series[-d]
            if c:
                assert d <= psi, f"pole {d} exceeds psi for e_{i}"
                poly[d] = sign * c
                series.add_scaled(jpow[d], -c)
            d2 = series.pole_order()
            assert d2 < d, "pole reduction stalled"
            d = d2
        c0 = series[0]
        if c0:
            poly[0] = sign * c0
            series[0] = 0
        assert series.is_zero_above(1) and series[0] == 0, (
            f"e_{i} not a polynomial in j within precision"
        )
        for jdeg, coeff in poly.items():
            monomials[(psi - i, jdeg)] = coeff
    return {k: v for k, v in monomials.items() if v}


def validate(ell: int, mono: dict[tuple[int, int], int]):
    psi = ell + 1
    degs_x = max(a for a, _ in mono)
    degs_y = max(b for _, b in mono)
    assert degs_x == psi and degs_y == psi, (ell, degs_x, degs_y)
    for (a, b), c in mono.items():
        assert mono.get((b, a), 0) == c, f"asymmetry at {(a, b)} for l={ell}"
    assert mono.get((psi, psi), 0) == 0
    assert mono[(psi, 0)] == 1
    # Kronecker congruence: (x^l - y)(x - y^l) = x^{l+1} - x^l y^l - x y + y^{l+1}
    kron: dict[tuple[int, int], int] = {}
    kron[(ell + 1, 0)] = 1
    kron[(ell, ell)] = -1
    kron[(1, 1)] = -1
    kron[(0, ell + 1)] = 1
    keys = set(mono) | set(kron)
    for k in keys:
        assert (mono.get(k, 0) - kron.get(k, 0)) % ell == 0, (
            f"Kronecker congruence fails at {k} for l={ell}"
        )
    if ell == 2:
        sym = {}
        for (a, b), c in PHI2_KNOWN.items():
            sym[(a, b)] = c
            sym[(b, a)] = c
        assert mono == sym, "Phi_2 does not match its textbook value"


def write_file(ell: int, mono: dict[tuple[int, int], int]):
    path = os.path.join(OUT_DIR, f"phi{ell}.txt")
    lines = [f"# classical modular polynomial, level {ell}"]
    for (a, b), c in sorted(mono.items(), reverse=True):
        if a < b:
            continue  # symmetric halves stored once
        lines.append(f"{a} {b} {c}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {path} ({len(lines) - 1} monomials)")


def main():
    os.makedirs(OUT_DIR, exist_ok=True)
    # level 1: the diagonal x - y
    path = os.path.join(OUT_DIR, "phi1.txt")
    with open(path, "w") as fh:
        fh.write("# diagonal correspondence\n1 0 1\n0 1 -1\n")
    print(f"wrote {path}")
    for ell in LEVELS:
        mono = build_phi(ell)
        validate(ell, mono)
        write_file(ell, mono)


if __name__ == "__main__":
    sys.setrecursionlimit(10000)
    main()
