"""Elliptic curve invariants over finite fields.

A j-invariant is turned into computable isogeny data: a short
Weierstrass model, the Frobenius trace over the minimal field of
definition, supersingularity, and a geometric isogeny class label
(supersingular flag, or the fundamental discriminant of the CM field).
Label equality decides geometric isogeny.

Point counting is exact and stays elementary: exhaustive enumeration on
tiny fields, baby-step/giant-step over the Hasse interval elsewhere,
with the interval thinned by the trace mod p (Cartier-Manin) and mod 2
(rational two-torsion).  No Schoof-style machinery.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .config import RunConfig
from .errors import BudgetExceeded, CuspInput
from .fastpoly import FieldKernel, PackedFieldOps
from .fields import FieldElement, FieldTower
from .integers import fundamental_discriminant
from .zech import ZERO, CyclicTable

_PACKED_OPS_CACHE: dict[int, PackedFieldOps] = {}


def _packed_ops(kernel: FieldKernel) -> PackedFieldOps:
    ops = _PACKED_OPS_CACHE.get(id(kernel))
    if ops is None:
        ops = PackedFieldOps(kernel)
        _PACKED_OPS_CACHE[id(kernel)] = ops
    return ops


@dataclass(frozen=True, order=True)
class IsogenyClassLabel:
    """Computable invariant of the geometric isogeny class."""

    kind: str  # "supersingular" | "ordinary"
    char: int
    disc: int | None = None  # fundamental CM discriminant when ordinary

    def as_tuple(self):
        return (self.kind, self.char, self.disc if self.disc is not None else 0)

    def __str__(self):
        if self.kind == "supersingular":
            return f"ss(p={self.char})"
        return f"ord(D={self.disc})"


class JInvariant:
    """A point of the j-line: a field element, or the cusp."""

    __slots__ = ("value", "_min_level")

    def __init__(self, value: FieldElement | None):
        self.value = value
        self._min_level = None

    @classmethod
    def cusp(cls) -> "JInvariant":
        return cls(None)

    @property
    def is_cusp(self) -> bool:
        return self.value is None

    def min_level(self) -> int:
        if self.is_cusp:
            return 1
        if self._min_level is None:
            self._min_level = self.value.tower.min_level(self.value)
        return self._min_level

    def __repr__(self):
        return "j(cusp)" if self.is_cusp else f"j({self.value!r})"


def curve_from_j(j: JInvariant) -> tuple[FieldElement, FieldElement]:
    """Short Weierstrass coefficients (A, B) with the given j-invariant."""
    if j.is_cusp:
        raise CuspInput("the cusp has no Weierstrass model")
    v = j.value
    tower = v.tower
    lvl = v.level
    zero = tower.from_int(lvl, 0)
    c1728 = tower.from_int(lvl, 1728)
    if v == zero:
        return zero, tower.from_int(lvl, 1)
    if v == c1728:
        return tower.from_int(lvl, 1), zero
    k = v / (c1728 - v)
    return 3 * k, 2 * k


def j_of_curve(a4: FieldElement, a6: FieldElement) -> FieldElement:
    """j-invariant of y^2 = x^3 + a4 x + a6 (nonsingular)."""
    tower = a4.tower
    lvl = a4.level
    four_a3 = 4 * a4 * a4 * a4
    disc = four_a3 + 27 * a6 * a6
    if disc.is_zero():
        raise ValueError("singular curve")
    return tower.from_int(lvl, 1728) * four_a3 / disc


def quadratic_twist(
    a4: FieldElement, a6: FieldElement, c: FieldElement
) -> tuple[FieldElement, FieldElement]:
    return a4 * c * c, a6 * c * c * c


# --- exact point counting -------------------------------------------------


def naive_count(kernel: FieldKernel, a4, a6) -> int:
    """#E(F_q) by exhausting x; the reference oracle for small q."""
    squares = set()
    # enumerate all field elements via odometer
    p, k = kernel.p, kernel.k
    idx = [0] * k
    elems = []
    while True:
        elems.append(tuple(idx))
        i = 0
        while i < k:
            idx[i] += 1
            if idx[i] < p:
                break
            idx[i] = 0
            i += 1
        if i == k:
            break
    for y in elems:
        squares.add(kernel.mul(y, y))
    count = 1  # infinity
    for x in elems:
        v = kernel.add(kernel.mul(kernel.mul(x, x), x),
                       kernel.add(kernel.mul(a4, x), a6))
        if not any(v):
            count += 1
        elif v in squares:
            count += 2
    return count


def _table_point(table: CyclicTable, a4: int, a6: int, rng: random.Random):
    """A random affine point on y^2 = x^3 + a4 x + a6, log-domain."""
    n = table.order
    while True:
        x = rng.randrange(n + 1) - 1  # ZERO .. n-1
        v = table.add(table.mul(x, table.mul(x, x)),
                      table.add(table.mul(a4, x), a6))
        if v == ZERO:
            return (x, ZERO)
        if v % 2 == 0:
            return (x, v // 2)


class _TableEC:
    """Affine group law on log-domain points; None is the identity."""

    def __init__(self, table: CyclicTable, a4: int):
        self.t = table
        self.a4 = a4
        self.log2 = table.from_coeffs(table.kernel.from_int(2))
        self.log3 = table.from_coeffs(table.kernel.from_int(3))

    def neg(self, P):
        if P is None:
            return None
        return (P[0], self.t.neg(P[1]))

    def add(self, P, Q):
        t = self.t
        if P is None:
            return Q
        if Q is None:
            return P
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if y1 == y2:
                return self.dbl(P)
            return None
        num = t.sub(y2, y1)
        den = t.sub(x2, x1)
        lam = t.mul(num, t.inv(den))
        x3 = t.sub(t.sub(t.mul(lam, lam), x1), x2)
        y3 = t.sub(t.mul(lam, t.sub(x1, x3)), y1)
        return (x3, y3)

    def dbl(self, P):
        t = self.t
        if P is None:
            return None
        x1, y1 = P
        if y1 == ZERO:
            return None
        num = t.add(t.mul(self.log3, t.mul(x1, x1)), self.a4)
        den = t.mul(self.log2, y1)
        lam = t.mul(num, t.inv(den))
        x3 = t.sub(t.mul(lam, lam), t.mul(self.log2, x1))
        y3 = t.sub(t.mul(lam, t.sub(x1, x3)), y1)
        return (x3, y3)

    def scalar(self, P, n: int):
        if n < 0:
            return self.neg(self.scalar(P, -n))
        R = None
        while n:
            if n & 1:
                R = self.add(R, P)
            P = self.dbl(P)
            n >>= 1
        return R


def _candidates_table(table: CyclicTable, a4: int, a6: int, q: int,
                      residue: int, modulus: int, rng: random.Random) -> set[int]:
    """All a = q+1-#E candidates in the Hasse interval matching one point."""
    ec = _TableEC(table, a4)
    H = math.isqrt(4 * q)
    P = _table_point(table, a4, a6, rng)
    R = ec.scalar(P, q + 1 - residue)  # want u*(M P) = R with a = residue + M u
    T = ec.scalar(P, modulus)
    if T is None:
        # the sampled point has order dividing the congruence modulus;
        # report every admissible candidate and let filtering narrow it
        lo_a = residue - modulus * ((H + residue) // modulus)
        return {a for a in range(lo_a, H + 1, modulus)
                if ec.scalar(P, q + 1 - a) is None}
    lo = -((H + residue) // modulus) - 1
    hi = (H - residue) // modulus + 1
    span = hi - lo + 1
    s = math.isqrt(span) + 1
    baby: dict[int, list[int]] = {}
    cur = None  # j*T
    for j in range(s):
        key = -2 if cur is None else cur[0]
        baby.setdefault(key, []).append(j)
        cur = ec.add(cur, T)
    bigT = ec.scalar(T, s)
    out = set()
    G = ec.add(R, ec.neg(ec.scalar(T, lo)))  # R - lo*T
    negbig = ec.neg(bigT)
    i = 0
    while lo + i * s <= hi:
        key = -2 if G is None else G[0]
        if key in baby:
            for j in baby[key]:
                for sign in (1, -1):
                    u = lo + i * s + sign * j
                    if lo <= u <= hi:
                        # verify exactly
                        if _points_equal(ec.scalar(T, u), R):
                            a = residue + modulus * u
                            if abs(a) <= H:
                                out.add(a)
        G = ec.add(G, negbig)
        i += 1
    return out


def _points_equal(P, Q) -> bool:
    return P == Q


def count_points_table(table: CyclicTable, a4t, a6t, config: RunConfig,
                       rng: random.Random) -> int:
    """Exact #E(F_q) via BSGS in the Hasse interval, log-domain."""
    q = table.q
    p = table.p
    a4l = table.from_coeffs(a4t)
    a6l = table.from_coeffs(a6t)
    amodp = _trace_mod_p(table.kernel, a4t, a6t)
    cands = _candidates_table(table, a4l, a6l, q, amodp, p, rng)
    ec = _TableEC(table, a4l)
    # one full scan is enough; further random points only filter the set
    for _ in range(48):
        if len(cands) == 1:
            a = next(iter(cands))
            return q + 1 - a
        if not cands:
            raise AssertionError("point count candidates became empty")
        P = _table_point(table, a4l, a6l, rng)
        cands = {a for a in cands if ec.scalar(P, q + 1 - a) is None}
    raise AssertionError("could not isolate the point count")


def _trace_mod_p(kernel: FieldKernel, a4, a6) -> int:
    """Trace mod p via the Hasse invariant of y^2 = f(x) (Cartier-Manin).

    h is the x^{p-1} coefficient of f^{(p-1)/2}; the trace is congruent
    to the F_q/F_p norm of h mod p.  Verified against naive counting in
    the test suite.
    """
    p = kernel.p
    k = kernel.k
    # f = x^3 + a4 x + a6; compute f^{(p-1)/2} truncated mod x^p
    f = [a6, a4, kernel.zero, kernel.one]
    e = (p - 1) // 2
    result = [kernel.one]
    base = f
    while e:
        if e & 1:
            result = _poly_mul_trunc(kernel, result, base, p)
        e >>= 1
        if e:
            base = _poly_mul_trunc(kernel, base, base, p)
    h = result[p - 1] if len(result) > p - 1 else kernel.zero
    if not any(h):
        return 0
    # norm to F_p
    npow = (p**k - 1) // (p - 1)
    nh = kernel.pow(h, npow)
    assert not any(nh[1:])
    return nh[0] % p


def _poly_mul_trunc(kernel: FieldKernel, a, b, bound: int):
    out = [kernel.zero] * min(len(a) + len(b) - 1, bound)
    for i, ai in enumerate(a):
        if i >= bound:
            break
        if not any(ai):
            continue
        for j, bj in enumerate(b):
            if i + j >= bound:
                break
            if any(bj):
                out[i + j] = kernel.add(out[i + j], kernel.mul(ai, bj))
    return out


# --- coefficient-domain BSGS for fields beyond table range ---------------


def _tonelli_sqrt(kernel: FieldKernel, v, q: int, rng: random.Random):
    """Square root in F_q, q odd; assumes v is a nonzero square."""
    if q % 4 == 3:
        return kernel.pow(v, (q + 1) // 4)
    # Tonelli-Shanks
    s = 0
    t = q - 1
    while t % 2 == 0:
        t //= 2
        s += 1
    while True:
        z = tuple(rng.randrange(kernel.p) for _ in range(kernel.k))
        if any(z) and kernel.pow(z, (q - 1) // 2) != kernel.one:
            break
    m = s
    c = kernel.pow(z, t)
    r = kernel.pow(v, (t + 1) // 2)
    w = kernel.pow(v, t)
    while w != kernel.one:
        i = 0
        ww = w
        while ww != kernel.one:
            ww = kernel.mul(ww, ww)
            i += 1
        b = c
        for _ in range(m - i - 1):
            b = kernel.mul(b, b)
        m = i
        c = kernel.mul(b, b)
        w = kernel.mul(w, c)
        r = kernel.mul(r, b)
    return r


class _JacobianEC:
    """Jacobian-coordinate group law on packed-int field elements.

    Points are (X, Y, Z) packed ints (see PackedFieldOps) with X, Y
    kept clean after every operation; None is the identity.  Built for
    long baby/giant-step chains where inversions are batched.
    """

    def __init__(self, ops: PackedFieldOps, a4_packed: int):
        self.f = ops
        self.a4 = a4_packed

    def to_affine_batch(self, pts):
        """Normalize many points at once (one inversion via products)."""
        f = self.f
        out = []
        for x, lazy in self.normalize_x_batch(pts):
            out.append((x, self.lazy_y(lazy)))
        return out

    def normalize_x_batch(self, pts):
        """(x_affine, lazy-y handle) per point; y costs 2 more muls."""
        f = self.f
        zs = [f.clean(P[2]) for P in pts]
        prefix = [f.one]
        for z in zs:
            prefix.append(f.mul(prefix[-1], z))
        inv_all = f.inv(prefix[-1])
        out = []
        for i in range(len(pts) - 1, -1, -1):
            zinv = f.mul(inv_all, prefix[i])
            inv_all = f.mul(inv_all, zs[i])
            X, Y, _ = pts[i]
            z2 = f.mul(zinv, zinv)
            out.append((f.mul(X, z2), (Y, zinv, z2)))
        out.reverse()
        return out

    def lazy_y(self, lazy):
        Y, zinv, z2 = lazy
        return self.f.mul(Y, self.f.mul(z2, zinv))

    def dbl(self, P):
        if P is None:
            return None
        f = self.f
        X1, Y1, Z1 = P
        if f.is_zero(Y1):
            return None
        YY = f.mul(Y1, Y1)
        S = f.mul(X1, YY)
        S = S + S + S + S  # 4 X1 Y1^2, limbs <= 16
        ZZ = f.mul(Z1, Z1)
        M = f.mul(X1, X1)
        M = M + M + M + f.mul(self.a4, f.mul(ZZ, ZZ))  # limbs <= 16
        X3 = f.clean(f.sub(f.mul(M, M), S + S))
        YYYY = f.mul(YY, YY)
        Y3 = f.clean(f.sub(f.mul(M, f.sub(S, X3)), 8 * YYYY))
        Z3 = f.mul(Y1 + Y1, Z1)
        return (X3, Y3, Z3)

    def add_mixed(self, P, Q_aff):
        """P (Jacobian) + Q (affine, clean packed pair)."""
        if P is None:
            x, y = Q_aff
            return (x, y, self.f.one)
        f = self.f
        X1, Y1, Z1 = P
        x2, y2 = Q_aff
        Z1Z1 = f.mul(Z1, Z1)
        U2 = f.mul(x2, Z1Z1)
        S2 = f.mul(y2, f.mul(Z1, Z1Z1))
        # X1, Y1 are kept clean, and clean packing is canonical
        if U2 == X1:
            if S2 == Y1:
                return self.dbl(P)
            return None
        H = f.sub(U2, X1)
        HH = f.mul(H, H)
        I = HH + HH + HH + HH
        J = f.mul(H, I)
        rr = f.sub(S2, Y1)
        rr = rr + rr
        V = f.mul(X1, I)
        X3 = f.clean(f.sub(f.sub(f.mul(rr, rr), J), V + V))
        Y3 = f.clean(f.sub(f.mul(rr, f.sub(V, X3)), f.mul(Y1 + Y1, J)))
        Z3 = f.mul(Z1 + Z1, H)
        return (X3, Y3, Z3)

    def neg_affine(self, Q_aff):
        x, y = Q_aff
        return (x, self.f.clean(self.f.neg(y)))

    def scalar_affine(self, Q_aff, n: int):
        """n * Q as a Jacobian point."""
        if n == 0:
            return None
        if n < 0:
            return self.scalar_affine(self.neg_affine(Q_aff), -n)
        R = None
        for b in bin(n)[2:]:
            R = self.dbl(R)
            if b == "1":
                R = self.add_mixed(R, Q_aff)
        return R

    def to_affine(self, P):
        if P is None:
            return None
        return self.to_affine_batch([P])[0]


def _random_affine_point(kernel: FieldKernel, a4, a6, q: int, rng: random.Random):
    while True:
        x = tuple(rng.randrange(kernel.p) for _ in range(kernel.k))
        v = kernel.add(kernel.mul(kernel.mul(x, x), x),
                       kernel.add(kernel.mul(a4, x), a6))
        if not any(v):
            return (x, kernel.zero)
        if kernel.pow(v, (q - 1) // 2) == kernel.one:
            y = _tonelli_sqrt(kernel, v, q, rng)
            return (x, y)


def _has_rational_two_torsion(kernel: FieldKernel, a4, a6, q: int) -> bool:
    """Whether x^3 + a4 x + a6 has a root in F_q (trace parity probe)."""
    from .fastpoly import PolyKernel
    from .polyroots import deg, poly_gcd

    f = [a6, a4, kernel.zero, kernel.one]
    kern = PolyKernel(kernel, f)
    xq = kern.powmod([kernel.zero, kernel.one], q)
    diff = kern.add(xq, [kernel.zero, kernel.neg(kernel.one)])
    return deg(kernel, poly_gcd(kernel, diff, f)) > 0


def _candidates_coeff(kernel: FieldKernel, a4, a6, q: int, residue: int,
                      modulus: int, rng: random.Random) -> set[int]:
    ops = _packed_ops(kernel)
    ec = _JacobianEC(ops, ops.pack(a4))
    H = math.isqrt(4 * q)
    pt = _random_affine_point(kernel, a4, a6, q, rng)
    P = (ops.pack(pt[0]), ops.pack(pt[1]))
    Rj = ec.scalar_affine(P, q + 1 - residue)
    lo = -((H + residue) // modulus) - 1
    hi = (H - residue) // modulus + 1
    span = hi - lo + 1
    s = math.isqrt(span) + 1
    Tj = ec.scalar_affine(P, modulus)
    if Tj is None:
        # the sampled point has tiny order; report every admissible a and
        # let intersection with further points settle it
        lo_a = residue - modulus * ((H + residue) // modulus)
        return set(range(lo_a, H + 1, modulus))
    T = ec.to_affine(Tj)
    baby_j = []
    cur = None
    for j in range(s):
        baby_j.append(cur)
        cur = ec.add_mixed(cur, T)
    nonzero = [pt for pt in baby_j if pt is not None]
    norms = ec.normalize_x_batch(nonzero)
    it = iter(norms)
    baby: dict[object, list[tuple[int, object]]] = {}
    for j, pt in enumerate(baby_j):
        entry = None if pt is None else next(it)
        key = None if entry is None else entry[0]
        baby.setdefault(key, []).append((j, entry))
    # G_i = R - (lo + i*s) T
    minus_loT = ec.scalar_affine(ec.neg_affine(T), lo)
    if Rj is None:
        G = minus_loT
    elif minus_loT is None:
        G = Rj
    else:
        G = ec.add_mixed(minus_loT, ec.to_affine(Rj))
    bigTj = ec.scalar_affine(T, s)
    negbigT = None if bigTj is None else ec.neg_affine(ec.to_affine(bigTj))
    out = set()
    n_giant = (hi - lo) // s + 1
    i = 0
    block: list[tuple[int, tuple | None]] = []

    def flush(block):
        nz = [g for _, g in block if g is not None]
        norms = ec.normalize_x_batch(nz)
        itg = iter(norms)
        for gi, g in block:
            gent = None if g is None else next(itg)
            key = None if gent is None else gent[0]
            if key in baby:
                for j, bent in baby[key]:
                    for sign in (1, -1):
                        u = lo + gi * s + sign * j
                        if lo <= u <= hi:
                            a = residue + modulus * u
                            if abs(a) <= H and _entry_match(ec, gent, bent, sign):
                                out.add(a)

    while i < n_giant:
        block.append((i, G))
        if negbigT is None:
            for i2 in range(i + 1, n_giant):
                block.append((i2, G))
            i = n_giant
        else:
            G = ec.add_mixed(G, negbigT)
            i += 1
        if len(block) >= 512 or i >= n_giant:
            flush(block)
            block = []
    return out


def _entry_match(ec: _JacobianEC, gent, bent, sign: int) -> bool:
    """Does G = sign * B hold, resolving lazy y only on an x match?"""
    if gent is None or bent is None:
        return gent is None and bent is None
    if gent[0] != bent[0]:
        return False
    gy = ec.lazy_y(gent[1])
    by = ec.lazy_y(bent[1])
    if sign == 1:
        return gy == by
    return gy == ec.f.clean(ec.f.neg(by))


def count_points_coeff(kernel: FieldKernel, a4, a6, config: RunConfig,
                       rng: random.Random) -> int:
    """Exact #E(F_q) by Hasse-interval BSGS in coefficient arithmetic."""
    q = kernel.p**kernel.k
    p = kernel.p
    amodp = _trace_mod_p(kernel, a4, a6)
    amod2 = 0 if _has_rational_two_torsion(kernel, a4, a6, q) else 1
    # CRT: a = amodp (p), a = amod2 (2)
    modulus = 2 * p
    residue = amodp
    while residue % 2 != amod2:
        residue += p
    residue %= modulus
    cands = _candidates_coeff(kernel, a4, a6, q, residue, modulus, rng)
    ops = _packed_ops(kernel)
    ec = _JacobianEC(ops, ops.pack(a4))
    for _ in range(48):
        if len(cands) == 1:
            a = next(iter(cands))
            return q + 1 - a
        if not cands:
            raise AssertionError("point count candidates became empty")
        pt = _random_affine_point(kernel, a4, a6, q, rng)
        P = (ops.pack(pt[0]), ops.pack(pt[1]))
        cands = {a for a in cands if ec.scalar_affine(P, q + 1 - a) is None}
    raise AssertionError("could not isolate the point count")


# --- dispatcher -----------------------------------------------------------


def count_points(a4: FieldElement, a6: FieldElement,
                 config: RunConfig | None = None,
                 rng: random.Random | None = None) -> int:
    """#E(F_{p^k}) for E: y^2 = x^3 + a4 x + a6 over the operands' level."""
    tower = a4.tower
    config = config or tower.config
    if a6.level != a4.level:
        raise ValueError("curve coefficients at different levels")
    level = a4.level
    p = tower.p
    q = p**level
    disc = 4 * a4 * a4 * a4 + 27 * a6 * a6
    if disc.is_zero():
        raise ValueError("singular curve")
    if rng is None:
        rng = config.rng(f"count:{p}:{level}")
    kernel = tower.level(level).kernel
    if q <= 600:
        n = naive_count(kernel, a4.coeffs, a6.coeffs)
    elif q <= config.table_field_limit:
        table = tower.cyclic_table(level)
        n = count_points_table(table, a4.coeffs, a6.coeffs, config, rng)
    elif q <= config.bsgs_count_budget:
        n = count_points_coeff(kernel, a4.coeffs, a6.coeffs, config, rng)
    else:
        raise BudgetExceeded(f"field size {q} beyond counting budgets")
    assert abs(q + 1 - n) <= math.isqrt(4 * q), "Hasse bound violated"
    return n


def trace_sequence(a1: int, q: int, m: int) -> int:
    """Trace over F_{q^m} from the trace over F_q (second-order recurrence)."""
    if m == 0:
        return 2
    prev, cur = 2, a1
    for _ in range(m - 1):
        prev, cur = cur, a1 * cur - q * prev
    return cur


class IsogenyClassifier:
    """Shared label/trace engine with memoization by minimal polynomial."""

    def __init__(self, tower: FieldTower, config: RunConfig | None = None):
        self.tower = tower
        self.config = config or tower.config
        self._trace_cache: dict[tuple, tuple[int, int]] = {}
        self._label_cache: dict[tuple, IsogenyClassLabel] = {}
        self._rng = self.config.rng(f"classifier:{tower.p}")

    def trace_over_min_field(self, j: JInvariant) -> tuple[int, int]:
        """(trace a, minimal level k): a = p^k + 1 - #E(F_{p^k})."""
        if j.is_cusp:
            raise CuspInput("cusp has no Frobenius trace")
        key = self.tower.minimal_polynomial(j.value)
        hit = self._trace_cache.get(key)
        if hit is not None:
            return hit
        jmin = self.tower.descend(j.value)
        a4, a6 = curve_from_j(JInvariant(jmin))
        n = count_points(a4, a6, self.config, self._rng)
        k = jmin.level
        a = self.tower.p**k + 1 - n
        self._trace_cache[key] = (a, k)
        return (a, k)

    def frobenius_trace(self, j: JInvariant, m: int = 1) -> int:
        """Trace of Frobenius over F_{p^{k m}}, k the minimal level of j."""
        a, k = self.trace_over_min_field(j)
        return trace_sequence(a, self.tower.p**k, m)

    def is_supersingular(self, j: JInvariant) -> bool:
        a, _ = self.trace_over_min_field(j)
        return a % self.tower.p == 0

    def label(self, j: JInvariant) -> IsogenyClassLabel:
        if j.is_cusp:
            raise CuspInput("cusp points carry no isogeny class label")
        key = self.tower.minimal_polynomial(j.value)
        hit = self._label_cache.get(key)
        if hit is not None:
            return hit
        a, k = self.trace_over_min_field(j)
        p = self.tower.p
        if a % p == 0:
            lab = IsogenyClassLabel("supersingular", p)
        else:
            d = a * a - 4 * p**k
            assert d < 0
            d0, _ = fundamental_discriminant(
                d, self.config.trial_division_bound,
                self.config.rho_iterations,
                self.config.rng(f"fundisc:{d}"),
            )
            lab = IsogenyClassLabel("ordinary", p, d0)
        self._label_cache[key] = lab
        return lab

    def geometric_isogeny_test(self, j1: JInvariant, j2: JInvariant) -> bool:
        """Label equality; cusps are isogenous exactly to cusps."""
        if j1.is_cusp or j2.is_cusp:
            return j1.is_cusp and j2.is_cusp
        return self.label(j1) == self.label(j2)

    def supersingular_j_minpolys(self) -> list[tuple[int, ...]]:
        """Minimal polynomials of all supersingular j over the closure.

        Every supersingular j lies in F_{p^2}; one entry per Frobenius
        orbit, sorted.
        """
        tower = self.tower
        tower.ensure_level(2)
        found: set[tuple[int, ...]] = set()
        checked: set[tuple[int, ...]] = set()
        for j in tower.iter_elements(2):
            mp = tower.minimal_polynomial(j)
            if mp in checked:
                continue
            checked.add(mp)
            if self.is_supersingular(JInvariant(j)):
                found.add(mp)
        return sorted(found)
