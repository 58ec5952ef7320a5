"""Univariate polynomial factoring and root extraction over F_{p^k}.

Polynomials are lists of field-coefficient tuples (see FieldKernel),
little-endian.  The toolkit covers what the workbench needs: monic gcd
chains, squarefree decomposition in characteristic p, distinct-degree
factorization, Cantor-Zassenhaus equal-degree splitting, irreducibility
tests and random irreducible modulus search.
"""

from __future__ import annotations

import random

import numpy as np

from .fastpoly import FieldKernel, PolyKernel, _mulmat_np


def deg(field: FieldKernel, a) -> int:
    d = len(a) - 1
    while d >= 0 and field.is_zero(a[d]):
        d -= 1
    return d


def trim(field: FieldKernel, a):
    d = deg(field, a)
    return list(a[: d + 1])


def monic(field: FieldKernel, a):
    d = deg(field, a)
    if d < 0:
        return []
    inv = field.inv(a[d])
    return [field.mul(c, inv) for c in a[: d + 1]]


def poly_mul(field: FieldKernel, a, b):
    if not a or not b:
        return []
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if field.is_zero(ai):
            continue
        for j, bj in enumerate(b):
            if not field.is_zero(bj):
                out[i + j] = field.add(out[i + j], field.mul(ai, bj))
    return out


def poly_divmod(field: FieldKernel, a, b):
    db = deg(field, b)
    if db < 0:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = field.inv(b[db])
    rem = list(a)
    da = deg(field, rem)
    if da < db:
        return [], trim(field, rem)
    q = [field.zero] * (da - db + 1)
    for i in range(da - db, -1, -1):
        c = field.mul(rem[db + i], inv_lead)
        q[i] = c
        if not field.is_zero(c):
            for j in range(db + 1):
                rem[i + j] = field.sub(rem[i + j], field.mul(c, b[j]))
    return q, trim(field, rem)


def _pseudo_rem(field: FieldKernel, a, b):
    """Remainder of a by b up to a unit, with no field inversions."""
    db = deg(field, b)
    lead = b[db]
    rem = list(a)
    da = deg(field, rem)
    while da >= db:
        c = rem[da]
        if not field.is_zero(c):
            for i in range(da):
                rem[i] = field.mul(rem[i], lead)
            off = da - db
            for j in range(db):
                rem[off + j] = field.sub(rem[off + j], field.mul(c, b[j]))
        rem = rem[:da]
        da = deg(field, rem)
    return rem


# --- numpy-grid polynomial helpers (rows = field coefficients) ---


def np_from(field: FieldKernel, a) -> np.ndarray:
    if not a:
        return np.zeros((0, field.k), dtype=np.int64)
    return np.array([list(c) for c in a], dtype=np.int64)


def np_to(grid: np.ndarray):
    return [tuple(int(c) for c in row) for row in grid]


def np_deg(grid: np.ndarray) -> int:
    nz = np.nonzero(grid.any(axis=1))[0]
    return int(nz[-1]) if len(nz) else -1


def _np_pseudo_rem(field: FieldKernel, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    p = field.p
    db = np_deg(b)
    mlead = _mulmat_np(field, b[db])
    bm = b[:db]
    r = a % p
    da = np_deg(r)
    while da >= db:
        c = tuple(int(x) for x in r[da])
        if any(c):
            r = r[:da] @ mlead % p
            off = da - db
            r[off:da] = (r[off:da] - bm @ _mulmat_np(field, c)) % p
        else:
            r = r[:da]
        da = np_deg(r)
    return r


def _np_gcd(field: FieldKernel, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = a[: np_deg(a) + 1]
    b = b[: np_deg(b) + 1]
    while b.shape[0]:
        r = _np_pseudo_rem(field, a, b)
        a, b = b, r[: np_deg(r) + 1]
    d = np_deg(a)
    if d < 0:
        return a
    inv = field.inv(tuple(int(x) for x in a[d]))
    return a @ _mulmat_np(field, inv) % field.p


def poly_gcd(field: FieldKernel, a, b):
    a, b = trim(field, a), trim(field, b)
    if field.k * max(len(a), len(b), 1) > 48:
        g = _np_gcd(field, np_from(field, a), np_from(field, b))
        return np_to(g)
    while b:
        r = _pseudo_rem(field, a, b)
        a, b = b, trim(field, r)
    return monic(field, a)


def poly_derivative(field: FieldKernel, a):
    p = field.p
    return trim(
        field, [field.scalar_mul(i % p, a[i]) for i in range(1, len(a))]
    )


def poly_eval(field: FieldKernel, a, x):
    acc = field.zero
    for c in reversed(a):
        acc = field.add(field.mul(acc, x), c)
    return acc


def _field_root_p(field: FieldKernel, c, k_order: int):
    """p-th root in F_{p^k}: c^(p^(k-1)) since Frobenius has order k."""
    out = c
    for _ in range(k_order - 1):
        out = field.frobenius(out)
    return out


def squarefree_decomposition(field: FieldKernel, a) -> list[tuple[list, int]]:
    """Yun-style decomposition, characteristic-p aware.

    Returns [(g_i, m_i)] with a = lead * prod g_i^{m_i}, the g_i monic
    squarefree and pairwise coprime.
    """
    p = field.p
    a = monic(field, a)
    out: list[tuple[list, int]] = []
    if deg(field, a) <= 0:
        return out
    da = poly_derivative(field, a)
    if not da:
        # a = b(x^p): take p-th roots of coefficients and recurse
        b = [_field_root_p(field, a[i], field.k) for i in range(0, len(a), p)]
        for g, m in squarefree_decomposition(field, b):
            out.append((g, m * p))
        return out
    w = poly_gcd(field, a, da)
    rest, _ = poly_divmod(field, a, w)
    m = 1
    while deg(field, rest) > 0:
        nxt = poly_gcd(field, rest, w)
        g, _ = poly_divmod(field, rest, nxt)
        if deg(field, g) > 0:
            out.append((g, m))
        w, _ = poly_divmod(field, w, nxt)
        rest = nxt
        m += 1
    if deg(field, w) > 0:
        # w collects the factors whose multiplicity is divisible by p;
        # its own decomposition already carries the right multiplicities
        out.extend(squarefree_decomposition(field, w))
    return out


def field_order(field: FieldKernel) -> int:
    return field.p**field.k


def frobenius_power_mod(field: FieldKernel, f, count: int):
    """x^{q^count} mod f for q = |field|, iterating u -> u^q."""
    kern = PolyKernel(field, monic(field, f))
    q = field_order(field)
    u = kern.powmod([field.zero, field.one], q)
    for _ in range(count - 1):
        u = kern.powmod(u, q)
    return u


def distinct_degree_factorization(field: FieldKernel, f) -> list[tuple[list, int]]:
    """[(product of irreducible factors of degree d, d)] for squarefree monic f."""
    f = monic(field, f)
    out: list[tuple[list, int]] = []
    kern = PolyKernel(field, f)
    q = field_order(field)
    u = [field.zero, field.one]  # x
    d = 0
    rest = f
    while deg(field, rest) > 2 * (d + 1) - 1:
        d += 1
        u = kern.powmod(u, q)  # x^{q^d} mod f
        diff = kern.add(u, [field.zero, field.neg(field.one)])
        g = poly_gcd(field, diff, rest)
        if deg(field, g) > 0:
            out.append((g, d))
            rest, _ = poly_divmod(field, rest, g)
            if deg(field, rest) == 0:
                break
            kern = PolyKernel(field, rest)
            _, u = poly_divmod(field, u, rest)
    if deg(field, rest) > 0:
        out.append((rest, deg(field, rest)))
    return out


def _np_divmod_monic(field: FieldKernel, a: np.ndarray, b: np.ndarray):
    """Quotient and remainder by a monic divisor, on coefficient grids."""
    p = field.p
    k = field.k
    db = np_deg(b)
    bm = b[:db]
    r = a.copy() % p
    da = np_deg(r)
    if da < db:
        return np.zeros((0, k), dtype=np.int64), r
    q = np.zeros((da - db + 1, k), dtype=np.int64)
    for i in range(da - db, -1, -1):
        c = tuple(int(x) for x in r[db + i])
        if any(c):
            q[i] = c
            r[i : i + db] = (r[i : i + db] - bm @ _mulmat_np(field, c)) % p
            r[db + i] = 0
    return q, r[:db]


def _np_random_poly(field: FieldKernel, n: int, rng: random.Random) -> np.ndarray:
    return np.array(
        [[rng.randrange(field.p) for _ in range(field.k)] for _ in range(n)],
        dtype=np.int64,
    )


def _np_equal_degree(field: FieldKernel, f: np.ndarray, d: int, rng: random.Random):
    n = np_deg(f)
    if n == d:
        return [f[: n + 1]]
    q = field_order(field)
    exp = (q**d - 1) // 2
    kern = PolyKernel(field, np_to(f[: n + 1]))
    while True:
        a = _np_random_poly(field, n, rng)
        if np_deg(a) < 1:
            continue
        w = kern.powmod_vec(a, exp)
        w[0, 0] = (w[0, 0] - 1) % field.p
        g = _np_gcd(field, w, f)
        dg = np_deg(g)
        if 0 < dg < n:
            h, _ = _np_divmod_monic(field, f, g)
            return _np_equal_degree(field, g, d, rng) + _np_equal_degree(
                field, h, d, rng
            )


def equal_degree_split(field: FieldKernel, f, d: int, rng: random.Random):
    """All monic irreducible degree-d factors of f (f a product of such)."""
    parts = _np_equal_degree(field, np_from(field, monic(field, f)), d, rng)
    return sorted(np_to(g) for g in parts)


def _random_elt(field: FieldKernel, rng: random.Random):
    return tuple(rng.randrange(field.p) for _ in range(field.k))


def factor_poly(field: FieldKernel, f, rng: random.Random) -> list[tuple[list, int]]:
    """Full monic irreducible factorization [(factor, multiplicity)]."""
    out: list[tuple[list, int]] = []
    for squarefree, mult in squarefree_decomposition(field, f):
        for prod, d in distinct_degree_factorization(field, squarefree):
            for factor in equal_degree_split(field, prod, d, rng):
                out.append((factor, mult))
    out.sort(key=lambda fm: (deg(field, fm[0]), fm[0]))
    return out


def roots_in_field(field: FieldKernel, f, rng: random.Random) -> list[tuple[tuple, int]]:
    """Roots of f lying in the coefficient field, with multiplicities."""
    out = []
    for squarefree, mult in squarefree_decomposition(field, f):
        kern = PolyKernel(field, monic(field, squarefree))
        q = field_order(field)
        xq = kern.powmod([field.zero, field.one], q)
        diff = kern.add(xq, [field.zero, field.neg(field.one)])
        linear_part = poly_gcd(field, diff, squarefree)
        dlin = deg(field, linear_part)
        if dlin <= 0:
            continue
        for factor in equal_degree_split(field, linear_part, 1, rng):
            root = field.neg(factor[0])
            out.append((root, mult))
    out.sort()
    return out


def one_root_in_field(field: FieldKernel, f, rng: random.Random):
    """One root of monic f, assuming f splits completely in this field."""
    fv = np_from(field, monic(field, f))
    q = field_order(field)
    exp = (q - 1) // 2
    while np_deg(fv) > 1:
        n = np_deg(fv)
        fv = fv[: n + 1]
        kern = PolyKernel(field, np_to(fv))
        a = _np_random_poly(field, n, rng)
        if np_deg(a) < 1:
            continue
        w = kern.powmod_vec(a, exp)
        w[0, 0] = (w[0, 0] - 1) % field.p
        g = _np_gcd(field, w, fv)
        dg = np_deg(g)
        if 0 < dg < n:
            fv = g if dg <= n - dg else _np_divmod_monic(field, fv, g)[0]
    return field.neg(tuple(int(x) for x in fv[0]))


def is_irreducible(field: FieldKernel, f) -> bool:
    """Rabin test: x^{q^n} = x mod f and gcd(x^{q^{n/l}} - x, f) = 1.

    The gcd checks run as soon as the needed Frobenius power appears,
    so reducible candidates are usually rejected early.
    """
    n = deg(field, f)
    if n <= 0:
        return False
    if n == 1:
        return True
    f = monic(field, f)
    kern = PolyKernel(field, f)
    q = field_order(field)
    checkpoints = sorted(n // l for l in _prime_divisors(n))
    u = [field.zero, field.one]
    for i in range(1, n + 1):
        u = kern.powmod(u, q)
        if i in checkpoints:
            v = kern.add(u, [field.zero, field.neg(field.one)])
            if deg(field, poly_gcd(field, v, f)) != 0:
                return False
    return not trim(field, kern.add(u, [field.zero, field.neg(field.one)]))


def _eval_int_poly(coeffs, a: int, p: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * a + c) % p
    return acc


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def random_monic_irreducible(
    p: int, k: int, rng: random.Random, want_primitive_x: bool = False,
    group_order_primes: list[int] | None = None,
) -> tuple[int, ...]:
    """Random monic irreducible of degree k over F_p, as a coefficient tuple.

    With want_primitive_x the search additionally requires x to generate
    the multiplicative group (group_order_primes must then list the
    prime divisors of p^k - 1); used so that discrete-log tables can be
    built by repeated shifts.
    """
    if k == 1:
        return (0, 1)
    base = FieldKernel(p, (0,) * 1 + (1,))  # F_p itself
    while True:
        coeffs = [rng.randrange(p) for _ in range(k)]
        if coeffs[0] == 0:
            coeffs[0] = 1 + rng.randrange(p - 1)
        # cheap pre-filter: no roots in F_p
        full = coeffs + [1]
        if any(_eval_int_poly(full, a, p) == 0 for a in range(p)):
            continue
        f = [(c,) for c in coeffs] + [(1,)]
        if not is_irreducible(base, f):
            continue
        if want_primitive_x:
            fk = FieldKernel(p, tuple(coeffs) + (1,))
            q1 = p**k - 1
            x = fk.element([0, 1])
            if any(fk.pow(x, q1 // l) == fk.one for l in group_order_primes or []):
                continue
        return tuple(coeffs) + (1,)
