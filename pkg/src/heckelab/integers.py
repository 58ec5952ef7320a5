"""Exact integer arithmetic: primality, desk-scale factoring, orders.

Factoring is trial division up to a bound followed by Brent-variant
rho splitting within an iteration budget.  Incompleteness is never
hidden: whatever remains unfactored is carried in the cofactor field
and callers must decide what to do with it.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .errors import IncompleteFactorization, NotAUnit

# Deterministic Miller-Rabin witness set, valid for n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass
class Factorization:
    """n = cofactor * prod(p^e); cofactor == 1 means complete."""

    n: int
    factors: list[tuple[int, int]] = field(default_factory=list)
    cofactor: int = 1

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def reassemble(self) -> int:
        out = self.cofactor
        for p, e in self.factors:
            out *= p**e
        return out

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]


def _brent_rho(n: int, rng: random.Random, max_iters: int) -> int | None:
    """One non-trivial factor of composite odd n, or None within budget."""
    if n % 2 == 0:
        return 2
    it = 0
    while it < max_iters:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1 and it < max_iters:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                it += min(m, r - k)
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n and g != 1:
            return g
    return None


def factor(
    n: int,
    trial_bound: int = 10**6,
    rho_iterations: int = 10**7,
    rng: random.Random | None = None,
) -> Factorization:
    """Factor n >= 1.  Never raises: an unfinished part lands in cofactor."""
    if n < 1:
        raise ValueError("factor() requires n >= 1")
    if rng is None:
        rng = random.Random(0xFAC70)
    found: dict[int, int] = {}
    m = n
    d = 2
    while d <= trial_bound and d * d <= m:
        while m % d == 0:
            found[d] = found.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    stack = [m] if m > 1 else []
    cofactor = 1
    budget = rho_iterations
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        # perfect powers fall to rho slowly; peel them off directly
        root = _perfect_power(m)
        if root is not None:
            b, k = root
            stack.extend([b] * k)
            continue
        g = _brent_rho(m, rng, budget) if budget > 0 else None
        if g is None:
            cofactor *= m
            continue
        stack.append(g)
        stack.append(m // g)
    return Factorization(n, sorted(found.items()), cofactor)


def _iroot(n: int, k: int) -> int:
    """Floor of the k-th root, exact integer arithmetic."""
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _perfect_power(n: int) -> tuple[int, int] | None:
    for k in range(2, n.bit_length() + 1):
        b = _iroot(n, k)
        if b < 2:
            break
        if b**k == n:
            return b, k
    return None


def divisors(fact: Factorization, include_cofactor: bool = False) -> list[int]:
    """All divisors assembled from the known prime part, sorted.

    With an incomplete factorization only the known-factor divisors are
    produced (the cofactor is never treated as prime).
    """
    out = [1]
    for p, e in fact.factors:
        out = [d * p**i for d in out for i in range(e + 1)]
    if include_cofactor and not fact.complete:
        out += [d * fact.cofactor for d in out]
    return sorted(set(out))


def multiplicative_order(x: int, modulus: int, group_order: Factorization) -> int:
    """Exact order of x in (Z/modulus)^* by divisor descent.

    group_order must be a complete factorization of a multiple of the
    order of x (typically of phi(modulus) or of the full group order).
    """
    if not group_order.complete:
        raise IncompleteFactorization(
            f"group order {group_order.n} has unfactored cofactor {group_order.cofactor}"
        )
    x %= modulus
    if math.gcd(x, modulus) != 1:
        raise NotAUnit(f"{x} is not a unit mod {modulus}")
    order = group_order.n
    if pow(x, order, modulus) != 1:
        raise ValueError("group_order is not a multiple of ord(x)")
    for p, e in group_order.factors:
        for _ in range(e):
            if pow(x, order // p, modulus) == 1:
                order //= p
            else:
                break
    return order


def order_by_descent(candidate: int, cand_fact: Factorization, power_is_one) -> int:
    """Generic divisor descent: least d | candidate with power_is_one(d).

    power_is_one(candidate) must hold; cand_fact factors candidate.
    """
    if not cand_fact.complete:
        raise IncompleteFactorization(
            f"order candidate {cand_fact.n} has unfactored cofactor {cand_fact.cofactor}"
        )
    order = candidate
    for p, e in cand_fact.factors:
        for _ in range(e):
            if order % p == 0 and power_is_one(order // p):
                order //= p
            else:
                break
    return order


def bsgs_dlog(x: int, g: int, modulus: int) -> int | None:
    """Least j >= 0 with g^j = x (mod modulus), or None if x is not in <g>.

    Baby-step/giant-step over the cyclic group <g>; correct without
    knowing ord(g) because modulus bounds it.
    """
    x %= modulus
    g %= modulus
    if math.gcd(x, modulus) != 1 or math.gcd(g, modulus) != 1:
        raise NotAUnit("bsgs_dlog requires unit arguments")
    if x == 1:
        return 0
    m = math.isqrt(modulus) + 1
    table: dict[int, int] = {}
    e = 1
    for j in range(m):
        if e not in table:
            table[e] = j
        e = e * g % modulus
    # e == g^m now; giant steps multiply x by g^{-m}
    try:
        ginv_m = pow(e, -1, modulus)
    except ValueError:  # pragma: no cover - g a unit, cannot happen
        raise NotAUnit("g is not invertible")
    y = x
    best = None
    for i in range(m + 1):
        if y in table:
            j = i * m + table[y]
            best = j if best is None else min(best, j)
            break
        y = y * ginv_m % modulus
    return best


def squarefree_core(fact: Factorization) -> tuple[int, int]:
    """(core, sqrt_part) with |n| = core * sqrt_part^2, core squarefree."""
    if not fact.complete:
        raise IncompleteFactorization(
            f"{fact.n} has unfactored cofactor {fact.cofactor}"
        )
    core = 1
    root = 1
    for p, e in fact.factors:
        if e % 2:
            core *= p
        root *= p ** (e // 2)
    return core, root


def fundamental_discriminant(
    d: int,
    trial_bound: int = 10**6,
    rho_iterations: int = 10**7,
    rng: random.Random | None = None,
) -> tuple[int, int]:
    """Write d = f^2 * d0 with d0 the fundamental discriminant of Q(sqrt(d)).

    d must be negative and congruent to 0 or 1 mod 4.  Returns (d0, f).
    """
    if d >= 0:
        raise ValueError("expected a negative discriminant")
    if d % 4 not in (0, 1):
        raise ValueError("discriminant must be 0 or 1 mod 4")
    fact = factor(-d, trial_bound, rho_iterations, rng)
    core, root = squarefree_core(fact)
    m = -core  # squarefree, negative
    if m % 4 == 1:
        d0 = m
    else:
        d0 = 4 * m
    f2, rem = divmod(d, d0)
    if rem != 0:
        raise ValueError("internal error: d0 does not divide d")
    f = math.isqrt(f2)
    if f * f != f2:
        raise ValueError("internal error: conductor not integral")
    return d0, f
