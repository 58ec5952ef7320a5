"""Prime fields, named extensions and compatible embeddings.

A FieldTower holds one irreducible modulus per constructed extension
degree and an embedding for every divisor pair of constructed levels.
Moduli are found by seeded random search (no canonical polynomial
tables); compatibility of embeddings along divisor chains is enforced
at construction by adjusting root choices with Frobenius twists, so
embed(k -> m) followed by embed(m -> K) always equals embed(k -> K).

Elements are immutable coefficient vectors at a named level.  Cross
level comparison requires an explicit embedding; arithmetic between
different levels raises LevelMismatch rather than guessing.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from . import polyroots
from .config import DEFAULT_CONFIG, RunConfig
from .errors import (
    CharTooSmall,
    ExtensionTooLarge,
    IncompleteFactorization,
    LevelMismatch,
    NotAUnit,
    NotCoprime,
    NotPrime,
)
from .fastpoly import FieldKernel
from .integers import Factorization, factor, is_prime, multiplicative_order
from .linmod import solve_mod


class FieldElement:
    """An element of one level of a FieldTower."""

    __slots__ = ("tower", "level", "coeffs")

    def __init__(self, tower: "FieldTower", level: int, coeffs):
        self.tower = tower
        self.level = level
        self.coeffs = tuple(int(c) % tower.p for c in coeffs)

    def _kernel(self) -> FieldKernel:
        return self.tower.level(self.level).kernel

    def _coerce(self, other):
        if isinstance(other, int):
            return self.tower.from_int(self.level, other)
        if not isinstance(other, FieldElement):
            return None
        if other.tower is not self.tower:
            raise LevelMismatch("elements belong to different towers")
        if other.level != self.level:
            raise LevelMismatch(
                f"levels {self.level} and {other.level} are not comparable; embed first"
            )
        return other

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.tower, self.level, self._kernel().add(self.coeffs, o.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.tower, self.level, self._kernel().sub(self.coeffs, o.coeffs))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.tower, self.level, self._kernel().mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return FieldElement(self.tower, self.level, self._kernel().neg(self.coeffs))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(self.tower, self.level, self._kernel().pow(self.coeffs, e))

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise NotAUnit("zero is not invertible")
        return FieldElement(self.tower, self.level, self._kernel().inv(self.coeffs))

    def frobenius(self, times: int = 1) -> "FieldElement":
        """Image under the p-power Frobenius, iterated."""
        kern = self._kernel()
        c = self.coeffs
        for _ in range(times % self.level):
            c = kern.frobenius(c)
        return FieldElement(self.tower, self.level, c)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs == self._kernel().one

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.tower.from_int(self.level, other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.tower is not self.tower or other.level != self.level:
            raise LevelMismatch("comparing elements at different levels; embed first")
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.tower), self.level, self.coeffs))

    def __repr__(self):
        return f"F({self.tower.p}^{self.level}){list(self.coeffs)}"


@dataclass
class Level:
    degree: int
    modulus: tuple[int, ...]
    kernel: FieldKernel

    def frob_matrix(self) -> np.ndarray:
        if not hasattr(self, "_frobmat"):
            rows = self.kernel.frob_rows()
            self._frobmat = np.array([list(r) for r in rows], dtype=np.int64)
        return self._frobmat


def _divisors_of(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


class FieldTower:
    """F_p with named extension levels and compatible embeddings."""

    def __init__(self, p: int, config: RunConfig | None = None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if p in (2, 3):
            raise CharTooSmall("characteristics 2 and 3 are not supported")
        self.p = p
        self.config = config or DEFAULT_CONFIG
        self.rng = self.config.rng(f"tower:{p}")
        self.levels: dict[int, Level] = {}
        self.emb: dict[tuple[int, int], list[tuple[int, ...]]] = {}
        self.emb_gen: dict[tuple[int, int], tuple[int, ...]] = {}
        self.frozen = False
        self._qm1_factors: dict[int, Factorization] = {}
        self.ensure_level(1)

    # --- level construction ---

    def level(self, k: int) -> Level:
        return self.levels[k]

    def ensure_level(self, k: int) -> Level:
        if k in self.levels:
            return self.levels[k]
        if self.frozen:
            raise LevelMismatch("tower is frozen; no new levels")
        if k > self.config.max_extension_degree:
            raise ExtensionTooLarge(
                f"degree {k} exceeds budget {self.config.max_extension_degree}"
            )
        for d in _divisors_of(k)[:-1]:
            self.ensure_level(d)
        if k == 1:
            lvl = Level(1, (0, 1), FieldKernel(self.p, (0, 1)))
            self.levels[1] = lvl
            return lvl
        want_primitive = self.p**k <= self.config.table_field_limit
        primes = None
        if want_primitive:
            fact = self._factor_qm1(k)
            if fact.complete:
                primes = fact.primes()
            else:
                want_primitive = False
        modulus = polyroots.random_monic_irreducible(
            self.p, k, self.rng, want_primitive_x=want_primitive,
            group_order_primes=primes,
        )
        lvl = Level(k, modulus, FieldKernel(self.p, modulus))
        self.levels[k] = lvl
        self._build_embeddings(k)
        return lvl

    def _factor_qm1(self, k: int) -> Factorization:
        if k not in self._qm1_factors:
            self._qm1_factors[k] = factor(
                self.p**k - 1,
                self.config.trial_division_bound,
                self.config.rho_iterations,
                self.config.rng(f"factor:{self.p}:{k}"),
            )
        return self._qm1_factors[k]

    def freeze(self):
        self.frozen = True

    def cyclic_table(self, k: int):
        """Discrete-log tables for level k (built lazily, cached)."""
        if not hasattr(self, "_tables"):
            self._tables = {}
        if k in self._tables:
            return self._tables[k]
        from .zech import CyclicTable

        self.ensure_level(k)
        fact = self._factor_qm1(k)
        table = CyclicTable(
            self.levels[k].kernel, fact,
            self.config.rng(f"table:{self.p}:{k}"),
            self.config.table_field_limit,
        )
        self._tables[k] = table
        return table

    # --- embeddings ---

    def _build_embeddings(self, K: int):
        divs = [d for d in _divisors_of(K) if d != K]
        maximal = [d for d in divs if not any(d != e and e % d == 0 for e in divs)]
        maximal.sort(reverse=True)
        kern = self.levels[K].kernel
        placed: list[int] = []
        for m in maximal:
            if m == 1:
                self._store_embedding(1, K, kern.zero)
                placed.append(m)
                continue
            root = self._subfield_root(m, K)
            # twist the root so it agrees with already-placed embeddings
            # on every common subfield
            residue, mod = 0, 1
            constraints = []
            for prev in placed:
                g = math.gcd(m, prev)
                if g <= 1:
                    continue
                want = self._apply_embedding(prev, K, self.emb_gen[(g, prev)])
                have = self._hom_image(root, self.emb_gen[(g, m)])
                j = self._frobenius_distance(have, want, K, g)
                residue, mod = _crt(residue, mod, j, g)
                constraints.append((g, want))
            if residue:
                for _ in range(residue):
                    root = kern.frobenius(root)
            for g, want in constraints:
                got = self._hom_image(root, self.emb_gen[(g, m)])
                assert got == want, "embedding twist failed a subfield constraint"
            self._store_embedding(m, K, root)
            placed.append(m)
        for d in divs:
            if d in maximal or d == K:
                continue
            hosts = [m for m in maximal if m % d == 0]
            first = hosts[0]
            img = self._apply_embedding(first, K, self.emb_gen[(d, first)])
            for other in hosts[1:]:
                alt = self._apply_embedding(other, K, self.emb_gen[(d, other)])
                assert alt == img, "incompatible embedding lattice"
            self._store_embedding(d, K, img)

    def _store_embedding(self, k: int, K: int, root: tuple[int, ...]):
        kern = self.levels[K].kernel
        basis = [kern.one]
        for _ in range(k - 1):
            basis.append(kern.mul(basis[-1], root))
        self.emb[(k, K)] = basis
        self.emb_gen[(k, K)] = root

    def _hom_image(self, root, coeffs):
        """Image of a level element under x_src -> root, at the big level."""
        kern = self.levels[len(root)].kernel
        acc = kern.zero
        for c in reversed(coeffs):
            acc = kern.add(kern.mul(acc, root), kern.from_int(c))
        return acc

    def _frobenius_distance(self, have, want, K: int, bound: int) -> int:
        """Least j with have^(p^j) == want; both are roots of one minimal poly."""
        kern = self.levels[K].kernel
        cur = have
        for j in range(bound):
            if cur == want:
                return j
            cur = kern.frobenius(cur)
        raise AssertionError("elements are not Frobenius conjugate")

    def _subfield_root(self, m: int, K: int) -> tuple[int, ...]:
        """A root of the level-m modulus inside level K.

        Found without a large Cantor-Zassenhaus run: take the fixed
        space of Frobenius^m in level K, generate it by one element
        theta, root-find theta's minimal polynomial back at level m and
        transport the level-m generator through the two descriptions.
        """
        p = self.p
        big = self.levels[K]
        small = self.levels[m]
        frob = big.frob_matrix()
        acc = np.eye(K, dtype=np.int64)
        e = m
        base = frob
        while e:
            if e & 1:
                acc = acc @ base % p
            base = base @ base % p
            e >>= 1
        # row convention: v -> v @ frob, so fixed vectors span the left kernel
        fixed = (acc - np.eye(K, dtype=np.int64)).T % p
        _, basis = _nullspace(fixed, p)
        assert len(basis) == m, "fixed space has wrong dimension"
        rng = self.rng
        kern_big = big.kernel
        kern_small = small.kernel
        for _ in range(64):
            coeffs = np.zeros(K, dtype=np.int64)
            for b in basis:
                coeffs = (coeffs + rng.randrange(p) * b) % p
            theta = tuple(int(c) for c in coeffs)
            orbit = [theta]
            cur = theta
            for _ in range(m - 1):
                cur = kern_big.frobenius(cur)
                orbit.append(cur)
            if kern_big.frobenius(cur) != theta or len(set(orbit)) != m:
                continue
            # minimal polynomial of theta (degree m, coefficients in F_p)
            poly = [kern_big.one]
            for c in orbit:
                nxt = [kern_big.zero] * (len(poly) + 1)
                for i, a in enumerate(poly):
                    nxt[i + 1] = kern_big.add(nxt[i + 1], a)
                    nxt[i] = kern_big.sub(nxt[i], kern_big.mul(a, c))
                poly = nxt
            g_int = []
            ok = True
            for cf in poly:
                if any(cf[1:]):
                    ok = False
                    break
                g_int.append(cf[0])
            if not ok:
                continue
            # root of g at level m, then express x_m in that root's basis
            g_small = [kern_small.from_int(c) for c in g_int]
            rho = polyroots.one_root_in_field(kern_small, g_small, rng)
            power = kern_small.one
            rows = []
            for _ in range(m):
                rows.append(list(power))
                power = kern_small.mul(power, rho)
            a_mat = np.array(rows, dtype=np.int64).T
            x_m = np.zeros(m, dtype=np.int64)
            if m > 1:
                x_m[1] = 1
            sol = solve_mod(a_mat, x_m, p)
            assert sol is not None, "generator not in root basis"
            acc_el = kern_big.zero
            for c in reversed([int(v) for v in sol]):
                acc_el = kern_big.add(kern_big.mul(acc_el, theta), kern_big.from_int(c))
            root = acc_el
            # sanity: root satisfies the level-m modulus
            val = kern_big.zero
            for c in reversed(small.modulus):
                val = kern_big.add(kern_big.mul(val, root), kern_big.from_int(c))
            assert not any(val), "subfield root failed verification"
            return root
        raise AssertionError("could not generate subfield")

    def _apply_embedding(self, k: int, K: int, coeffs) -> tuple[int, ...]:
        if k == K:
            return tuple(coeffs)
        basis = self.emb[(k, K)]
        kern = self.levels[K].kernel
        acc = kern.zero
        for c, b in zip(coeffs, basis):
            if c:
                acc = kern.add(acc, kern.scalar_mul(c, b))
        return acc

    def embed(self, elt: FieldElement, K: int) -> FieldElement:
        if elt.level == K:
            return elt
        if K % elt.level != 0:
            raise LevelMismatch(f"level {elt.level} does not divide {K}")
        self.ensure_level(K)
        if (elt.level, K) not in self.emb:
            raise LevelMismatch(f"no embedding {elt.level} -> {K} constructed")
        return FieldElement(self, K, self._apply_embedding(elt.level, K, elt.coeffs))

    def project(self, elt: FieldElement, k: int) -> FieldElement | None:
        """Preimage at level k under the embedding, or None if absent."""
        if elt.level == k:
            return elt
        if elt.level % k != 0:
            raise LevelMismatch(f"level {k} does not divide {elt.level}")
        basis = self.emb[(k, elt.level)]
        a = np.array([list(b) for b in basis], dtype=np.int64).T
        sol = solve_mod(a, np.array(elt.coeffs, dtype=np.int64), self.p)
        if sol is None:
            return None
        return FieldElement(self, k, tuple(int(c) for c in sol))

    # --- element constructors ---

    def element(self, level: int, coeffs) -> FieldElement:
        self.ensure_level(level)
        kern = self.levels[level].kernel
        return FieldElement(self, level, kern.element(coeffs))

    def from_int(self, level: int, n: int) -> FieldElement:
        self.ensure_level(level)
        return FieldElement(self, level, self.levels[level].kernel.from_int(n))

    def zero(self, level: int = 1) -> FieldElement:
        return self.from_int(level, 0)

    def one(self, level: int = 1) -> FieldElement:
        return self.from_int(level, 1)

    def random_element(self, level: int, rng: random.Random) -> FieldElement:
        self.ensure_level(level)
        return FieldElement(
            self, level, tuple(rng.randrange(self.p) for _ in range(level))
        )

    def iter_elements(self, level: int):
        """All p^level elements, lexicographic in coefficients."""
        self.ensure_level(level)
        p = self.p
        idx = [0] * level
        while True:
            yield FieldElement(self, level, tuple(idx))
            i = 0
            while i < level:
                idx[i] += 1
                if idx[i] < p:
                    break
                idx[i] = 0
                i += 1
            if i == level:
                return

    # --- structure maps ---

    def min_level(self, elt: FieldElement) -> int:
        """Degree of the minimal field containing elt (orbit size)."""
        kern = self.levels[elt.level].kernel
        cur = kern.frobenius(elt.coeffs)
        k = 1
        while cur != elt.coeffs:
            cur = kern.frobenius(cur)
            k += 1
        return k

    def minimal_polynomial(self, elt: FieldElement) -> tuple[int, ...]:
        """Minimal polynomial over F_p, as an integer coefficient tuple."""
        if not hasattr(self, "_minpoly_cache"):
            self._minpoly_cache: dict = {}
        cache_key = (elt.level, elt.coeffs)
        hit = self._minpoly_cache.get(cache_key)
        if hit is not None:
            return hit
        table = getattr(self, "_tables", {}).get(elt.level)
        if table is not None:
            out = self._minimal_polynomial_table(table, elt)
        else:
            out = self._minimal_polynomial_generic(elt)
        if len(self._minpoly_cache) < 1_000_000:
            self._minpoly_cache[cache_key] = out
        return out

    def _minimal_polynomial_generic(self, elt: FieldElement) -> tuple[int, ...]:
        kern = self.levels[elt.level].kernel
        orbit = [elt.coeffs]
        cur = kern.frobenius(elt.coeffs)
        while cur != elt.coeffs:
            orbit.append(cur)
            cur = kern.frobenius(cur)
        poly = [kern.one]
        for c in orbit:
            nxt = [kern.zero] * (len(poly) + 1)
            for i, a in enumerate(poly):
                nxt[i + 1] = kern.add(nxt[i + 1], a)
                nxt[i] = kern.sub(nxt[i], kern.mul(a, c))
            poly = nxt
        out = []
        for cf in poly:
            assert not any(cf[1:]), "minimal polynomial not rational"
            out.append(cf[0])
        return tuple(out)

    def _minimal_polynomial_table(self, table, elt: FieldElement) -> tuple[int, ...]:
        """Same product, but in discrete-log arithmetic."""
        from .zech import ZERO

        idx = table.from_coeffs(elt.coeffs)
        if idx == ZERO:
            return (0, 1)
        n = table.order
        orbit = [idx]
        cur = idx * self.p % n
        while cur != idx:
            orbit.append(cur)
            cur = cur * self.p % n
        poly = [0]  # log of 1
        for r in orbit:
            nxt = [ZERO] * (len(poly) + 1)
            for i, a in enumerate(poly):
                if a == ZERO:
                    continue
                nxt[i + 1] = table.add(nxt[i + 1], a)
                nxt[i] = table.sub(nxt[i], table.mul(a, r))
            poly = nxt
        out = []
        for cf in poly:
            if cf == ZERO:
                out.append(0)
            else:
                coeffs = table.to_coeffs(cf)
                assert not any(coeffs[1:]), "minimal polynomial not rational"
                out.append(coeffs[0])
        return tuple(out)

    def descend(self, elt: FieldElement) -> FieldElement:
        """The same element at its minimal level (exact preimage)."""
        k = self.min_level(elt)
        if k == elt.level:
            return elt
        self.ensure_level(k)
        down = self.project(elt, k)
        assert down is not None, "descent failed despite orbit size"
        return down

    def equal_in_closure(self, a: FieldElement, b: FieldElement) -> bool:
        """Equality after embedding into a common level."""
        if a.level == b.level:
            return a.coeffs == b.coeffs
        common = a.level * b.level // math.gcd(a.level, b.level)
        return self.embed(a, common).coeffs == self.embed(b, common).coeffs

    # --- multiplicative structure ---

    def element_order(self, elt: FieldElement, group_order: Factorization) -> int:
        """Exact multiplicative order via divisor descent."""
        if elt.is_zero():
            raise NotAUnit("zero has no multiplicative order")
        if not group_order.complete:
            raise IncompleteFactorization(
                f"group order {group_order.n} not fully factored"
            )
        order = group_order.n
        if not (elt**order).is_one():
            raise ValueError("group_order is not a multiple of the element order")
        for q, e in group_order.factors:
            for _ in range(e):
                if (elt ** (order // q)).is_one():
                    order //= q
                else:
                    break
        return order

    def nth_root_of_unity(
        self, lam: int, lam_factors: Factorization | None = None
    ) -> FieldElement:
        """An element of exact multiplicative order lam.

        Lives at level ord_lam(p); the tower gains that level if absent.
        """
        p = self.p
        if lam == 1:
            return self.one(1)
        if lam <= 0 or math.gcd(lam, p) != 1:
            raise NotCoprime(f"{lam} is not coprime to p={p}")
        if lam_factors is None:
            lam_factors = factor(
                lam,
                self.config.trial_division_bound,
                self.config.rho_iterations,
                self.config.rng(f"factor-lam:{lam}"),
            )
        if not lam_factors.complete:
            raise IncompleteFactorization(f"cannot fully factor {lam}")
        phi = 1
        for q, e in lam_factors.factors:
            phi *= (q - 1) * q ** (e - 1)
        phi_fact = factor(
            phi,
            self.config.trial_division_bound,
            self.config.rho_iterations,
            self.config.rng(f"factor-phi:{lam}"),
        )
        if not phi_fact.complete:
            raise IncompleteFactorization(f"cannot fully factor phi({lam})")
        k = multiplicative_order(p, lam, phi_fact)
        self.ensure_level(k)
        q1 = p**k - 1
        assert q1 % lam == 0
        cof = q1 // lam
        rng = self.config.rng(f"root-of-unity:{p}:{lam}")
        prim = lam_factors.primes()
        for _ in range(256):
            cand = self.random_element(k, rng)
            if cand.is_zero():
                continue
            t = cand**cof
            if t.is_one():
                continue
            if any((t ** (lam // q)).is_one() for q in prim):
                continue
            return t
        raise AssertionError("failed to find a root of unity (probability ~0)")


def make_tower(
    p: int, degrees, config: RunConfig | None = None
) -> FieldTower:
    """A tower with a level for the divisor closure of the given degrees.

    All pairwise-compatible embeddings between constructed levels are
    built as part of level construction.
    """
    if not degrees:
        raise ValueError("degrees must be nonempty")
    tower = FieldTower(p, config)
    for d in sorted(set(degrees)):
        tower.ensure_level(d)
    return tower


def _crt(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    """Combine congruences, asserting consistency on the overlap."""
    g = math.gcd(m1, m2)
    assert (r1 - r2) % g == 0, "inconsistent embedding constraints"
    lcm = m1 // g * m2
    # solve r = r1 mod m1, r = r2 mod m2
    t = ((r2 - r1) // g * pow(m1 // g, -1, m2 // g)) % (m2 // g)
    return (r1 + m1 * t) % lcm, lcm


def _nullspace(a: np.ndarray, p: int):
    from .linmod import solve_affine_mod

    zero = np.zeros(a.shape[0], dtype=np.int64)
    return solve_affine_mod(a, zero, p)
