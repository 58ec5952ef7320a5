"""Hecke correspondences through classical modular polynomials.

The level-N correspondence is realized by the symmetric integer
polynomial Phi_N, shipped as a static data file and checked against its
degree (psi(N)) and symmetry at load time.  Neighbors of a j-invariant
are the roots of the specialized univariate polynomial, found by
squarefree/distinct-degree/equal-degree factorization and materialized
in the extension level where each factor splits.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from importlib import resources

from . import polyroots
from .curves import JInvariant
from .errors import LevelMismatch, MalformedData, UnknownLevel
from .fields import FieldElement, FieldTower

SHIPPED_LEVELS = (1, 2, 3, 5, 7, 11, 13)


def psi_degree(n: int) -> int:
    """Degree of the level-n correspondence: n * prod_{l | n} (1 + 1/l)."""
    out = n
    m = n
    l = 2
    while l * l <= m:
        if m % l == 0:
            out += out // l
            while m % l == 0:
                m //= l
        l += 1
    if m > 1:
        out += out // m
    return out


@dataclass
class ModularPolynomial:
    level: int
    monomials: dict[tuple[int, int], int]  # full symmetric completion
    degree: int

    def coefficient(self, i: int, j: int) -> int:
        return self.monomials.get((i, j), 0)


_LOAD_CACHE: dict[int, ModularPolynomial] = {}
_REDUCED_CACHE: dict[tuple[int, int], list[list[int]]] = {}


def load_phi(n: int, text: str | None = None) -> ModularPolynomial:
    """Parse and validate the shipped Phi_n data file.

    The data directory can be overridden with the HECKELAB_PHI_DIR
    environment variable (files named phi<N>.txt).
    """
    override = os.environ.get("HECKELAB_PHI_DIR")
    if text is None and override is None and n in _LOAD_CACHE:
        return _LOAD_CACHE[n]
    if n not in SHIPPED_LEVELS:
        raise UnknownLevel(f"no shipped modular polynomial for level {n}")
    if text is None:
        if override:
            with open(os.path.join(override, f"phi{n}.txt")) as fh:
                return load_phi(n, fh.read())
        text = (
            resources.files("heckelab").joinpath(f"data/phi{n}.txt").read_text()
        )
    raw: dict[tuple[int, int], int] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise MalformedData(f"phi{n}.txt line {lineno}: expected 'i j coeff'")
        try:
            i, j, c = int(parts[0]), int(parts[1]), int(parts[2])
        except ValueError as exc:
            raise MalformedData(f"phi{n}.txt line {lineno}: {exc}") from exc
        if n != 1 and i < j:
            raise MalformedData(f"phi{n}.txt line {lineno}: expected i >= j")
        if (i, j) in raw:
            raise MalformedData(f"phi{n}.txt line {lineno}: duplicate monomial")
        raw[(i, j)] = c
    if n == 1:
        mono = dict(raw)
        if mono != {(1, 0): 1, (0, 1): -1}:
            raise MalformedData("phi1.txt must encode the diagonal x - y")
        out = ModularPolynomial(1, mono, 1)
        _LOAD_CACHE[1] = out
        return out
    mono = {}
    for (i, j), c in raw.items():
        mono[(i, j)] = c
        if i != j:
            if (j, i) in raw:
                raise MalformedData(f"phi{n}.txt stores both orders of {(i, j)}")
            mono[(j, i)] = c
    psi = psi_degree(n)
    deg_x = max(i for i, _ in mono)
    deg_y = max(j for _, j in mono)
    if deg_x != psi or deg_y != psi:
        raise MalformedData(f"phi{n}.txt degree {deg_x}/{deg_y} != psi({n}) = {psi}")
    if mono.get((psi, 0)) != 1:
        raise MalformedData(f"phi{n}.txt is not monic")
    out = ModularPolynomial(n, mono, psi)
    _LOAD_CACHE[n] = out
    return out


def _reduced_rows(mp: ModularPolynomial, p: int) -> list[list[int]]:
    """Coefficient rows mod p: rows[i][j] = coeff of x^i y^j."""
    key = (mp.level, p)
    if key not in _REDUCED_CACHE:
        rows = [[0] * (mp.degree + 1) for _ in range(mp.degree + 1)]
        for (i, j), c in mp.monomials.items():
            rows[i][j] = c % p
        _REDUCED_CACHE[key] = rows
    return _REDUCED_CACHE[key]


def phi_eval(mp: ModularPolynomial, x: FieldElement, y: FieldElement) -> FieldElement:
    """Phi_N(x, y) with integer coefficients reduced mod p."""
    if x.level != y.level:
        raise LevelMismatch("phi_eval operands must share a tower level")
    tower = x.tower
    rows = _reduced_rows(mp, tower.p)
    kern = tower.level(x.level).kernel
    acc = kern.zero
    for i in range(mp.degree, -1, -1):
        inner = kern.zero
        row = rows[i]
        for j in range(mp.degree, -1, -1):
            inner = kern.mul(inner, y.coeffs)
            c = row[j]
            if c:
                inner = kern.add(inner, kern.from_int(c))
        acc = kern.add(kern.mul(acc, x.coeffs), inner)
    return FieldElement(tower, x.level, acc)


def phi_univariate(mp: ModularPolynomial, j: FieldElement) -> list[tuple[int, ...]]:
    """Phi_N(j, y) as a univariate coefficient list over j's level."""
    tower = j.tower
    rows = _reduced_rows(mp, tower.p)
    kern = tower.level(j.level).kernel
    out = []
    for ydeg in range(mp.degree + 1):
        acc = kern.zero
        for xdeg in range(mp.degree, -1, -1):
            acc = kern.mul(acc, j.coeffs)
            c = rows[xdeg][ydeg]
            if c:
                acc = kern.add(acc, kern.from_int(c))
        out.append(acc)
    return out


def hecke_neighbors(
    tower: FieldTower,
    j: JInvariant,
    n: int,
    rng: random.Random | None = None,
) -> list[JInvariant]:
    """Roots of Phi_n(j, y), with multiplicity, over splitting levels."""
    if j.is_cusp:
        raise ValueError("cusp points have no Hecke neighbors here")
    mp = load_phi(n)
    if n == 1:
        return [j]
    if rng is None:
        rng = tower.config.rng(f"neighbors:{tower.p}:{n}")
    v = j.value
    base_level = v.level
    kern = tower.level(base_level).kernel
    poly = phi_univariate(mp, v)
    out: list[JInvariant] = []
    for factor, mult in polyroots.factor_poly(kern, poly, rng):
        d = polyroots.deg(kern, factor)
        if d == 1:
            root = kern.mul(kern.neg(factor[0]), kern.inv(factor[1]))
            for _ in range(mult):
                out.append(JInvariant(FieldElement(tower, base_level, root)))
            continue
        big = base_level * d
        tower.ensure_level(big)
        big_kern = tower.level(big).kernel
        lifted = [
            tower.embed(FieldElement(tower, base_level, c), big).coeffs
            for c in factor
        ]
        root = polyroots.one_root_in_field(big_kern, lifted, rng)
        conj = root
        for _ in range(d):
            for _ in range(mult):
                out.append(JInvariant(FieldElement(tower, big, conj)))
            nxt = conj
            for _ in range(base_level):
                nxt = big_kern.frobenius(nxt)
            conj = nxt
    out.sort(key=lambda it: (it.value.level, it.value.coeffs))
    return out


@dataclass
class HeckeEdge:
    kind: str  # "cyclic" | "frobenius" | "verschiebung"
    level: int | None  # cyclic level N, else None
    source: JInvariant
    target: JInvariant


def verify_edge(tower: FieldTower, edge: HeckeEdge) -> bool:
    s, t = edge.source, edge.target
    if s.is_cusp or t.is_cusp:
        return False
    if edge.kind == "frobenius":
        common = _common_level(tower, s.value, t.value)
        return tower.embed(s.value, common).frobenius() == tower.embed(t.value, common)
    if edge.kind == "verschiebung":
        common = _common_level(tower, s.value, t.value)
        return tower.embed(t.value, common).frobenius() == tower.embed(s.value, common)
    mp = load_phi(edge.level)
    common = _common_level(tower, s.value, t.value)
    val = phi_eval(mp, tower.embed(s.value, common), tower.embed(t.value, common))
    return val.is_zero()


def _common_level(tower: FieldTower, a: FieldElement, b: FieldElement) -> int:
    import math

    lvl = a.level * b.level // math.gcd(a.level, b.level)
    tower.ensure_level(lvl)
    return lvl


def _canonical_key(tower: FieldTower, j: JInvariant):
    if j.is_cusp:
        return ("cusp",)
    down = tower.descend(j.value)
    return (down.level, down.coeffs)


def isogeny_path_search(
    tower: FieldTower,
    j1: JInvariant,
    j2: JInvariant,
    prime_set: tuple[int, ...] = (2, 3),
    max_depth: int = 4,
    rng: random.Random | None = None,
    level_budget: int | None = None,
) -> list[HeckeEdge] | None:
    """Bounded BFS over cyclic and Frobenius edges from j1 toward j2.

    A returned path re-verifies edge by edge.  Absence of a path says
    nothing about non-isogeny; the search is one-sided by design.
    """
    if j1.is_cusp or j2.is_cusp:
        raise ValueError("path search requires non-cusp endpoints")
    for n in prime_set:
        if n not in SHIPPED_LEVELS or n == tower.p:
            raise UnknownLevel(f"cyclic level {n} unavailable in characteristic {tower.p}")
    if rng is None:
        rng = tower.config.rng(f"pathsearch:{tower.p}")
    budget = level_budget or tower.config.max_extension_degree
    target_key = _canonical_key(tower, j2)
    start_key = _canonical_key(tower, j1)
    if start_key == target_key:
        return []
    frontier: list[tuple[JInvariant, list[HeckeEdge]]] = [(j1, [])]
    seen = {start_key}
    for _ in range(max_depth):
        nxt: list[tuple[JInvariant, list[HeckeEdge]]] = []
        for node, path in frontier:
            candidates: list[HeckeEdge] = []
            fr = JInvariant(node.value.frobenius())
            candidates.append(HeckeEdge("frobenius", None, node, fr))
            for n in prime_set:
                if node.value.level * psi_degree(n) > budget:
                    continue
                for nb in hecke_neighbors(tower, node, n, rng):
                    candidates.append(HeckeEdge("cyclic", n, node, nb))
            for edge in candidates:
                key = _canonical_key(tower, edge.target)
                if key in seen:
                    continue
                seen.add(key)
                new_path = path + [edge]
                if key == target_key:
                    assert all(verify_edge(tower, e) for e in new_path)
                    return new_path
                nxt.append((edge.target, new_path))
        frontier = nxt
    return None
