"""Desk-scale intersection censuses on products of the j-line.

Parametric subvarieties are tuples of rational coordinate maps.  The
census enumerates their points over growing extensions, buckets them by
the componentwise isogeny-class signature, counts matched pairs between
two varieties, and tracks how many distinct points of the first variety
have been matched so far.  Poles of a coordinate map produce the cusp
sentinel, which matches only itself.

Enumeration walks Frobenius orbits in the discrete-log tables when the
field is small enough for them, so each geometric point is labeled
once.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from . import polyroots
from .curves import IsogenyClassifier, JInvariant
from .errors import BudgetExceeded, IncompleteFactorization
from .fields import FieldElement, FieldTower
from .zech import CyclicTable

CUSP_SENTINEL = ("cusp",)


@dataclass
class RationalMap:
    """num(t)/den(t) with coefficients at the base level of the variety."""

    num: list[tuple[int, ...]]
    den: list[tuple[int, ...]]


@dataclass
class ParametricVariety:
    n: int
    params: int
    base_level: int
    maps: list  # params=0: coordinate values (FieldElement or None for cusp)
    #             params=1: RationalMap per coordinate
    marker: str = "general"  # "diagonal" | "product_of_points" | "full_plane" | "general"

    @classmethod
    def diagonal(cls, tower: FieldTower, n: int, level: int = 1) -> "ParametricVariety":
        tower.ensure_level(level)
        kern = tower.level(level).kernel
        ident = RationalMap([kern.zero, kern.one], [kern.one])
        return cls(n, 1, level, [ident] * n, marker="diagonal")

    @classmethod
    def from_univariate(cls, tower: FieldTower, level: int, coord_polys,
                        marker: str = "general") -> "ParametricVariety":
        """coord_polys: per coordinate (num_coeffs, den_coeffs) over the level."""
        tower.ensure_level(level)
        kern = tower.level(level).kernel
        maps = []
        for num, den in coord_polys:
            nm = [kern.element(c if isinstance(c, (list, tuple)) else [c]) for c in num]
            dn = [kern.element(c if isinstance(c, (list, tuple)) else [c]) for c in den]
            if not any(any(c) for c in dn):
                raise ValueError("denominator is identically zero")
            maps.append(RationalMap(nm, dn))
        return cls(len(maps), 1, level, maps, marker=marker)

    @classmethod
    def point(cls, tower: FieldTower, values, level: int = 1) -> "ParametricVariety":
        vals = []
        for v in values:
            if v is None:
                vals.append(None)
            elif isinstance(v, FieldElement):
                vals.append(v)
            else:
                vals.append(tower.from_int(level, v))
        return cls(len(vals), 0, level, vals, marker="product_of_points")

    @classmethod
    def full_plane(cls, tower: FieldTower, n: int = 2, level: int = 1) -> "ParametricVariety":
        return cls(n, 2, level, [], marker="full_plane")


def signature_of(classifier: IsogenyClassifier, coords) -> tuple:
    """Componentwise canonical labels; cusp coordinates map to the sentinel."""
    out = []
    for c in coords:
        if c is None or (isinstance(c, JInvariant) and c.is_cusp):
            out.append(CUSP_SENTINEL)
            continue
        j = c if isinstance(c, JInvariant) else JInvariant(c)
        out.append(classifier.label(j).as_tuple())
    return tuple(out)


@dataclass
class CensusRow:
    m: int
    points_v: int
    points_w: int
    signatures_v: int
    signatures_w: int
    matched_pairs: int
    new_matched_v: int
    cumulative_matched_v: int
    undecided_v: int
    undecided_w: int
    predicted: float
    ratio: float | None


@dataclass
class CensusReport:
    schema_version: int
    p: int
    base_level: int
    n: int
    m_max: int
    rows: list[CensusRow] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(
            {
                "schema_version": self.schema_version,
                "p": self.p,
                "base_level": self.base_level,
                "n": self.n,
                "m_max": self.m_max,
                "rows": [vars(r) for r in self.rows],
            },
            sort_keys=True,
        )

    CSV_COLUMNS = [
        "m", "points_v", "points_w", "signatures_v", "signatures_w",
        "matched_pairs", "new_matched_v", "cumulative_matched_v",
        "undecided_v", "undecided_w", "predicted", "ratio",
    ]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.CSV_COLUMNS)
        for r in self.rows:
            d = vars(r)
            w.writerow([d[c] for c in self.CSV_COLUMNS])
        return buf.getvalue()


class _LevelView:
    """Orbit-wise element enumeration and map evaluation at one level."""

    def __init__(self, tower: FieldTower, level: int):
        self.tower = tower
        self.level = level
        self.q = tower.p**level
        self.table: CyclicTable | None = None
        if self.q <= tower.config.table_field_limit:
            self.table = tower.cyclic_table(level)

    def orbits(self):
        """Yield (element, orbit_size) once per Frobenius orbit."""
        tower = self.tower
        level = self.level
        if self.table is not None:
            t = self.table
            n = t.order
            yield tower.from_int(level, 0), 1
            seen = np.zeros(n, dtype=bool)
            p = tower.p
            for idx in range(n):
                if seen[idx]:
                    continue
                size = 0
                cur = idx
                while not seen[cur]:
                    seen[cur] = True
                    size += 1
                    cur = cur * p % n
                yield FieldElement(tower, level, t.to_coeffs(idx)), size
            return
        if self.q > tower.config.enumeration_budget:
            raise BudgetExceeded(f"cannot enumerate a field of size {self.q}")
        seen_keys: set = set()
        for elt in tower.iter_elements(level):
            mp = tower.minimal_polynomial(elt)
            if mp in seen_keys:
                continue
            seen_keys.add(mp)
            yield elt, len(mp) - 1

    def eval_map(self, rmap: RationalMap, t: FieldElement) -> FieldElement | None:
        kern = self.tower.level(self.level).kernel
        num = self._eval_poly(kern, rmap.num, t.coeffs)
        den = self._eval_poly(kern, rmap.den, t.coeffs)
        if not any(den):
            return None  # pole: cusp
        val = kern.mul(num, kern.inv(den))
        return FieldElement(self.tower, self.level, val)

    def _eval_poly(self, kern, coeffs, x):
        acc = kern.zero
        for c in reversed(coeffs):
            acc = kern.add(kern.mul(acc, x), c)
        return acc

    def lift_map(self, rmap: RationalMap, base_level: int) -> RationalMap:
        tower = self.tower
        num = [tower.embed(FieldElement(tower, base_level, c), self.level).coeffs
               for c in rmap.num]
        den = [tower.embed(FieldElement(tower, base_level, c), self.level).coeffs
               for c in rmap.den]
        return RationalMap(num, den)


def enumerate_points(tower: FieldTower, var: ParametricVariety, m: int):
    """Yield (parameter, coordinates) for every point over the m-th extension.

    Coordinates use None for a cusp (a pole of a coordinate map); every
    parameter value is yielded, poles included.
    """
    level = var.base_level * m
    tower.ensure_level(level)
    if var.params == 0:
        yield (), [None if v is None else tower.embed(v, level) for v in var.maps]
        return
    if var.params != 1:
        raise BudgetExceeded("only points and curves enumerate explicitly")
    if tower.p**level > tower.config.enumeration_budget:
        raise BudgetExceeded(f"enumeration budget exceeded at size {tower.p**level}")
    view = _LevelView(tower, level)
    lifted = [view.lift_map(rm, var.base_level) for rm in var.maps]
    for t in tower.iter_elements(level):
        yield (t,), [view.eval_map(rm, t) for rm in lifted]


def _variety_points(tower: FieldTower, var: ParametricVariety, m: int):
    """Yield (key, orbit_size, coords) per Frobenius orbit of parameters.

    key is stable across extensions (minimal polynomial data of the
    parameter), so cumulative bookkeeping can dedupe across m.
    """
    level = var.base_level * m
    tower.ensure_level(level)
    if var.params == 0:
        coords = []
        for v in var.maps:
            coords.append(None if v is None else tower.embed(v, level))
        yield ("point",), 1, coords
        return
    if var.params != 1:
        raise BudgetExceeded("only points and curves enumerate explicitly")
    view = _LevelView(tower, level)
    lifted = [view.lift_map(rm, var.base_level) for rm in var.maps]
    for t, orbit in view.orbits():
        coords = [view.eval_map(rm, t) for rm in lifted]
        key = tower.minimal_polynomial(t)
        yield key, orbit, coords


def census(
    tower: FieldTower,
    classifier: IsogenyClassifier,
    v: ParametricVariety,
    w: ParametricVariety,
    m_max: int,
) -> CensusReport:
    """Bucket W by signature per extension degree and probe V against it."""
    if v.n != w.n:
        raise ValueError("varieties live in different ambient products")
    if v.base_level != w.base_level:
        raise ValueError("varieties must share a base field")
    report = CensusReport(1, tower.p, v.base_level, v.n, m_max)
    matched_keys: set = set()
    cumulative_points = 0
    for m in range(1, m_max + 1):
        w_buckets: dict[tuple, int] = {}
        points_w = 0
        undecided_w = 0
        for key, orbit, coords in _variety_points(tower, w, m):
            points_w += orbit
            try:
                sig = signature_of(classifier, coords)
            except (IncompleteFactorization, BudgetExceeded):
                undecided_w += orbit
                continue
            w_buckets[sig] = w_buckets.get(sig, 0) + orbit
        points_v = 0
        undecided_v = 0
        matched_pairs = 0
        new_matched = 0
        v_sigs: set = set()
        for key, orbit, coords in _variety_points(tower, v, m):
            points_v += orbit
            try:
                sig = signature_of(classifier, coords)
            except (IncompleteFactorization, BudgetExceeded):
                undecided_v += orbit
                continue
            v_sigs.add(sig)
            hits = w_buckets.get(sig, 0)
            if hits:
                matched_pairs += orbit * hits
                if key not in matched_keys:
                    matched_keys.add(key)
                    new_matched += orbit
        cumulative_points += new_matched
        q = tower.p**v.base_level
        predicted = float(q ** (2 * m)) / float(q ** (v.n * m / 2))
        ratio = (matched_pairs / predicted) if predicted > 0 else None
        report.rows.append(
            CensusRow(
                m=m,
                points_v=points_v,
                points_w=points_w,
                signatures_v=len(v_sigs),
                signatures_w=len(w_buckets),
                matched_pairs=matched_pairs,
                new_matched_v=new_matched,
                cumulative_matched_v=cumulative_points,
                undecided_v=undecided_v,
                undecided_w=undecided_w,
                predicted=predicted,
                ratio=ratio,
            )
        )
    return report


def _map_is_constant(tower: FieldTower, level: int, rmap: RationalMap):
    """The constant value if the map is constant, else None; cusp as 'cusp'."""
    kern = tower.level(level).kernel
    num = polyroots.trim(kern, list(rmap.num))
    den = polyroots.trim(kern, list(rmap.den))
    g = polyroots.poly_gcd(kern, num, den)
    if polyroots.deg(kern, g) > 0:
        num, _ = polyroots.poly_divmod(kern, num, g)
        den, _ = polyroots.poly_divmod(kern, den, g)
    dn = polyroots.deg(kern, num)
    dd = polyroots.deg(kern, den)
    if dn < 0:
        return FieldElement(tower, level, kern.zero)  # the zero map
    if dn == 0 and dd == 0:
        val = kern.mul(num[0], kern.inv(den[0]))
        return FieldElement(tower, level, val)
    return None


def classify_goodness(
    tower: FieldTower,
    classifier: IsogenyClassifier,
    z: ParametricVariety,
) -> tuple[str, str]:
    """Good/bad/unknown for a subvariety of the j-line square.

    Points are good exactly when their two coordinates are isogenous;
    a horizontal or vertical line is bad exactly when the fixed
    coordinate is supersingular; every other curve and the full plane
    are good.
    """
    if z.n != 2:
        raise ValueError("classification requires ambient dimension 2")
    if z.marker == "full_plane" or z.params == 2:
        return "good", "the full plane is good"
    if z.params == 0:
        a, b = z.maps
        ja = JInvariant.cusp() if a is None else JInvariant(a)
        jb = JInvariant.cusp() if b is None else JInvariant(b)
        if classifier.geometric_isogeny_test(ja, jb):
            return "good", "point with isogenous coordinates"
        return "bad", "point with non-isogenous coordinates"
    if z.params == 1:
        consts = [_map_is_constant(tower, z.base_level, rm) for rm in z.maps]
        n_const = sum(c is not None for c in consts)
        if n_const == 0:
            return "good", "curve with both coordinates non-constant"
        if n_const == 2:
            ja, jb = (JInvariant(c) for c in consts)
            if classifier.geometric_isogeny_test(ja, jb):
                return "good", "degenerate point with isogenous coordinates"
            return "bad", "degenerate point with non-isogenous coordinates"
        fixed = next(c for c in consts if c is not None)
        if classifier.is_supersingular(JInvariant(fixed)):
            return "bad", "line through a supersingular point"
        return "good", "line through an ordinary point"
    return "unknown", f"cannot decide line-ness for {z.params} parameters"


def heuristic_table(
    tower: FieldTower,
    classifier: IsogenyClassifier,
    n: int,
    m_max: int,
) -> list[dict]:
    """Empirical distinct-label counts against the q^{nm/2} scaling."""
    q = tower.p
    rows = []
    for m in range(1, m_max + 1):
        tower.ensure_level(m)
        view = _LevelView(tower, m)
        labels: set = set()
        undecided = 0
        for elt, orbit in view.orbits():
            try:
                labels.add(classifier.label(JInvariant(elt)).as_tuple())
            except (IncompleteFactorization, BudgetExceeded):
                undecided += orbit
        count = len(labels) ** n
        predicted = float(q) ** (n * m / 2)
        rows.append(
            {
                "m": m,
                "distinct_labels": len(labels),
                "distinct_signatures": count,
                "predicted": predicted,
                "ratio": count / predicted,
                "undecided": undecided,
            }
        )
    return rows


def family_divisor_probe(
    tower: FieldTower,
    classifier: IsogenyClassifier,
    family: ParametricVariety,
    divisor_poly: dict[tuple[int, ...], int],
    m_max: int,
) -> list[dict]:
    """Family points whose signature matches a point on the divisor V(F).

    F is a polynomial in n variables given as monomial dict; its zero
    set is enumerated by solving for the last coordinate against all
    assignments of the others.
    """
    n = family.n
    if not divisor_poly or all(not any(e) for e in divisor_poly):
        raise ValueError("F must be nonconstant")
    if max(sum(e) for e in divisor_poly) == 0:
        raise ValueError("F must be nonconstant")
    matches = []
    for m in range(1, m_max + 1):
        level = family.base_level * m
        tower.ensure_level(level)
        kern = tower.level(level).kernel
        budget = tower.config.enumeration_budget
        if tower.p ** (level * (n - 1)) > budget:
            raise BudgetExceeded("divisor enumeration budget exceeded")
        buckets: dict[tuple, list] = {}
        rng = tower.config.rng(f"divisor-probe:{m}")
        for assign in _tuples(tower, level, n - 1):
            poly = _specialize_last(tower, level, divisor_poly, assign)
            if polyroots.deg(kern, poly) < 1:
                if not polyroots.trim(kern, poly):
                    # identically zero: every value works; record sentinel
                    for last, _ in _LevelView(tower, level).orbits():
                        pt = list(assign) + [last]
                        sig = signature_of(classifier, pt)
                        buckets.setdefault(sig, []).append(tuple(x.coeffs for x in pt))
                continue
            for root, _mult in polyroots.roots_in_field(kern, poly, rng):
                pt = list(assign) + [FieldElement(tower, level, root)]
                sig = signature_of(classifier, pt)
                buckets.setdefault(sig, []).append(tuple(x.coeffs for x in pt))
        for key, orbit, coords in _variety_points(tower, family, m):
            if any(c is None for c in coords):
                continue
            sig = signature_of(classifier, coords)
            if sig in buckets:
                matches.append(
                    {
                        "m": m,
                        "family_point": [list(c.coeffs) for c in coords],
                        "divisor_point": [list(c) for c in buckets[sig][0]],
                        "signature": [list(s) for s in sig],
                    }
                )
    return matches


def _tuples(tower: FieldTower, level: int, k: int):
    if k == 0:
        yield ()
        return
    for rest in _tuples(tower, level, k - 1):
        for elt in tower.iter_elements(level):
            yield rest + (elt,)


def _specialize_last(tower: FieldTower, level: int, poly, assign):
    """F with all but the last variable fixed, as univariate coefficients."""
    kern = tower.level(level).kernel
    deg_last = max(e[-1] for e in poly)
    out = [kern.zero] * (deg_last + 1)
    for exps, coeff in poly.items():
        val = kern.from_int(coeff)
        for x, e in zip(assign, exps[:-1]):
            val = kern.mul(val, kern.pow(x.coeffs, e))
        out[exps[-1]] = kern.add(out[exps[-1]], val)
    return out
