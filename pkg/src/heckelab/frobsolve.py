"""Frobenius-affine equations: all s with s^(q^d) = s + shift.

The map s -> s^(q^d) - s is F_p-linear on F_{q^(p d)}, so the equation
is one exact linear solve over F_p.  The solution set is empty or a
coset of the kernel, which is F_{q^d} itself (size q^d).
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import BudgetExceeded, ZeroShift
from .fields import FieldElement, FieldTower
from .linmod import solve_affine_mod


def frobenius_power_matrix(tower: FieldTower, level: int, t: int) -> np.ndarray:
    """Row-convention matrix of x -> x^(p^t) on the given level.

    The image of an element with coefficient row v is v @ M.
    """
    kern = tower.level(level).kernel
    w = kern.element([0, 1]) if level > 1 else kern.one
    for _ in range(t % level):
        w = kern.frobenius(w)
    rows = [kern.one]
    cur = kern.one
    for _ in range(level - 1):
        cur = kern.mul(cur, w)
        rows.append(cur)
    return np.array([list(r) for r in rows], dtype=np.int64)


def solve_affine_frobenius(
    tower: FieldTower,
    q_power: tuple[int, int],
    d: int,
    shift: FieldElement,
    solution_budget: int | None = None,
) -> list[FieldElement]:
    """All s in F_{q^(p d)} with s^(q^d) = s + shift, for q = p^e.

    shift must be nonzero and live at a level dividing e*p*d.
    """
    p, e = q_power
    if p != tower.p:
        raise ValueError("characteristic mismatch with the tower")
    if shift.is_zero():
        raise ZeroShift("shift is zero; the equation degenerates to a subfield")
    budget = solution_budget or tower.config.solution_budget
    big = e * p * d
    tower.ensure_level(big)
    lam = tower.embed(shift, big)
    m = frobenius_power_matrix(tower, big, e * d)
    a = (m - np.eye(big, dtype=np.int64)) % tower.p
    b = np.array(lam.coeffs, dtype=np.int64)
    # row convention: solve v @ a = b
    particular, basis = solve_affine_mod(a.T, b, tower.p)
    if particular is None:
        return []
    dim = len(basis)
    assert dim == e * d, "kernel is not the intermediate subfield"
    n_solutions = tower.p**dim
    if n_solutions > budget:
        raise BudgetExceeded(
            f"{n_solutions} solutions exceed the enumeration budget {budget}"
        )
    basis_mat = np.array(basis, dtype=np.int64)
    out = []
    for digits in itertools.product(range(tower.p), repeat=dim):
        vec = particular.copy()
        if dim:
            vec = (vec + np.asarray(digits, dtype=np.int64) @ basis_mat) % tower.p
        out.append(FieldElement(tower, big, tuple(int(c) for c in vec)))
    out.sort(key=lambda s: s.coeffs)
    return out


def frobenius_orbit(tower: FieldTower, elt: FieldElement, t: int) -> list[FieldElement]:
    """Orbit of elt under x -> x^(p^t), in application order."""
    kern = tower.level(elt.level).kernel
    t_eff = t % elt.level
    orbit = [elt]
    if t_eff == 0:
        return orbit
    cur = elt.coeffs
    while True:
        nxt = cur
        for _ in range(t_eff):
            nxt = kern.frobenius(nxt)
        if nxt == elt.coeffs:
            break
        cur = nxt
        orbit.append(FieldElement(tower, elt.level, cur))
        if len(orbit) > elt.level:
            raise AssertionError("orbit exceeded field degree")
    return orbit