import pytest

from heckelab import (
    FieldTower,
    RunConfig,
    ZeroShift,
    solve_affine_frobenius,
    frobenius_orbit,
    frobenius_power_matrix,
)

import numpy as np


def test_solutions_d1(tower5):
    # s^5 = s + 1: exactly five solutions in F_{5^5}, none of them in F_5
    sols = solve_affine_frobenius(tower5, (5, 1), 1, tower5.from_int(1, 1))
    assert len(sols) == 5
    one = tower5.from_int(5, 1)
    for s in sols:
        assert s**5 == s + one
        assert tower5.min_level(s) == 5
        assert len(frobenius_orbit(tower5, s, 1)) == 5


def test_zero_shift_rejected(tower5):
    with pytest.raises(ZeroShift):
        solve_affine_frobenius(tower5, (5, 1), 1, tower5.from_int(1, 0))


def test_solution_count_is_exactly_q_to_d(tower5):
    sols = solve_affine_frobenius(tower5, (5, 1), 2, tower5.from_int(1, 3))
    assert len(sols) == 25
    lam = tower5.from_int(10, 3)
    for s in sols[:4]:
        assert s ** (5**2) == s + lam


def test_nonprime_base_field(tower5):
    # q = 25: solve s^(q) = s + g over F_{q^5}
    tower5.ensure_level(2)
    g = tower5.element(2, (0, 1))
    sols = solve_affine_frobenius(tower5, (5, 2), 1, g)
    assert len(sols) == 25
    big = sols[0].level
    assert big == 10
    ge = tower5.embed(g, big)
    for s in sols[:3]:
        assert s ** (25) == s + ge


def test_frobenius_power_matrix_consistency(tower5, rng):
    tower5.ensure_level(6)
    m = frobenius_power_matrix(tower5, 6, 2)
    for _ in range(20):
        a = tower5.random_element(6, rng)
        img = np.array(a.coeffs, dtype=np.int64) @ m % 5
        assert tuple(int(c) for c in img) == a.frobenius(2).coeffs


def test_exhaustive_cross_check_d1(tower5):
    # every element of F_{5^5} tested directly against the linear solve
    sols = solve_affine_frobenius(tower5, (5, 1), 1, tower5.from_int(1, 1))
    got = {s.coeffs for s in sols}
    one = tower5.from_int(5, 1)
    brute = {s.coeffs for s in tower5.iter_elements(5) if s**5 == s + one}
    assert got == brute


def test_extension_budget(config):
    from heckelab import FieldTower
    from heckelab.errors import ExtensionTooLarge
    from heckelab import make_translate_spec, translate_witness_search

    tower = FieldTower(5, RunConfig(seed=77, max_extension_degree=20))
    spec = make_translate_spec(tower, 1, [0, 1])
    with pytest.raises(ExtensionTooLarge):
        translate_witness_search(tower, spec, [5])  # needs degree 25 > 20
