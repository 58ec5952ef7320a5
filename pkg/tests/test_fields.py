import random

import pytest

from heckelab import (
    CharTooSmall,
    FieldTower,
    LevelMismatch,
    NotCoprime,
    NotPrime,
    RunConfig,
    factor,
)
from heckelab.errors import ExtensionTooLarge


def test_tower_construction_guards():
    with pytest.raises(NotPrime):
        FieldTower(4, RunConfig(seed=1))
    with pytest.raises(CharTooSmall):
        FieldTower(3, RunConfig(seed=1))
    tw = FieldTower(5, RunConfig(seed=1, max_extension_degree=10))
    with pytest.raises(ExtensionTooLarge):
        tw.ensure_level(11)


def test_divisor_closure():
    tw = FieldTower(5, RunConfig(seed=2))
    tw.ensure_level(6)
    assert sorted(tw.levels) == [1, 2, 3, 6]
    tw.ensure_level(4)
    assert sorted(tw.levels) == [1, 2, 3, 4, 6]


def test_make_tower_examples():
    from heckelab import make_tower

    assert sorted(make_tower(5, [1], RunConfig(seed=2)).levels) == [1]
    assert sorted(make_tower(5, [5], RunConfig(seed=2)).levels) == [1, 5]
    tw = make_tower(5, [2, 6], RunConfig(seed=2))
    assert sorted(tw.levels) == [1, 2, 3, 6]
    assert set(tw.emb) >= {(1, 2), (1, 3), (2, 6), (3, 6), (1, 6)}
    with pytest.raises(ValueError):
        make_tower(5, [], RunConfig(seed=2))


def test_frozen_tower_rejects_new_levels():
    tw = FieldTower(5, RunConfig(seed=2))
    tw.ensure_level(2)
    tw.freeze()
    with pytest.raises(LevelMismatch):
        tw.ensure_level(4)
    # arithmetic on existing levels still works
    assert (tw.one(2) + tw.one(2)) == tw.from_int(2, 2)


def test_modulus_irreducibility_witnessed_by_orbit():
    # x generates a degree-k orbit iff the modulus is irreducible of degree k
    tw = FieldTower(7, RunConfig(seed=3))
    for k in (2, 3, 5, 8):
        tw.ensure_level(k)
        x = tw.element(k, [0, 1]) if k > 1 else tw.one(1)
        assert tw.min_level(x) == k


def test_embeddings_are_homomorphisms():
    tw = FieldTower(5, RunConfig(seed=4))
    tw.ensure_level(12)
    rng = random.Random(9)
    pairs = [(k, K) for K in sorted(tw.levels) for k in sorted(tw.levels)
             if k != K and K % k == 0]
    for k, K in pairs:
        samples = 1000 if K <= 6 else 60
        for _ in range(samples):
            a = tw.random_element(k, rng)
            b = tw.random_element(k, rng)
            assert tw.embed(a, K) + tw.embed(b, K) == tw.embed(a + b, K)
            assert tw.embed(a, K) * tw.embed(b, K) == tw.embed(a * b, K)


def test_embedding_composition_consistency():
    # 12 = 4*3 with maximal divisors 6 and 4 overlapping in 2
    tw = FieldTower(5, RunConfig(seed=5))
    tw.ensure_level(12)
    rng = random.Random(10)
    for _ in range(30):
        a = tw.random_element(2, rng)
        assert tw.embed(tw.embed(a, 4), 12) == tw.embed(tw.embed(a, 6), 12)
        assert tw.embed(tw.embed(a, 6), 12) == tw.embed(a, 12)
        b = tw.random_element(3, rng)
        assert tw.embed(tw.embed(b, 6), 12) == tw.embed(b, 12)


def test_embedding_lattice_level_20():
    tw = FieldTower(5, RunConfig(seed=6))
    tw.ensure_level(20)
    rng = random.Random(11)
    for _ in range(20):
        a = tw.random_element(2, rng)
        assert tw.embed(tw.embed(a, 4), 20) == tw.embed(tw.embed(a, 10), 20)


def test_level_mismatch_raises():
    tw = FieldTower(5, RunConfig(seed=7))
    tw.ensure_level(2)
    with pytest.raises(LevelMismatch):
        tw.one(1) + tw.one(2)
    with pytest.raises(LevelMismatch):
        tw.one(1) == tw.one(2)
    assert tw.equal_in_closure(tw.one(1), tw.one(2))


def test_project_descend_minpoly():
    tw = FieldTower(5, RunConfig(seed=8))
    tw.ensure_level(8)
    rng = random.Random(12)
    for _ in range(30):
        a = tw.random_element(2, rng)
        e = tw.embed(a, 8)
        k = tw.min_level(e)
        assert k in (1, 2)
        down = tw.descend(e)
        assert down.level == k
        assert tw.embed(down, 8) == e
        mp = tw.minimal_polynomial(e)
        assert len(mp) == k + 1 and mp[-1] == 1
        # the minimal polynomial annihilates the element
        acc = tw.zero(8)
        for c in reversed(mp):
            acc = acc * e + tw.from_int(8, c)
        assert acc.is_zero()
    # projecting an element outside the subfield reports absence
    while True:
        g = tw.random_element(8, rng)
        if tw.min_level(g) == 8:
            break
    assert tw.project(g, 4) is None


def test_roots_of_unity():
    tw = FieldTower(5, RunConfig(seed=9))
    t = tw.nth_root_of_unity(1)
    assert t.is_one()
    t3 = tw.nth_root_of_unity(3)
    assert t3.level == 2 and (t3**3).is_one() and not t3.is_one()
    t23 = tw.nth_root_of_unity(23)
    assert t23.level == 22
    assert (t23**23).is_one()
    assert tw.element_order(t23, factor(23)) == 23
    with pytest.raises(NotCoprime):
        tw.nth_root_of_unity(10)


def test_frobenius_additive_and_multiplicative():
    tw = FieldTower(7, RunConfig(seed=10))
    tw.ensure_level(6)
    rng = random.Random(13)
    for _ in range(50):
        a = tw.random_element(6, rng)
        b = tw.random_element(6, rng)
        assert (a + b).frobenius() == a.frobenius() + b.frobenius()
        assert (a * b).frobenius() == a.frobenius() * b.frobenius()
        assert a.frobenius(6) == a
        assert a.frobenius() == a ** 7
