import random

from heckelab.fastpoly import (
    FieldKernel,
    PackedFieldOps,
    PolyKernel,
    poly_mul,
    polmul_field,
)
from heckelab import polyroots as pr


def _naive_conv(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def test_poly_mul_matches_naive():
    rng = random.Random(1)
    for p in (5, 97):
        for _ in range(40):
            a = [rng.randrange(p) for _ in range(rng.randrange(1, 40))]
            b = [rng.randrange(p) for _ in range(rng.randrange(1, 40))]
            assert poly_mul(a, b, p) == _naive_conv(a, b, p)


def test_field_kernel_ring_axioms():
    rng = random.Random(2)
    for p, k in ((5, 8), (7, 5), (97, 14), (5, 25)):
        f = pr.random_monic_irreducible(p, k, rng)
        fk = FieldKernel(p, f)
        for _ in range(60):
            a = tuple(rng.randrange(p) for _ in range(k))
            b = tuple(rng.randrange(p) for _ in range(k))
            c = tuple(rng.randrange(p) for _ in range(k))
            assert fk.mul(a, b) == fk.mul(b, a)
            assert fk.mul(a, fk.add(b, c)) == fk.add(fk.mul(a, b), fk.mul(a, c))
            if any(a):
                assert fk.mul(a, fk.inv(a)) == fk.one
        q = p**k
        for _ in range(3):
            a = tuple(rng.randrange(p) for _ in range(k))
            if any(a):
                assert fk.pow(a, q - 1) == fk.one
            assert fk.frobenius(a) == fk.pow(a, p)


def test_packed_vs_schoolbook_field_mul():
    rng = random.Random(3)
    f = pr.random_monic_irreducible(5, 9, rng)
    fast = FieldKernel(5, f)
    slow = FieldKernel(5, f)
    slow._schoolbook = True
    fast._schoolbook = False
    for _ in range(300):
        a = tuple(rng.randrange(5) for _ in range(9))
        b = tuple(rng.randrange(5) for _ in range(9))
        assert fast.mul(a, b) == slow.mul(a, b)


def test_poly_kernel_against_schoolbook():
    rng = random.Random(4)
    for p, k, d in ((5, 6, 9), (97, 3, 7), (5, 1, 40)):
        f = pr.random_monic_irreducible(p, k, rng)
        fk = FieldKernel(p, f)
        g = [tuple(rng.randrange(p) for _ in range(k)) for _ in range(d)] + [fk.one]
        pk = PolyKernel(fk, g)
        slow = PolyKernel(fk, g)
        slow._use_packed = False
        slow._barrett = False
        for _ in range(30):
            a = [tuple(rng.randrange(p) for _ in range(k)) for _ in range(d)]
            b = [tuple(rng.randrange(p) for _ in range(k)) for _ in range(d)]
            assert pk.mulmod(a, b) == slow.mulmod(a, b)


def test_barrett_reduction_matches():
    rng = random.Random(5)
    f = pr.random_monic_irreducible(7, 5, rng)
    fk = FieldKernel(7, f)
    g = [tuple(rng.randrange(7) for _ in range(5)) for _ in range(8)] + [fk.one]
    normal = PolyKernel(fk, g)
    barrett = PolyKernel.__new__(PolyKernel)
    PolyKernel.__init__(barrett, fk, g)
    barrett._barrett = True
    import numpy as np

    ginv = barrett._series_inverse(list(reversed(barrett.g)), barrett.D - 1)
    barrett._ginv_rev_vec = np.array([list(c) for c in ginv], dtype=np.int64)
    barrett._g_vec = np.array([list(c) for c in barrett.g], dtype=np.int64)
    for _ in range(100):
        a = [tuple(rng.randrange(7) for _ in range(5)) for _ in range(8)]
        b = [tuple(rng.randrange(7) for _ in range(5)) for _ in range(8)]
        assert normal.mulmod(a, b) == barrett.mulmod(a, b)


def test_polmul_field_full_product():
    rng = random.Random(6)
    f = pr.random_monic_irreducible(5, 7, rng)
    fk = FieldKernel(5, f)
    for _ in range(25):
        a = [tuple(rng.randrange(5) for _ in range(7)) for _ in range(11)]
        b = [tuple(rng.randrange(5) for _ in range(7)) for _ in range(6)]
        got = polmul_field(fk, a, b)
        want = pr.poly_mul(fk, a, b)
        assert got == want


def test_packed_field_ops():
    rng = random.Random(7)
    f = pr.random_monic_irreducible(5, 25, rng)
    fk = FieldKernel(5, f)
    ops = PackedFieldOps(fk)
    for _ in range(100):
        a = tuple(rng.randrange(5) for _ in range(25))
        b = tuple(rng.randrange(5) for _ in range(25))
        pa, pb = ops.pack(a), ops.pack(b)
        assert ops.to_tuple(ops.mul(pa, pb)) == fk.mul(a, b)
        assert ops.to_tuple(ops.clean(ops.add(pa, pb))) == fk.add(a, b)
        assert ops.to_tuple(ops.clean(ops.sub(pa, pb))) == fk.sub(a, b)
        if any(a):
            assert ops.to_tuple(ops.inv(pa)) == fk.inv(a)
        assert ops.is_zero(ops.sub(pa, pa))
