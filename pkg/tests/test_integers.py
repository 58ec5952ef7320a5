import random

import pytest

from heckelab import (
    Factorization,
    NotAUnit,
    IncompleteFactorization,
    bsgs_dlog,
    divisors,
    factor,
    fundamental_discriminant,
    is_prime,
    multiplicative_order,
)


def test_primality_against_sieve():
    limit = 20000
    sieve = [True] * limit
    sieve[0] = sieve[1] = False
    for i in range(2, 150):
        if sieve[i]:
            for j in range(i * i, limit, i):
                sieve[j] = False
    for n in range(limit):
        assert is_prime(n) == sieve[n], n


def test_factor_examples():
    f = factor(123)
    assert f.factors == [(3, 1), (41, 1)] and f.cofactor == 1
    assert factor(1).factors == [] and factor(1).cofactor == 1
    f23 = factor(23)
    assert f23.factors == [(23, 1)]


def test_factor_reassembles():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randrange(1, 10**9)
        f = factor(n)
        assert f.reassemble() == n
        for p, _ in f.factors:
            assert is_prime(p)


def test_factor_large_semiprime_and_powers():
    n = 1000003 * 1000033
    f = factor(n, trial_bound=10**4)
    assert f.complete and sorted(f.primes()) == [1000003, 1000033]
    f = factor(2**40)
    assert f.factors == [(2, 40)]
    # 5^22 + 1 style desk-scale composite
    f = factor(5**22 + 1)
    assert f.complete and f.reassemble() == 5**22 + 1


def test_incomplete_factorization_is_flagged():
    n = (10**9 + 7) * (10**9 + 9)
    f = factor(n, trial_bound=10**3, rho_iterations=0)
    assert not f.complete
    assert f.cofactor == n
    assert divisors(f) == [1]


def test_divisors():
    f = factor(123)
    assert divisors(f) == [1, 3, 41, 123]
    assert divisors(factor(24)) == [1, 2, 3, 4, 6, 8, 12, 24]


def test_multiplicative_order_examples():
    assert multiplicative_order(2, 7, factor(6)) == 3
    assert multiplicative_order(1, 7, factor(6)) == 1
    assert multiplicative_order(3, 7, factor(6)) == 6
    with pytest.raises(NotAUnit):
        multiplicative_order(0, 7, factor(6))
    with pytest.raises(IncompleteFactorization):
        multiplicative_order(3, 7, Factorization(6, [(2, 1)], 3))


def test_order_divides_and_is_exact():
    rng = random.Random(11)
    for _ in range(100):
        lam = rng.randrange(3, 4000)
        x = rng.randrange(1, lam)
        import math

        if math.gcd(x, lam) != 1:
            continue
        phi = sum(1 for k in range(1, lam) if math.gcd(k, lam) == 1)
        order = multiplicative_order(x, lam, factor(phi))
        assert phi % order == 0
        assert pow(x, order, lam) == 1
        for q in factor(order).primes():
            assert pow(x, order // q, lam) != 1


def test_bsgs_dlog_examples():
    assert bsgs_dlog(4, 2, 7) == 2
    assert bsgs_dlog(1, 2, 7) == 0
    assert bsgs_dlog(3, 2, 7) is None


def test_bsgs_dlog_least_and_membership():
    rng = random.Random(3)
    for _ in range(60):
        lam = rng.choice([11, 31, 97, 101, 1009])
        g = rng.randrange(2, lam)
        x = rng.randrange(1, lam)
        j = bsgs_dlog(x, g, lam)
        orbit = []
        e = 1
        for _ in range(lam):
            orbit.append(e)
            e = e * g % lam
            if e == 1:
                break
        if x in orbit:
            assert j == orbit.index(x)
        else:
            assert j is None


def test_fundamental_discriminant():
    assert fundamental_discriminant(-16) == (-4, 2)
    assert fundamental_discriminant(-4) == (-4, 1)
    assert fundamental_discriminant(-3) == (-3, 1)
    assert fundamental_discriminant(-27) == (-3, 3)
    assert fundamental_discriminant(-19) == (-19, 1)
    assert fundamental_discriminant(-48) == (-3, 4)
    d0, f = fundamental_discriminant(-20)
    assert d0 == -20 and f == 1  # -20 = 4*(-5), -5 = 3 mod 4
    with pytest.raises(ValueError):
        fundamental_discriminant(-5)  # 3 mod 4 is not a discriminant
    with pytest.raises(ValueError):
        fundamental_discriminant(4)
