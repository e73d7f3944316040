import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symprod import DomainError, factor_integer, is_prime, prime_divisors
from symprod.unipoly import sylvester_resultant


def test_examples():
    assert factor_integer(4096) == {2: 12}
    assert factor_integer(1) == {}
    assert factor_integer(-1) == {}
    assert factor_integer(2 * 3 * 3 * 97) == {2: 1, 3: 2, 97: 1}
    with pytest.raises(DomainError):
        factor_integer(0)


def test_resultant_bad_prime_extraction():
    # the resultant of (16z^2 - 29t^2, 16t^2) factors as a power of two
    res = sylvester_resultant([-29, 0, 16], [16, 0, 0], 2, 2)
    assert factor_integer(int(res)) == {2: 16}
    assert prime_divisors(int(res)) == [2]


def test_larger_composites():
    n = (10 ** 9 + 7) * (10 ** 9 + 9)       # product of two large primes
    f = factor_integer(n)
    assert f == {10 ** 9 + 7: 1, 10 ** 9 + 9: 1}
    m = 2 ** 5 * 3 ** 4 * 1000003 ** 2
    assert factor_integer(m) == {2: 5, 3: 4, 1000003: 2}


def test_is_prime():
    assert is_prime(2) and is_prime(97) and is_prime(10 ** 9 + 7)
    assert not is_prime(1) and not is_prime(561) and not is_prime(10 ** 9 + 8)


@given(st.integers(min_value=1, max_value=10 ** 12))
@settings(max_examples=80, deadline=None)
def test_reconstruction(n):
    f = factor_integer(n)
    assert math.prod(p ** e for p, e in f.items()) == n
    assert all(is_prime(p) for p in f)


def test_reconstruction_with_sign():
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randrange(-10 ** 9, 10 ** 9) or 5
        f = factor_integer(n)
        assert math.prod(p ** e for p, e in f.items()) == abs(n)
