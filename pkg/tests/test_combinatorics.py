from itertools import permutations

import pytest

from webcat.combinatorics import (
    InvalidInput,
    binomial,
    composition,
    elementary_symmetric,
    enumerate_bounded_partitions,
    enumerate_contingency,
    factorial,
    partition,
    transpose,
)


def _compositions(w):
    if w == 0:
        yield ()
        return
    for first in range(1, w + 1):
        for rest in _compositions(w - first):
            yield (first,) + rest


def test_contingency_small_cases():
    assert enumerate_contingency((2,), (2,)) == [((2,),)]
    two = enumerate_contingency((1, 1), (1, 1))
    assert sorted(two) == sorted([((1, 0), (0, 1)), ((0, 1), (1, 0))])
    assert len(enumerate_contingency((2, 1), (1, 1, 1))) == 3


def test_contingency_margins():
    for A in enumerate_contingency((3, 1, 2), (2, 2, 2)):
        assert tuple(map(sum, A)) == (3, 1, 2)
        assert tuple(map(sum, zip(*A))) == (2, 2, 2)


@pytest.mark.parametrize("w", range(1, 7))
def test_transpose_is_a_bijection(w):
    comps = list(_compositions(w))
    # all pairs up to weight 4, a sample of the bigger ones
    pairs = [(l, m) for l in comps for m in comps]
    if w > 4:
        pairs = pairs[:: max(1, len(pairs) // 60)]
    for lam, mu in pairs:
        left = enumerate_contingency(lam, mu)
        right = enumerate_contingency(mu, lam)
        assert len(left) == len(right)
        assert sorted(transpose(A) for A in left) == sorted(right)


def test_bounded_partitions_listing():
    assert enumerate_bounded_partitions(0, None, 5) == [()]
    assert enumerate_bounded_partitions(2, 1, 2) == [(), (1,), (2,)]
    assert enumerate_bounded_partitions(2, 2, 2) == [(), (1,), (2,), (1, 1)]


def _gf_count(max_part, d):
    # coefficients of prod_{i<=max_part} 1/(1-q^i), truncated at q^d
    coef = [1] + [0] * d
    for i in range(1, max_part + 1):
        for n in range(i, d + 1):
            coef[n] += coef[n - i]
    return sum(coef)


@pytest.mark.parametrize("max_part", range(0, 5))
@pytest.mark.parametrize("d", range(0, 8))
def test_bounded_partitions_count(max_part, d):
    got = enumerate_bounded_partitions(max_part, None, d)
    assert len(got) == _gf_count(max_part, d)
    assert len(set(got)) == len(got)


def test_elementary_symmetric_examples():
    assert elementary_symmetric((1,), 2) == {(1, 0): 1, (0, 1): 1}
    assert elementary_symmetric((2,), 2) == {(1, 1): 1}
    assert elementary_symmetric((2, 1), 2) == {(2, 1): 1, (1, 2): 1}


@pytest.mark.parametrize("nu", [(1,), (2, 1), (3, 1, 1), (2, 2)])
def test_elementary_symmetric_is_symmetric(nu):
    f = elementary_symmetric(nu, 3)
    for w in permutations(range(3)):
        g = {tuple(e[w[i]] for i in range(3)): c for e, c in f.items()}
        assert g == f


def test_binomial_factorial():
    assert binomial(3, 1) == 3
    assert binomial(5, 2) == 10
    assert binomial(4, -1) == 0 and binomial(4, 5) == 0
    assert factorial(4) == 24
    assert factorial(0) == 1


def test_validation():
    with pytest.raises(InvalidInput):
        composition([1, 0, 2])
    with pytest.raises(InvalidInput):
        partition([2, 0])
    # parts are sorted, not rejected
    assert partition([1, 3, 1]) == (3, 1, 1)
