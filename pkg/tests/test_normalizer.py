import random
from fractions import Fraction

import pytest

from webcat.diagram import Morphism, cross, dot, id_, identity, merge, parse, random_diagram, split, stack, tensor, wdot
from webcat.normalizer import (
    LevelParams,
    NormalForm,
    RingError,
    balloon_expand,
    cfd_to_diagram,
    cyclotomic_normalize,
    enumerate_cfds,
    g_element,
    graded_dimension,
    identity_cfd,
    make_cfd,
    multiply_normal,
    normalize,
)
from webcat.rules import get_rule


def nf(m, ring="Z"):
    return normalize(m, ring=ring)


def single(E, c=1):
    return NormalForm(E.source, E.target, {E: c})


CROSS = make_cfd((1, 1), (1, 1), [[0, 1], [1, 0]])


def test_cfd_diagrams():
    assert Morphism.of(cfd_to_diagram(identity_cfd((2,)))) == id_(2)
    assert Morphism.of(cfd_to_diagram(CROSS)) == cross(1, 1)
    assert Morphism.of(cfd_to_diagram(make_cfd((2,), (2,), [[2]], [[(1,)]]))) == wdot(2, 1)


def test_normalize_examples():
    assert nf(parse("split(1,1);merge(1,1)")) == single(identity_cfd((2,)), 2)
    assert nf(parse("merge(1,1);split(1,1)")) == single(identity_cfd((1, 1))) + single(CROSS)
    assert nf(stack(wdot(2, 1), wdot(2, 1))) == single(make_cfd((2,), (2,), [[2]], [[(1, 1)]]))


def test_dot_through_crossing():
    # dot on the top-left leg of a crossing
    out = nf(stack(cross(1, 1), tensor(dot(1), id_(1))))
    dotted = make_cfd((1, 1), (1, 1), [[0, 1], [1, 0]], [[(), (1,)], [(), ()]])
    assert set(out.coeffs) == {dotted, identity_cfd((1, 1))}
    assert out.coeffs[dotted] == 1


def test_multiply_normal_examples():
    x = nf(stack(cross(1, 1), tensor(dot(1), id_(1))))
    one = single(identity_cfd((1, 1)))
    assert multiply_normal(one, x) == x
    assert multiply_normal(x, one) == x
    w1 = nf(wdot(2, 1))
    w2 = nf(wdot(2, 2))
    assert multiply_normal(w1, w2) == single(make_cfd((2,), (2,), [[2]], [[(2, 1)]]))
    assert multiply_normal(nf(merge(1, 1)), nf(split(1, 1))) == single(identity_cfd((2,)), 2)


def test_balloon_expand_examples():
    assert balloon_expand((), (), 1, 1) == single(identity_cfd((2,)), 2)
    for a in range(1, 4):
        for b in range(1, 4):
            assert balloon_expand((a,), (), a, b) == single(make_cfd((a + b,), (a + b,), [[a + b]], [[(a,)]]))


def test_g_element_examples():
    assert g_element(1, 3) == dot(1) - id_(1) * 3
    assert g_element(1, 0) == dot(1)
    u = Fraction(5, 3)
    assert g_element(2, u) == dot(2) - wdot(2, 1) * u + id_(2) * (u * (u + 1))


def test_cyclotomic_examples():
    assert cyclotomic_normalize(dot(1), LevelParams.of((0,))).is_zero()
    assert cyclotomic_normalize(dot(1), LevelParams.of((7,))) == single(identity_cfd((1,)), 7)
    got = cyclotomic_normalize(stack(dot(1), dot(1)), LevelParams.of((0, 1)))
    assert got == nf(dot(1))


def test_graded_dimension_examples():
    assert sum(graded_dimension((2,), (2,), None, level=2)) == 3
    assert graded_dimension((1, 1), (1, 1), None, level=1) == [2]
    assert sum(graded_dimension((1, 1), (1, 1), None, level=2)) == 8
    assert graded_dimension((2,), (1, 1), 2) == [1, 2, 3]


def test_json_roundtrip_is_stable():
    x = nf(parse("merge(1,2);wdot(3,2);split(2,1)")) * Fraction(1, 3)
    text = x.to_json()
    assert NormalForm.from_json(text) == x
    assert NormalForm.from_json(text).to_json() == text


def test_ring_z_rejects_fractions():
    lhs, rhs = get_rule("R14").instantiate(a=2)
    with pytest.raises(RingError):
        nf(rhs, ring="Z")
    assert nf(rhs, ring="Q") == nf(lhs)


def _random_inputs(seed, count, max_weight=3, max_degree=3):
    rng = random.Random(seed)
    for _ in range(count):
        w = rng.randint(1, max_weight)
        yield Morphism.of(random_diagram(rng, w, rng.randint(1, 4), max_degree), rng.choice([1, -2, 3]))


def test_idempotent_and_degree_filtered():
    for m in _random_inputs(1, 120):
        out = nf(m)
        assert nf(out.to_morphism()) == out
        top = max(d.degree for d in m.terms)
        assert all(E.degree <= top for E in out.coeffs)


@pytest.mark.parametrize("a", range(1, 5))
def test_packets_commute(a):
    for r in range(1, a + 1):
        for t in range(1, a + 1):
            assert nf(stack(wdot(a, r), wdot(a, t))) == nf(stack(wdot(a, t), wdot(a, r)))


def test_enumerate_level_bounds_partition_length():
    for E in enumerate_cfds((2, 1), (1, 2), level=3):
        assert all(len(p) <= 2 for row in E.P for p in row)


def test_cyclotomic_consistency():
    rng = random.Random(4)
    for m in _random_inputs(2, 60):
        u = tuple(rng.choice([0, 1, -2, 3]) for _ in range(rng.randint(1, 3)))
        L = LevelParams.of(u)
        assert cyclotomic_normalize(nf(m, ring="Q"), L) == cyclotomic_normalize(m, L)


def test_cyclotomic_kills_g():
    for r in range(1, 4):
        for u in (0, 2, -1):
            assert cyclotomic_normalize(g_element(r, u), LevelParams.of((u,))).is_zero()


def test_multiply_matches_stacking():
    rng = random.Random(9)
    for _ in range(60):
        g = Morphism.of(random_diagram(rng, 3, rng.randint(1, 3), 2))
        f = Morphism.of(random_diagram(rng, 3, rng.randint(1, 3), 2, source=g.target))
        assert multiply_normal(nf(f), nf(g)) == nf(stack(g, f))


def test_thread_safe():
    from concurrent.futures import ThreadPoolExecutor

    inputs = list(_random_inputs(6, 40))
    want = [nf(m) for m in inputs]
    with ThreadPoolExecutor(4) as ex:
        got = list(ex.map(nf, inputs))
    assert got == want
