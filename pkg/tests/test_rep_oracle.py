import random
from fractions import Fraction

import pytest

from webcat.diagram import Atom, Morphism, compose, cross, dot, expand_sugar, id_, identity, merge, random_diagram, split, stack, tensor, wdot
from webcat.normalizer import NormalForm, identity_cfd, make_cfd, normalize
from webcat.rep_oracle import (
    DimensionError,
    OracleError,
    RationalMatrix,
    RepParams,
    act_dot,
    act_packet,
    act_web_generator,
    evaluate,
    hom_rank,
    oracle_normalize,
    solve_exact,
    wedge_basis,
    wedge_dim,
)

N2 = RepParams.rectangle(2, 1)


def col(m, key, params):
    return evaluate(m, params).columns.get(key, {})


def test_merge_on_thin_strands():
    assert col(merge(1, 1), ((1,), (2,)), N2) == {((1, 2),): 1}
    assert col(merge(1, 1), ((2,), (1,)), N2) == {((1, 2),): -1}
    assert col(merge(1, 1), ((1,), (1,)), N2) == {}


def test_split_signed_shuffle():
    assert col(split(1, 1), ((1, 2),), N2) == {((1,), (2,)): 1, ((2,), (1,)): -1}


def test_crossing_signs():
    P = RepParams.rectangle(3, 1)
    assert col(cross(1, 2), ((1,), (2, 3)), P) == {((2, 3), (1,)): 1}
    assert col(cross(1, 1), ((1,), (2,)), P) == {((2,), (1,)): -1}


def test_dot_single_column():
    P = RepParams.rectangle(3, 1, c=(5,))
    assert P.u == (5,)
    assert evaluate(dot(1), P) == evaluate(id_(1) * 5, P)


@pytest.mark.parametrize("u", [0, 2, Fraction(-1, 2)])
def test_level_one_kills_g(u):
    P = RepParams.for_u(3, (u,))
    g = dot(1) - id_(1) * u
    # the relation lives on the leftmost strand only
    for right in [(), (1,), (1, 1), (2,)]:
        assert evaluate(tensor(g, identity(right)), P).is_zero()
    assert not evaluate(tensor(id_(1), g), P).is_zero()


def test_packets_against_sugar():
    P = RepParams.rectangle(3, 2, c=(1, 4))
    for a in range(1, 4):
        assert act_packet(a, 0, (), (1,), P) == evaluate(identity((a, 1)), P)
        for r in range(1, a + 1):
            want = evaluate(tensor(expand_sugar(wdot(a, r)), id_(1)), P)
            assert act_packet(a, r, (), (1,), P) == want
    assert act_packet(1, 1, (2,), (), P) == act_dot((2,), (), P)


def test_web_generator_in_context():
    P = RepParams.rectangle(2, 2)
    got = act_web_generator(Atom("merge", 1, 1), (1,), (), P)
    assert got == evaluate(tensor(id_(1), merge(1, 1)), P)
    with pytest.raises(ValueError):
        act_web_generator(Atom("dot", 1), (), (), P)


def test_identity_and_bigon():
    P = RepParams.rectangle(2, 2)
    M = evaluate(identity((1, 2)), P)
    assert M.shape == (wedge_dim((1, 2), P.N),) * 2 == (4 * 6, 4 * 6)
    assert all(v == {k: 1} for k, v in M.columns.items())
    assert evaluate(stack(split(1, 1), merge(1, 1)), P) == evaluate(id_(2) * 2, P)


def test_too_thick():
    with pytest.raises(DimensionError):
        wedge_basis((3,), 2)


def test_oracle_normalize_examples():
    assert oracle_normalize(stack(split(1, 1), merge(1, 1))) == NormalForm((2,), (2,), {identity_cfd((2,)): 2})
    E = make_cfd((1,), (1,), [[1]], [[(1, 1)]])
    assert oracle_normalize(stack(dot(1), dot(1))) == NormalForm((1,), (1,), {E: 1})


def test_oracle_normalize_agrees_with_rewriting():
    rng = random.Random(21)
    for _ in range(40):
        m = Morphism.of(random_diagram(rng, 3, 3, 3))
        assert oracle_normalize(m, seed=1) == normalize(m)


@pytest.mark.parametrize("mu, nu, ell, want", [
    ((1,), (1,), 2, 2),
    ((2,), (2,), 2, 3),
    ((1, 1), (2,), 1, 1),
])
def test_hom_rank_examples(mu, nu, ell, want):
    assert hom_rank(mu, nu, ell, RepParams.rectangle(3, ell)) == want


def _random_pair(rng):
    g = Morphism.of(random_diagram(rng, 3, rng.randint(1, 3), 2))
    f = Morphism.of(random_diagram(rng, 3, rng.randint(1, 3), 2, source=g.target))
    return f, g


def test_functoriality():
    P = RepParams.rectangle(3, 3, c=(2, -1, 7))
    rng = random.Random(8)
    for _ in range(25):
        f, g = _random_pair(rng)
        assert evaluate(compose(f, g), P) == evaluate(f, P) @ evaluate(g, P)


def _kron(A, B, N):
    cols = {}
    for ka, va in A.columns.items():
        for kb, vb in B.columns.items():
            cols[ka + kb] = {k1 + k2: c1 * c2 for k1, c1 in va.items() for k2, c2 in vb.items()}
    return RationalMatrix(A.source + B.source, A.target + B.target, N, cols)


def test_tensor_of_webs_is_kronecker():
    # without dots strands do not see each other
    P = RepParams.rectangle(3, 2)
    rng = random.Random(13)
    for _ in range(20):
        f = Morphism.of(random_diagram(rng, rng.randint(1, 2), 2, 0))
        g = Morphism.of(random_diagram(rng, rng.randint(1, 2), 2, 0))
        assert evaluate(tensor(f, g), P) == _kron(evaluate(f, P), evaluate(g, P), P.N)


def test_parameter_map():
    shape = (1, 2, 2, 3)
    base = RepParams(shape, (0, 0, 0))
    for i in range(3):
        c = [0, 0, 0]
        c[i] = Fraction(7, 2)
        moved = RepParams(shape, tuple(c))
        diff = [x - y for x, y in zip(moved.u, base.u)]
        assert diff == [Fraction(7, 2) if j == i else 0 for j in range(3)]


def test_solve_exact():
    assert solve_exact([[1, 1, 3], [1, -1, 1]], 2) == [2, 1]
    assert solve_exact([[1, 1, 3]], 2) is None
    with pytest.raises(OracleError):
        solve_exact([[1, 1, 3], [2, 2, 7]], 2)
