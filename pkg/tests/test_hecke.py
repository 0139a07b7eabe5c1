from fractions import Fraction

import pytest

from webcat.diagram import identity, stack
from webcat.hecke import (
    HeckeBasisElement,
    IdempotentTableau,
    embed_affine_hecke,
    end_dimension,
    faithful_keys,
    hecke_action_matrix,
    hecke_basis,
    hecke_rank,
    idempotent_matrix,
    idempotent_support,
    idempotent_tableaux,
    perm_module_hom_dim,
    perm_morphism,
    reduced_word,
    wschur_dim_check,
)
from webcat.normalizer import LevelParams, graded_dimension, normalize
from webcat.rep_oracle import RepParams, evaluate


def nf(m):
    return normalize(m)


def test_s_squared_and_braid():
    g = embed_affine_hecke(3)
    assert nf(stack(g["s1"], g["s1"])) == nf(identity((1, 1, 1)))
    assert nf(stack(g["s1"], g["s2"], g["s1"])) == nf(stack(g["s2"], g["s1"], g["s2"]))


def test_x_s_relation():
    g = embed_affine_hecke(2)
    one = identity((1, 1))
    assert nf(stack(g["x2"], g["s1"])) == nf(stack(g["s1"], g["x1"]) - one)


def test_xs_commute():
    g = embed_affine_hecke(3)
    assert nf(stack(g["x1"], g["x3"])) == nf(stack(g["x3"], g["x1"]))


def test_reduced_words():
    for w in [(1, 2, 3), (2, 1, 3), (3, 2, 1), (2, 3, 1)]:
        word = reduced_word(w)
        inversions = sum(1 for i in range(3) for j in range(i + 1, 3) if w[i] > w[j])
        assert len(word) == inversions
    assert nf(perm_morphism((2, 1))) == nf(embed_affine_hecke(2)["s1"])


def test_action_matrix_examples():
    P = RepParams.rectangle(2, 2, c=(3, 8))
    e = HeckeBasisElement((1, 2), (0, 0))
    assert hecke_action_matrix(e, 2, P) == evaluate(identity((1, 1)), P)
    single = RepParams.rectangle(3, 1, c=(Fraction(4, 3),))
    x1 = HeckeBasisElement((1,), (1,))
    X = hecke_action_matrix(x1, 1, single)
    assert X.columns == {k: {k: Fraction(4, 3)} for k in X.columns}
    assert len(X.columns) == 3
    g = embed_affine_hecke(2)
    X1 = hecke_action_matrix(g["x1"], 2, P)
    X2 = hecke_action_matrix(g["x2"], 2, P)
    assert X1 @ X2 == X2 @ X1


def test_basis_element_validation():
    with pytest.raises(ValueError):
        HeckeBasisElement((1, 1), (0, 0))
    with pytest.raises(ValueError):
        HeckeBasisElement((2, 1), (0,))
    assert len(hecke_basis(2, 2)) == end_dimension(2, 2) == 8


def test_worked_idempotent():
    P = RepParams((1, 2, 2), (0, 0))
    A = IdempotentTableau((1, 2, 2), (0, 1, 1))
    assert A.index_word() == (3, 5)
    assert A.multicomposition() == ((), (1, 1))
    want = {(2, 4), (4, 2), (2, 5), (5, 2), (4, 3), (3, 4), (3, 5), (5, 3)}
    assert set(idempotent_support(A, P)) == want
    M = idempotent_matrix(A, P)
    assert M @ M == M


def test_idempotents_resolve_identity():
    P = RepParams((1, 2, 2), (3, 11))
    tabs = idempotent_tableaux((1, 2, 2), 2)
    mats = [idempotent_matrix(A, P) for A in tabs]
    total = mats[0]
    for M in mats[1:]:
        total = total + M
    assert total == evaluate(identity((1, 1)), P)
    for i, M in enumerate(mats):
        for j, K in enumerate(mats):
            if i != j:
                assert (M @ K).is_zero()


def test_from_entries():
    A = IdempotentTableau.from_entries((1, 2), [[2], [0, 1]])
    assert A.rightmost == (2, 1)
    with pytest.raises(ValueError):
        IdempotentTableau.from_entries((1, 2), [[2], [1, 0]])


@pytest.mark.parametrize("m, ell", [(1, 1), (1, 2), (2, 2), (3, 2)])
def test_end_dimension(m, ell):
    P = RepParams.rectangle(m, ell, c=[7 * j - 2 for j in range(ell)])
    assert sum(graded_dimension((1,) * m, (1,) * m, None, level=ell)) == end_dimension(m, ell)
    assert len(faithful_keys(m, P)) == end_dimension(m, ell)
    if m <= 2:
        assert hecke_rank(m, P) == end_dimension(m, ell)


@pytest.mark.parametrize("mu, nu, ell, want", [
    ((1, 1), (1, 1), 1, 2),
    ((2,), (1, 1), 1, 1),
    ((1,), (1,), 2, 2),
])
def test_perm_module_examples(mu, nu, ell, want):
    P = RepParams.rectangle(sum(mu), ell)
    assert perm_module_hom_dim(mu, nu, P) == want


@pytest.mark.parametrize("lam, mu, u, want", [
    ((1,), (1,), (0, 1), 2),
    ((2,), (2,), (0, 1), 3),
    ((2, 1), (1, 1, 1), (0,), 3),
])
def test_wschur_examples(lam, mu, u, want):
    rep = wschur_dim_check(lam, mu, LevelParams.of(u))
    assert rep.passed and rep.hom_dim == want
    assert rep.line().startswith("PASS")


def test_faithfulness_precondition():
    with pytest.raises(ValueError):
        perm_module_hom_dim((1, 1), (2,), RepParams.rectangle(1, 1))
