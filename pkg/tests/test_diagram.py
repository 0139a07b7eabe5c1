import random
from fractions import Fraction

import pytest

from webcat.diagram import (
    BoundaryError,
    Diagram,
    Morphism,
    ParseError,
    compose,
    cross,
    degree,
    dot,
    expand_sugar,
    id_,
    identity,
    merge,
    parse,
    random_diagram,
    reflect,
    render,
    split,
    stack,
    tensor,
    wdot,
)


def rand_morphism(rng, weight=None, layers=3, source=None):
    w = weight or rng.randint(1, 3)
    return Morphism.of(random_diagram(rng, w, rng.randint(1, layers), 3, source=source))


def test_compose_identity_and_literal_stack():
    assert compose(id_(2), id_(2)) == id_(2)
    m = compose(merge(1, 1), split(1, 1))
    d, = m.terms
    assert [[at.kind for at in layer] for layer in d.layers] == [["split"], ["merge"]]
    assert m == parse("split(1,1) ; merge(1,1)")


def test_compose_boundary_mismatch():
    with pytest.raises(BoundaryError):
        compose(id_(2), identity((1, 1)))


def test_tensor_examples():
    assert tensor(id_(1), id_(1)) == identity((1, 1))
    d, = tensor(dot(1), id_(1)).terms
    assert len(d.layers) == 1
    assert [at.kind for at in d.layers[0]] == ["dot", "id"]
    two = stack(split(1, 1), merge(1, 1))
    d, = tensor(two, dot(1)).terms
    assert len(d.layers) == 2


def test_degree_examples():
    assert degree(identity((3,))) == 0
    assert degree(dot(2)) == 2
    assert degree(parse("wdot(3,2);wdot(3,1)")) == 3


def test_expand_sugar_examples():
    assert expand_sugar(wdot(2, 2)) == dot(2)
    assert wdot(2, 0) == id_(2)
    assert expand_sugar(wdot(2, 1)) == stack(split(1, 1), tensor(dot(1), id_(1)), merge(1, 1))


def test_reflect_examples():
    assert reflect(merge(1, 1)) == split(1, 1)
    assert reflect(dot(2)) == dot(2)
    assert reflect(cross(1, 2)) == cross(2, 1)


def test_parse_examples():
    assert parse("id(2)") == id_(2)
    m = parse("merge(1,1) ; split(1,1)")
    assert (m.source, m.target) == ((1, 1), (1, 1))
    combo = parse("2 * split(1,1);merge(1,1) - dot(2)")
    assert combo == stack(split(1, 1), merge(1, 1)) * 2 - dot(2)
    assert parse("1/2 * dot(1)") == dot(1) * Fraction(1, 2)
    assert parse("dot(1)@id(1) + cross(1,1);cross(1,1) - id(1)@id(1);dot(1)@id(1)") == stack(cross(1, 1), cross(1, 1))


@pytest.mark.parametrize("text, line, column", [
    ("split(1,1;merge(1,1)", 1, 10),
    ("merge(1,1) ;\n  frob(2)", 2, 3),
    ("dot(1) @", 1, 9),
])
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_parse_boundary_error():
    with pytest.raises(BoundaryError) as info:
        parse("merge(1,1);merge(1,1)")
    assert info.value.line == 1


def test_gravity_makes_slides_equal():
    a = stack(tensor(dot(1), id_(1)), tensor(id_(1), dot(1)))
    b = stack(tensor(id_(1), dot(1)), tensor(dot(1), id_(1)))
    assert a == b


def test_interchange_law():
    rng = random.Random(3)
    for _ in range(150):
        h = rand_morphism(rng)
        k = rand_morphism(rng)
        f = rand_morphism(rng, source=h.target)
        g = rand_morphism(rng, source=k.target)
        assert compose(tensor(f, g), tensor(h, k)) == tensor(compose(f, h), compose(g, k))


def test_degree_additive():
    rng = random.Random(5)
    for _ in range(100):
        g = rand_morphism(rng)
        f = rand_morphism(rng, source=g.target)
        assert degree(compose(f, g)) == degree(f) + degree(g)


def test_reflect_involution():
    rng = random.Random(7)
    for _ in range(100):
        m = rand_morphism(rng, layers=4)
        r = reflect(m)
        assert (r.source, r.target) == (m.target, m.source)
        assert reflect(r) == m


def test_render_parse_roundtrip():
    rng = random.Random(11)
    for _ in range(200):
        m = rand_morphism(rng, layers=4) * rng.choice([1, -2, 3])
        assert parse(render(m)) == m
    assert render(Morphism.zero((1,), (1,))) == "0"
    assert parse(Diagram.build([], ()).render()) == identity(())
