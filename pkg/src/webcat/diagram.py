"""Dotted web diagrams and their linear combinations.

A diagram is a stack of layers read bottom to top; each layer is a row of
atoms read left to right.  Diagrams are kept in a canonical "gravity" form:
every non-identity atom sits as low as the atoms feeding it allow, so two
diagrams that differ only by sliding generators past each other compare equal.

The text syntax::

    2 * split(1,1) ; merge(1,1) - dot(1) @ id(1) ; cross(1,1)

``;`` stacks upwards, ``@`` places side by side, ``+``/``-`` add terms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple, Sequence

from .combinatorics import Composition, composition

Scalar = int | Fraction


def scalar(x) -> Scalar:
    """Canonical exact scalar: ints stay ints, integral fractions collapse."""
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def fmt_scalar(x: Scalar) -> str:
    x = scalar(x)
    return str(x)


def _where(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


class BoundaryError(ValueError):
    """Boundaries do not match; ``line``/``column`` are set when raised while parsing."""

    line: int | None = None
    column: int | None = None

    @classmethod
    def at(cls, msg: str, text: str, pos: int) -> "BoundaryError":
        line, col = _where(text, pos)
        err = cls(f"{msg} at line {line}, column {col}")
        err.line, err.column = line, col
        return err


class ParseError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        line, col = _where(text, pos)
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line, self.column = line, col


class Atom(NamedTuple):
    """kind is one of id, merge, split, cross, dot, wdot.

    For wdot the second label is r; for id and dot it is unused (0).
    """

    kind: str
    a: int
    b: int = 0

    @property
    def source(self) -> Composition:
        k = self.kind
        if k in ("merge", "cross"):
            return (self.a, self.b)
        if k == "split":
            return (self.a + self.b,)
        return (self.a,)

    @property
    def target(self) -> Composition:
        k = self.kind
        if k == "split":
            return (self.a, self.b)
        if k == "merge":
            return (self.a + self.b,)
        if k == "cross":
            return (self.b, self.a)
        return (self.a,)

    @property
    def degree(self) -> int:
        if self.kind == "dot":
            return self.a
        if self.kind == "wdot":
            return self.b
        return 0

    def render(self) -> str:
        if self.kind in ("id", "dot"):
            return f"{self.kind}({self.a})"
        return f"{self.kind}({self.a},{self.b})"


def make_atom(kind: str, a: int, b: int = 0) -> Atom:
    if a < 1 or (kind in ("merge", "split", "cross") and b < 1):
        raise ValueError(f"thickness labels must be >= 1: {kind}({a},{b})")
    if kind == "wdot":
        if not 0 <= b <= a:
            raise ValueError(f"wdot({a},{b}) needs 0 <= r <= a")
        if b == 0:
            return Atom("id", a)
        if b == a:
            return Atom("dot", a)
    if kind not in ("id", "merge", "split", "cross", "dot", "wdot"):
        raise ValueError(f"unknown atom {kind}")
    return Atom(kind, a, b)


def _boundary(atoms: Iterable[Atom], side: str) -> Composition:
    out: tuple[int, ...] = ()
    for at in atoms:
        out += at.source if side == "source" else at.target
    return out


def _gravity(layers: Sequence[Sequence[Atom]], source: Composition) -> tuple[tuple[Atom, ...], ...]:
    """Canonical layering: place each generator at 1 + the highest level below it."""
    counter = iter(range(10**12))
    wires = [(next(counter), t) for t in source]
    height: dict[int, int] = {w: 0 for w, _ in wires}
    placed: list[tuple[int, Atom, int, list[tuple[int, int]]]] = []
    for layer in layers:
        new_wires = []
        pos = 0
        for at in layer:
            k = len(at.source)
            inputs = wires[pos:pos + k]
            if tuple(t for _, t in inputs) != at.source:
                raise BoundaryError(f"layer boundary mismatch at {at.render()}")
            pos += k
            if at.kind == "id":
                new_wires.extend(inputs)
                continue
            level = 1 + max(height[w] for w, _ in inputs)
            outs = [(next(counter), t) for t in at.target]
            for w, _ in outs:
                height[w] = level
            placed.append((level, at, inputs[0][0], outs))
            new_wires.extend(outs)
        if pos != len(wires):
            raise BoundaryError("layer does not cover its source boundary")
        wires = new_wires
    if not placed:
        return ()
    by_level: dict[int, dict[int, tuple[Atom, list]]] = {}
    for level, at, first, outs in placed:
        by_level.setdefault(level, {})[first] = (at, outs)
    wires = [(w, t) for w, t in zip(range(len(source)), source)]
    out_layers = []
    for level in range(1, max(by_level) + 1):
        here = by_level.get(level, {})
        layer, new_wires, i = [], [], 0
        while i < len(wires):
            w, t = wires[i]
            if w in here:
                at, outs = here[w]
                layer.append(at)
                new_wires.extend(outs)
                i += len(at.source)
            else:
                layer.append(Atom("id", t))
                new_wires.append((w, t))
                i += 1
        wires = new_wires
        out_layers.append(tuple(layer))
    return tuple(out_layers)


@dataclass(frozen=True)
class Diagram:
    layers: tuple[tuple[Atom, ...], ...]
    source: Composition
    target: Composition = field(compare=False)

    @staticmethod
    def build(layers: Sequence[Sequence[Atom]], source: Sequence[int]) -> "Diagram":
        source = tuple(source)
        canon = _gravity(layers, source)
        target = _boundary(canon[-1], "target") if canon else source
        return Diagram(canon, source, target)

    @property
    def degree(self) -> int:
        return sum(at.degree for layer in self.layers for at in layer)

    def render(self) -> str:
        if not self.layers:
            if not self.source:
                return "id()"
            return " @ ".join(f"id({t})" for t in self.source)
        return " ; ".join(" @ ".join(at.render() for at in layer) for layer in self.layers)

    def __repr__(self) -> str:
        return f"Diagram({self.render()!r})"


def _clean(terms: dict) -> dict:
    return {d: scalar(c) for d, c in terms.items() if c != 0}


class Morphism:
    """Finite linear combination of diagrams with common boundary."""

    __slots__ = ("source", "target", "terms")

    def __init__(self, source: Sequence[int], target: Sequence[int], terms: dict | None = None):
        self.source = tuple(source)
        self.target = tuple(target)
        self.terms: dict[Diagram, Scalar] = _clean(terms or {})
        for d in self.terms:
            if d.source != self.source or d.target != self.target:
                raise BoundaryError(f"term {d.render()} does not have boundary {self.source}->{self.target}")

    @staticmethod
    def of(d: Diagram, coeff=1) -> "Morphism":
        return Morphism(d.source, d.target, {d: coeff})

    @staticmethod
    def zero(source: Sequence[int], target: Sequence[int]) -> "Morphism":
        return Morphism(source, target, {})

    def is_zero(self) -> bool:
        return not self.terms

    def _check_same(self, other: "Morphism"):
        if (self.source, self.target) != (other.source, other.target):
            raise BoundaryError(
                f"cannot add {self.source}->{self.target} and {other.source}->{other.target}")

    def __add__(self, other: "Morphism") -> "Morphism":
        self._check_same(other)
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out.get(d, 0) + c
        return Morphism(self.source, self.target, out)

    def __neg__(self) -> "Morphism":
        return Morphism(self.source, self.target, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + (-other)

    def __mul__(self, c) -> "Morphism":
        c = scalar(c)
        return Morphism(self.source, self.target, {d: c * v for d, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self.source, self.target, self.terms) == (other.source, other.target, other.terms)

    def __hash__(self) -> int:
        return hash((self.source, self.target, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Morphism({render(self)!r})"


# ---- constructors ----

def _single(at: Atom) -> Morphism:
    d = Diagram.build([[at]], at.source)
    return Morphism.of(d)


def identity(obj: Sequence[int]) -> Morphism:
    obj = composition(obj)
    return Morphism.of(Diagram((), obj, obj))


def id_(a: int) -> Morphism:
    return identity((a,))


def merge(a: int, b: int) -> Morphism:
    return _single(make_atom("merge", a, b))


def split(a: int, b: int) -> Morphism:
    return _single(make_atom("split", a, b))


def cross(a: int, b: int) -> Morphism:
    return _single(make_atom("cross", a, b))


def dot(a: int) -> Morphism:
    return _single(make_atom("dot", a))


def wdot(a: int, r: int) -> Morphism:
    return _single(make_atom("wdot", a, r))


def packet(a: int, nu: Sequence[int]) -> Morphism:
    """omega_{a,nu}: one wdot(a, part) per part, largest at the bottom."""
    out = id_(a)
    for r in sorted(nu, reverse=True):
        if r < 1 or r > a:
            raise ValueError(f"packet part {r} outside 1..{a}")
        out = compose(wdot(a, r), out)
    return out


# ---- composition ----

def _compose_d(upper: Diagram, lower: Diagram) -> Diagram:
    return Diagram.build(lower.layers + upper.layers, lower.source)


def _tensor_d(left: Diagram, right: Diagram) -> Diagram:
    n = max(len(left.layers), len(right.layers))
    layers = []
    for i in range(n):
        lrow = left.layers[i] if i < len(left.layers) else tuple(Atom("id", t) for t in left.target)
        rrow = right.layers[i] if i < len(right.layers) else tuple(Atom("id", t) for t in right.target)
        layers.append(lrow + rrow)
    return Diagram.build(layers, left.source + right.source)


def compose(upper: Morphism, lower: Morphism) -> Morphism:
    """upper after lower (upper stacked on top)."""
    if upper.source != lower.target:
        raise BoundaryError(f"cannot stack: lower target {lower.target} != upper source {upper.source}")
    out: dict[Diagram, Scalar] = {}
    for du, cu in upper.terms.items():
        for dl, cl in lower.terms.items():
            d = _compose_d(du, dl)
            out[d] = out.get(d, 0) + cu * cl
    return Morphism(lower.source, upper.target, out)


def tensor(left: Morphism, right: Morphism) -> Morphism:
    out: dict[Diagram, Scalar] = {}
    for d1, c1 in left.terms.items():
        for d2, c2 in right.terms.items():
            d = _tensor_d(d1, d2)
            out[d] = out.get(d, 0) + c1 * c2
    return Morphism(left.source + right.source, left.target + right.target, out)


def stack(*parts: Morphism) -> Morphism:
    """stack(a, b, c) = a ; b ; c, bottom first."""
    out = parts[0]
    for p in parts[1:]:
        out = compose(p, out)
    return out


def tensor_all(*parts: Morphism) -> Morphism:
    out = identity(())
    for p in parts:
        out = tensor(out, p)
    return out


def at_position(g: Morphism, left: Sequence[int], right: Sequence[int]) -> Morphism:
    """1_left (x) g (x) 1_right."""
    return tensor_all(identity(tuple(left)), g, identity(tuple(right)))


def degree(m: Morphism) -> float:
    if m.is_zero():
        return float("-inf")
    return max(d.degree for d in m.terms)


def map_atoms(m: Morphism, f: Callable[[Atom], Morphism]) -> Morphism:
    """Substitute every atom by a morphism, extending monoidally and linearly."""
    out = Morphism.zero(m.source, m.target)
    for d, c in m.terms.items():
        acc = identity(d.source)
        for layer in d.layers:
            row = identity(())
            for at in layer:
                row = tensor(row, f(at) if at.kind != "id" else id_(at.a))
            acc = compose(row, acc)
        out = out + acc * c
    return out


def expand_sugar(m: Morphism) -> Morphism:
    def f(at: Atom) -> Morphism:
        if at.kind == "wdot":
            a, r = at.a, at.b
            if r == a:
                return dot(a)
            return stack(split(r, a - r), tensor(dot(r), id_(a - r)), merge(r, a - r))
        return _single(at)

    return map_atoms(m, f)


def reflect(m: Morphism) -> Morphism:
    out: dict[Diagram, Scalar] = {}
    for d, c in m.terms.items():
        layers = []
        for layer in reversed(d.layers):
            row = []
            for at in layer:
                if at.kind == "merge":
                    row.append(Atom("split", at.a, at.b))
                elif at.kind == "split":
                    row.append(Atom("merge", at.a, at.b))
                elif at.kind == "cross":
                    row.append(Atom("cross", at.b, at.a))
                else:
                    row.append(at)
            layers.append(row)
        nd = Diagram.build(layers, d.target)
        out[nd] = out.get(nd, 0) + c
    return Morphism(m.target, m.source, out)


# ---- text syntax ----

def render(m: Morphism) -> str:
    if m.is_zero():
        return "0"
    items = sorted(m.terms.items(), key=lambda dc: dc[0].render())
    pieces = []
    for i, (d, c) in enumerate(items):
        body = d.render()
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        text = body if mag == 1 else f"{fmt_scalar(mag)} * {body}"
        if i == 0:
            pieces.append(text if sign == "+" else f"-{text}")
        else:
            pieces.append(f" {sign} {text}")
    return "".join(pieces)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[a-z]+)|(?P<sym>[();@+\-*,\[\]]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            mt = _TOKEN.match(text, pos)
            if not mt or mt.end() == pos:
                raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
            kind = mt.lastgroup
            self.toks.append((kind, mt.group(kind), mt.start(kind)))
            pos = mt.end()
        self.i = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def pos(self) -> int:
        t = self.peek()
        return t[2] if t else len(self.text)

    def expect(self, value: str) -> int:
        t = self.peek()
        if t is None or t[1] != value:
            raise ParseError(f"expected {value!r}", self.text, self.pos())
        self.i += 1
        return t[2]

    def accept(self, value: str) -> bool:
        t = self.peek()
        if t is not None and t[1] == value:
            self.i += 1
            return True
        return False

    def integer(self) -> int:
        t = self.peek()
        if t is None or t[0] != "num" or "/" in t[1]:
            raise ParseError("expected integer", self.text, self.pos())
        self.i += 1
        return int(t[1])

    def morphism(self) -> Morphism:
        neg = self.accept("-")
        acc = self.scaled()
        if neg:
            acc = -acc
        while True:
            t = self.peek()
            if t is None or t[1] not in "+-":
                return acc
            self.i += 1
            rhs = self.scaled()
            at = t[2]
            try:
                acc = acc + rhs if t[1] == "+" else acc - rhs
            except BoundaryError as exc:
                raise BoundaryError.at(f"boundary mismatch in sum: {exc}", self.text, at) from None

    def scaled(self) -> Morphism:
        t = self.peek()
        coeff = None
        if t is not None and t[0] == "num":
            self.i += 1
            coeff = Fraction(t[1])
            self.expect("*")
        body = self.seq()
        return body * coeff if coeff is not None else body

    def seq(self) -> Morphism:
        acc = self.par()
        while self.peek() is not None and self.peek()[1] == ";":
            at = self.expect(";")
            upper = self.par()
            try:
                acc = compose(upper, acc)
            except BoundaryError as exc:
                raise BoundaryError.at(f"boundary mismatch at ';': {exc}", self.text, at) from None
        return acc

    def par(self) -> Morphism:
        acc = self.prim()
        while self.accept("@"):
            acc = tensor(acc, self.prim())
        return acc

    def prim(self) -> Morphism:
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of input", self.text, len(self.text))
        if t[1] == "(":
            self.i += 1
            inner = self.morphism()
            self.expect(")")
            return inner
        if t[0] != "name":
            raise ParseError(f"unexpected token {t[1]!r}", self.text, t[2])
        self.i += 1
        name = t[1]
        self.expect("(")
        try:
            if name == "id":
                if self.accept(")"):
                    return identity(())
                a = self.integer()
                self.expect(")")
                return id_(a)
            if name == "dot":
                a = self.integer()
                self.expect(")")
                return dot(a)
            if name in ("merge", "split", "cross", "wdot"):
                a = self.integer()
                self.expect(",")
                b = self.integer()
                self.expect(")")
                return {"merge": merge, "split": split, "cross": cross, "wdot": wdot}[name](a, b)
            if name == "packet":
                a = self.integer()
                self.expect(",")
                self.expect("[")
                parts = [self.integer()]
                while self.accept(","):
                    parts.append(self.integer())
                self.expect("]")
                self.expect(")")
                return packet(a, parts)
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), self.text, t[2]) from None
        raise ParseError(f"unknown generator {name!r}", self.text, t[2])


def parse(text: str) -> Morphism:
    p = _Parser(text)
    m = p.morphism()
    if p.peek() is not None:
        raise ParseError(f"unexpected token {p.peek()[1]!r}", text, p.pos())
    return m


def random_diagram(rng, weight: int, layers: int, max_degree: int, max_thickness: int = 3,
                   source: Sequence[int] | None = None) -> Diagram:
    """A random dotted web diagram; used by property checks and the CLI."""
    if source is None:
        source, left = [], weight
        while left:
            a = rng.randint(1, min(left, max_thickness))
            source.append(a)
            left -= a
    cur = list(source)
    budget = max_degree
    rows = []
    for _ in range(layers):
        row, nxt, k = [], [], 0
        while k < len(cur):
            a = cur[k]
            choice = rng.random()
            has_next = k + 1 < len(cur)
            if choice < 0.2 and has_next and a + cur[k + 1] <= max_thickness:
                row.append(Atom("merge", a, cur[k + 1]))
                nxt.append(a + cur[k + 1])
                k += 2
                continue
            if choice < 0.4 and a >= 2:
                x = rng.randint(1, a - 1)
                row.append(Atom("split", x, a - x))
                nxt.extend([x, a - x])
            elif choice < 0.6 and has_next:
                row.append(Atom("cross", a, cur[k + 1]))
                nxt.extend([cur[k + 1], a])
                k += 2
                continue
            elif choice < 0.8 and budget > 0:
                r = rng.randint(1, min(a, budget))
                row.append(Atom("dot", a) if r == a else Atom("wdot", a, r))
                budget -= r
                nxt.append(a)
            else:
                row.append(Atom("id", a))
                nxt.append(a)
            k += 1
        rows.append(row)
        cur = nxt
    return Diagram.build(rows, tuple(source))
