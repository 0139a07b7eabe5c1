"""Catalog of defining and derived relations.

Every relation is stored as data: a left-hand side and a right-hand side,
both built from thickness labels, plus a generator of admissible labels.
``check_rule`` evaluates LHS - RHS in the exterior-power representation
for every instantiation up to a bound, and does the same for the
reflected relation.

Labels that would produce a zero-thickness strand are handled the usual
way: the strand is dropped and merges or splits with a zero leg become
identities.  Negative labels make the whole term vanish.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterator, Sequence

from .combinatorics import binomial, factorial
from .diagram import (
    Atom,
    Morphism,
    _single,
    cross,
    dot,
    expand_sugar,
    identity,
    map_atoms,
    merge,
    reflect,
    scalar,
    split,
    stack,
    tensor_all,
    wdot,
)
from .rep_oracle import (
    RepParams,
    _probe_keys,
    apply_morphism,
    oracle_params,
    wedge_basis,
    wedge_dim,
)


class InstantiationError(ValueError):
    pass


class RingRequirementError(ValueError):
    pass


# ---- building blocks tolerant of zero and negative labels ----

def _id(*labels: int) -> Morphism | None:
    if any(a < 0 for a in labels):
        return None
    return identity(tuple(a for a in labels if a))


def _sp(a: int, b: int) -> Morphism | None:
    if a < 0 or b < 0:
        return None
    if a == 0 or b == 0:
        return _id(a + b)
    return split(a, b)


def _mg(a: int, b: int) -> Morphism | None:
    if a < 0 or b < 0:
        return None
    if a == 0 or b == 0:
        return _id(a + b)
    return merge(a, b)


def _cr(a: int, b: int) -> Morphism | None:
    if a < 0 or b < 0:
        return None
    if a == 0 or b == 0:
        return _id(a + b)
    return cross(a, b)


def _w(a: int, r: int) -> Morphism | None:
    """omega_{a,r}; omega_{a,0} is the identity."""
    if a < 0 or not 0 <= r <= a:
        return None
    if r == 0:
        return _id(a)
    return wdot(a, r)


def _d(a: int) -> Morphism | None:
    if a < 0:
        return None
    return dot(a) if a else _id()


def _t(*parts: Morphism | None) -> Morphism | None:
    if any(p is None for p in parts):
        return None
    return tensor_all(*parts)


def _s(*layers: Morphism | None) -> Morphism | None:
    """Bottom-to-top stack; None if any layer vanished."""
    if any(p is None for p in layers):
        return None
    return stack(*layers)


def _sum(source, target, terms: Sequence[tuple[object, Morphism | None]]) -> Morphism:
    out = Morphism.zero(source, target)
    for c, m in terms:
        if m is not None and c:
            out = out + m * c
    return out


def gen_binomial(n: int, k: int):
    """n choose k for any integer n (falling factorial over k!)."""
    if k < 0:
        return 0
    num = 1
    for j in range(k):
        num *= n - j
    return num // factorial(k)


def multi_split(parts: Sequence[int]) -> Morphism:
    """Split one strand of thickness sum(parts) into parts, peeling from the left."""
    parts = [p for p in parts if p]
    out = _id(sum(parts))
    for i in range(len(parts) - 1):
        rest = sum(parts[i + 1:])
        out = _s(out, _t(_id(*parts[:i]), split(parts[i], rest)))
    return out


def multi_merge(parts: Sequence[int]) -> Morphism:
    parts = [p for p in parts if p]
    out = _id(*parts)
    acc = parts[0]
    for i in range(1, len(parts)):
        out = _s(out, _t(merge(acc, parts[i]), _id(*parts[i + 1:])))
        acc += parts[i]
    return out


def balloon(a: int, f: Morphism) -> Morphism:
    """Split a into thin strands, apply f on each, merge back."""
    if f.source != (1,) or f.target != (1,):
        raise ValueError("balloon decoration must be an endomorphism of a thin strand")
    return stack(multi_split([1] * a), tensor_all(*([f] * a)), multi_merge([1] * a))


def thin_dots(m: Morphism) -> Morphism:
    """Rewrite every full dot on a thick strand as an averaged balloon of thin dots.

    The result only has dots on thickness-1 strands; coefficients lie in Q.
    """
    def f(at: Atom) -> Morphism:
        if at.kind == "dot" and at.a > 1:
            return balloon(at.a, dot(1)) * Fraction(1, factorial(at.a))
        return _single(at)

    return map_atoms(expand_sugar(m), f)


# ---- the rule type ----

Labels = dict


@dataclass(frozen=True)
class RewriteRule:
    """A relation LHS = RHS, instantiable over integer labels.

    ``labels`` yields admissible label dicts for a thickness bound;
    ``lhs_fn`` and ``rhs_fn`` take the labels as keyword arguments.
    """

    name: str
    family: str
    citation: str
    ring_requirement: str
    lhs_fn: Callable[..., Morphism] = field(repr=False)
    rhs_fn: Callable[..., Morphism] = field(repr=False)
    labels: Callable[[int], Iterator[Labels]] = field(repr=False)
    admissible: Callable[..., bool] = field(repr=False)

    def _check(self, labels: Labels):
        try:
            ok = self.admissible(**labels)
        except TypeError as exc:
            raise InstantiationError(f"{self.name}: bad label set {labels}: {exc}") from None
        if not ok:
            raise InstantiationError(f"{self.name}: inadmissible labels {labels}")

    def lhs(self, **labels) -> Morphism:
        self._check(labels)
        return self.lhs_fn(**labels)

    def rhs(self, **labels) -> Morphism:
        self._check(labels)
        return self.rhs_fn(**labels)

    def instantiate(self, **labels) -> tuple[Morphism, Morphism]:
        lhs, rhs = self.lhs(**labels), self.rhs(**labels)
        if (lhs.source, lhs.target) != (rhs.source, rhs.target):
            raise InstantiationError(f"{self.name}{labels}: sides have different boundaries")
        return lhs, rhs

    def instantiations(self, bound: int) -> list[Labels]:
        return list(self.labels(bound))


def _grid(names: str, lo: int = 1, where: Callable[..., bool] = lambda **k: True):
    keys = names.split()

    def gen(bound: int) -> Iterator[Labels]:
        for vals in product(range(lo, bound + 1), repeat=len(keys)):
            lab = dict(zip(keys, vals))
            if where(**lab):
                yield lab
    return gen


def _with_degree(names: str, cap: Callable[..., int], lo_r: int = 1, where=lambda **k: True):
    """Thickness labels up to the bound plus r in lo_r..cap(labels)."""
    base = _grid(names, where=where)

    def gen(bound: int) -> Iterator[Labels]:
        for lab in base(bound):
            for r in range(lo_r, cap(**lab) + 1):
                yield {**lab, "r": r}
    return gen


def _pos(*xs) -> bool:
    return all(isinstance(x, int) and x >= 1 for x in xs)


# ---- individual relations ----

def _r2_rhs(a, b, c, d):
    terms = []
    for s in range(0, min(a, b) + 1):
        t = s + d - a
        if not 0 <= t <= min(c, d):
            continue
        terms.append((1, _s(_t(_sp(s, a - s), _sp(c - t, t)),
                            _t(_id(s), _cr(a - s, c - t), _id(t)),
                            _t(_mg(s, c - t), _mg(a - s, t)))))
    return _sum((a, c), (b, d), terms)


def _crossgen_rhs(a, b):
    terms = []
    for t in range(0, min(a, b) + 1):
        terms.append(((-1) ** t, _s(_t(_sp(t, a - t), _id(b)),
                                    _t(_id(t), _mg(a - t, b)),
                                    _t(_id(t), _sp(b - t, a)),
                                    _t(_mg(t, b - t), _id(a)))))
    return _sum((a, b), (b, a), terms)


def _rung_lhs(a, b, c, d):
    return _s(_t(_sp(a - d, d), _id(b)),
              _t(_id(a - d), _mg(d, b)),
              _t(_id(a - d), _sp(c, b + d - c)),
              _t(_mg(a - d, c), _id(b + d - c)))


def _rung_rhs(a, b, c, d):
    terms = []
    n = a - b + c - d
    for t in range(0, min(c, d) + 1):
        terms.append((gen_binomial(n, t), _s(_t(_id(a), _sp(c - t, b - c + t)),
                                             _t(_mg(a, c - t), _id(b - c + t)),
                                             _t(_sp(a + c - d, d - t), _id(b - c + t)),
                                             _t(_id(a + c - d), _mg(d - t, b - c + t)))))
    return _sum((a, b), (a - d + c, b + d - c), terms)


def _tl_terms(x, y, r, full: bool):
    """Corrections for a dot on the top-left end of cross(x, y)."""
    out = []
    for t in range(1, min(x, y, r) + 1):
        w = _d(y - t) if full else _w(y - t, r - t)
        out.append((factorial(t), _s(_t(_sp(t, x - t), _sp(y - t, t)),
                                     _t(_id(t, x - t), w, _id(t)),
                                     _t(_id(t), _cr(x - t, y - t), _id(t)),
                                     _t(_mg(t, y - t), _mg(x - t, t)))))
    return out


def _bl_terms(b, a, r, full: bool):
    """Corrections for a dot on the bottom-left end of cross(b, a)."""
    out = []
    for t in range(1, min(a, b, r) + 1):
        w = _d(b - t) if full else _w(b - t, r - t)
        out.append((factorial(t), _s(_t(_sp(t, b - t), _sp(a - t, t)),
                                     _t(_id(t), _cr(b - t, a - t), _id(t)),
                                     _t(_id(t, a - t), w, _id(t)),
                                     _t(_mg(t, a - t), _mg(b - t, t)))))
    return out


def _tl_lhs(x, y, r):
    return _s(_cr(x, y), _t(_w(y, r), _id(x)))


def _tl_rhs(x, y, r):
    return _sum((x, y), (y, x), [(1, _s(_t(_id(x), _w(y, r)), _cr(x, y)))] + _tl_terms(x, y, r, False))


def _bl_lhs(b, a, r):
    return _s(_t(_w(b, r), _id(a)), _cr(b, a))


def _bl_rhs(b, a, r):
    return _sum((b, a), (a, b), [(1, _s(_cr(b, a), _t(_id(a), _w(b, r))))] + _bl_terms(b, a, r, False))


def _dot_coeffs(a: int, b: int, r: int) -> list[tuple[int, int, int]]:
    out = []
    for e in range(0, r + 1):
        for c in range(0, min(a, r - e) + 1):
            d = r - e - c
            if d > b:
                continue
            co = factorial(e) * binomial(a - c, e) * binomial(b - d, e)
            if co:
                out.append((c, d, co))
    return out


def _cat() -> list[RewriteRule]:
    R = []

    def add(name, family, citation, ring, lhs, rhs, labels, admissible):
        R.append(RewriteRule(name, family, citation, ring, lhs, rhs, labels, admissible))

    add("R1.merge", "R1", "associativity of merges", "Z",
        lambda a, b, c: _s(_t(merge(a, b), _id(c)), merge(a + b, c)),
        lambda a, b, c: _s(_t(_id(a), merge(b, c)), merge(a, b + c)),
        _grid("a b c"), lambda a, b, c: _pos(a, b, c))
    add("R1.split", "R1", "associativity of splits", "Z",
        lambda a, b, c: _s(split(a + b, c), _t(split(a, b), _id(c))),
        lambda a, b, c: _s(split(a, b + c), _t(_id(a), split(b, c))),
        _grid("a b c"), lambda a, b, c: _pos(a, b, c))
    add("R2", "R2", "merge-split square as a sum of exchange ladders", "Z",
        lambda a, b, c, d: _s(merge(a, c), split(b, d)),
        _r2_rhs,
        _grid("a b c d", where=lambda a, b, c, d: a + c == b + d),
        lambda a, b, c, d: _pos(a, b, c, d) and a + c == b + d)
    add("R3", "R3", "split then merge is a binomial multiple of the identity", "Z",
        lambda a, b: _s(split(a, b), merge(a, b)),
        lambda a, b: _id(a + b) * binomial(a + b, a),
        _grid("a b"), lambda a, b: _pos(a, b))
    add("R4.top", "R4", "full dot from the top-left end of a crossing", "Z",
        lambda x, y: _s(_cr(x, y), _t(_d(y), _id(x))),
        lambda x, y: _sum((x, y), (y, x), [(1, _s(_t(_id(x), _d(y)), _cr(x, y)))] + _tl_terms(x, y, y, True)),
        _grid("x y"), lambda x, y: _pos(x, y))
    add("R4.bottom", "R4", "full dot from the bottom-left end of a crossing", "Z",
        lambda b, a: _s(_t(_d(b), _id(a)), _cr(b, a)),
        lambda b, a: _sum((b, a), (a, b), [(1, _s(_cr(b, a), _t(_id(a), _d(b))))] + _bl_terms(b, a, b, True)),
        _grid("b a"), lambda b, a: _pos(a, b))
    add("R5.split", "R5", "full dot through a split", "Z",
        lambda a, b: _s(dot(a + b), split(a, b)),
        lambda a, b: _s(split(a, b), _t(dot(a), dot(b))),
        _grid("a b"), lambda a, b: _pos(a, b))
    add("R5.merge", "R5", "full dot through a merge", "Z",
        lambda a, b: _s(merge(a, b), dot(a + b)),
        lambda a, b: _s(_t(dot(a), dot(b)), merge(a, b)),
        _grid("a b"), lambda a, b: _pos(a, b))
    add("R6", "R6", "balloon of dotted thin strands", "Z",
        lambda a: balloon(a, dot(1)),
        lambda a: dot(a) * factorial(a),
        _grid("a"), lambda a: _pos(a))
    add("R7", "R7", "crossing as an alternating sum of ladders", "Z",
        lambda a, b: cross(a, b),
        _crossgen_rhs,
        _grid("a b"), lambda a, b: _pos(a, b))
    add("R7.rung", "R7", "rung swap for the crossingless presentation", "Z",
        _rung_lhs, _rung_rhs,
        _grid("a b c d", where=lambda a, b, c, d: a > d and b + d > c),
        lambda a, b, c, d: _pos(a, b, c, d) and a > d and b + d > c)
    add("R8.swallow-merge", "R8", "merge swallows a crossing", "Z",
        lambda a, b: _s(cross(a, b), merge(b, a)),
        lambda a, b: merge(a, b),
        _grid("a b"), lambda a, b: _pos(a, b))
    add("R8.swallow-split", "R8", "split swallows a crossing", "Z",
        lambda a, b: _s(split(a, b), cross(a, b)),
        lambda a, b: split(b, a),
        _grid("a b"), lambda a, b: _pos(a, b))
    add("R8.slide-merge-left", "R8", "merge slides under a crossing from the left", "Z",
        lambda a, b, c: _s(_t(merge(a, b), _id(c)), cross(a + b, c)),
        lambda a, b, c: _s(_t(_id(a), cross(b, c)), _t(cross(a, c), _id(b)), _t(_id(c), merge(a, b))),
        _grid("a b c"), lambda a, b, c: _pos(a, b, c))
    add("R8.slide-merge-right", "R8", "merge slides under a crossing from the right", "Z",
        lambda a, b, c: _s(_t(_id(c), merge(a, b)), cross(c, a + b)),
        lambda a, b, c: _s(_t(cross(c, a), _id(b)), _t(_id(a), cross(c, b)), _t(merge(a, b), _id(c))),
        _grid("a b c"), lambda a, b, c: _pos(a, b, c))
    add("R8.slide-split-left", "R8", "split slides over a crossing from the left", "Z",
        lambda a, b, c: _s(cross(c, a + b), _t(split(a, b), _id(c))),
        lambda a, b, c: _s(_t(_id(c), split(a, b)), _t(cross(c, a), _id(b)), _t(_id(a), cross(c, b))),
        _grid("a b c"), lambda a, b, c: _pos(a, b, c))
    add("R8.slide-split-right", "R8", "split slides over a crossing from the right", "Z",
        lambda a, b, c: _s(cross(a + b, c), _t(_id(c), split(a, b))),
        lambda a, b, c: _s(_t(split(a, b), _id(c)), _t(_id(a), cross(b, c)), _t(cross(a, c), _id(b))),
        _grid("a b c"), lambda a, b, c: _pos(a, b, c))
    add("R8.symmetric", "R8", "a crossing squares to the identity", "Z",
        lambda a, b: _s(cross(a, b), cross(b, a)),
        lambda a, b: _id(a, b),
        _grid("a b"), lambda a, b: _pos(a, b))
    add("R8.braid", "R8", "braid relation for crossings", "Z",
        lambda a, b, c: _s(_t(cross(a, b), _id(c)), _t(_id(b), cross(a, c)), _t(cross(b, c), _id(a))),
        lambda a, b, c: _s(_t(_id(a), cross(b, c)), _t(cross(a, c), _id(b)), _t(_id(c), cross(a, b))),
        _grid("a b c"), lambda a, b, c: _pos(a, b, c))
    add("R9", "R9", "packet inside a split-merge bigon", "Z",
        lambda a, b, r: _s(split(a, b), _t(_w(a, r), _id(b)), merge(a, b)),
        lambda a, b, r: _w(a + b, r) * binomial(a + b - r, b),
        _with_degree("a b", lambda a, b: a, lo_r=0),
        lambda a, b, r: _pos(a, b) and 0 <= r <= a)
    add("R10.top", "R10", "packet from the top-left end of a crossing", "Z",
        _tl_lhs, _tl_rhs,
        _with_degree("x y", lambda x, y: y),
        lambda x, y, r: _pos(x, y) and 0 <= r <= y)
    add("R10.bottom", "R10", "packet from the bottom-left end of a crossing", "Z",
        _bl_lhs, _bl_rhs,
        _with_degree("b a", lambda b, a: b),
        lambda b, a, r: _pos(a, b) and 0 <= r <= b)
    add("R11", "R11", "packet through a split", "Z",
        lambda a, b, r: _s(_w(a + b, r), split(a, b)),
        lambda a, b, r: _sum((a + b,), (a, b),
                             [(co, _s(split(a, b), _t(_w(a, c), _w(b, d)))) for c, d, co in _dot_coeffs(a, b, r)]),
        _with_degree("a b", lambda a, b: a + b),
        lambda a, b, r: _pos(a, b) and 0 <= r <= a + b)
    add("R12", "R12", "packet through a merge", "Z",
        lambda a, b, r: _s(merge(a, b), _w(a + b, r)),
        lambda a, b, r: _sum((a, b), (a + b,),
                             [(co, _s(_t(_w(a, c), _w(b, d)), merge(a, b))) for c, d, co in _dot_coeffs(a, b, r)]),
        _with_degree("a b", lambda a, b: a + b),
        lambda a, b, r: _pos(a, b) and 0 <= r <= a + b)
    add("R13", "R13", "packets on one strand commute", "Z",
        lambda a, r, s: _s(_w(a, r), _w(a, s)),
        lambda a, r, s: _s(_w(a, s), _w(a, r)),
        lambda bound: ({"a": a, "r": r, "s": s} for a in range(1, bound + 1)
                       for r in range(1, a + 1) for s in range(1, a + 1) if r != s),
        lambda a, r, s: _pos(a) and 0 <= r <= a and 0 <= s <= a)
    add("R14", "R14", "full dot as an averaged balloon over a field of characteristic zero", "Q",
        lambda a: dot(a),
        lambda a: balloon(a, dot(1)) * Fraction(1, factorial(a)),
        _grid("a"), lambda a: _pos(a))
    return R


_CATALOG: list[RewriteRule] | None = None


def catalog() -> list[RewriteRule]:
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _cat()
    return list(_CATALOG)


def families() -> list[str]:
    seen: list[str] = []
    for r in catalog():
        if r.family not in seen:
            seen.append(r.family)
    return seen


def get_rule(name: str) -> RewriteRule:
    for r in catalog() + derived():
        if r.name == name:
            return r
    raise KeyError(f"no rule named {name!r}")


def rules_in(family: str) -> list[RewriteRule]:
    out = [r for r in catalog() if r.family == family]
    if not out:
        raise KeyError(f"no rule family {family!r}")
    return out


# ---- derived identities involving g_{r,u} ----

def g_thin(u) -> Morphism:
    """g_{1,u} = omega_1 - u on a thin strand."""
    return dot(1) - identity((1,)) * scalar(u)


def g_elem(r: int, u) -> Morphism:
    out = Morphism.zero((r,), (r,))
    for i in range(r + 1):
        co = 1
        for j in range(i):
            co *= u + j
        out = out + _w(r, r - i) * ((-1) ** i * co)
    return out


def _product(parts: Sequence[Morphism]) -> Morphism:
    out = parts[0]
    for p in parts[1:]:
        out = stack(out, p)
    return out


BALLOON_U = (0, 1, -2, Fraction(5, 3))
CYC_U = ((0,), (3,), (0, 1), (-1, Fraction(1, 2)), (2, 2))


def derived() -> list[RewriteRule]:
    """Identities built from g_{r,u}; u ranges over fixed sample values."""
    return [
        RewriteRule(
            "balloon-g", "derived", "balloon of thin g_{1,u} strands equals r! g_{r,u}", "Q",
            lambda r, u: balloon(r, g_thin(u)),
            lambda r, u: g_elem(r, u) * factorial(r),
            lambda bound: ({"r": r, "u": u} for r in range(1, bound + 1) for u in BALLOON_U),
            lambda r, u: _pos(r)),
        RewriteRule(
            "balloon-cyclotomic", "derived", "r! times a product of g_{r,u_j} as one balloon", "Q",
            lambda r, u: _product([g_elem(r, x) for x in u]) * factorial(r),
            lambda r, u: balloon(r, _product([g_thin(x) for x in u])),
            lambda bound: ({"r": r, "u": u} for r in range(1, bound + 1) for u in CYC_U),
            lambda r, u: _pos(r) and len(u) >= 1),
    ]


# ---- checking ----

FULL_LIMIT = 1000
PROBES = 8


@dataclass
class InstanceResult:
    labels: Labels
    passed: bool
    columns: int
    full: bool
    detail: str = ""


@dataclass
class RuleReport:
    rule: str
    results: list[InstanceResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[InstanceResult]:
        return [r for r in self.results if not r.passed]

    def lines(self) -> list[str]:
        out = []
        for r in self.results:
            mode = "full" if r.full else f"{r.columns} probes"
            status = "PASS" if r.passed else "FAIL"
            lab = ",".join(f"{k}={_fmt_label(v)}" for k, v in r.labels.items())
            out.append(f"{status} {self.rule}[{lab}] ({mode}){' ' + r.detail if r.detail else ''}")
        return out


def _fmt_label(v) -> str:
    if isinstance(v, tuple):
        return "(" + ",".join(str(x) for x in v) + ")"
    return str(v)


def _deg(m: Morphism) -> int:
    return max((d.degree for d in m.terms), default=0)


def check_params(diff: Morphism) -> RepParams:
    """Rectangle with one row per unit of weight and enough columns for the degree."""
    return oracle_params(sum(diff.source), _deg(diff))


def evaluates_to_zero(diff: Morphism, params: RepParams | None = None, seed: int = 0) -> tuple[bool, int, bool]:
    """(is_zero, columns tested, tested every column)."""
    params = params or check_params(diff)
    n = wedge_dim(diff.source, params.N)
    if n <= FULL_LIMIT:
        keys = wedge_basis(diff.source, params.N)
    else:
        it = _probe_keys(diff.source, params, random.Random(seed))
        keys = [k for k, _ in zip(it, range(PROBES))]
    for k in keys:
        if apply_morphism(diff, {k: 1}, params):
            return False, len(keys), n <= FULL_LIMIT
    return True, len(keys), n <= FULL_LIMIT


def _check_one(rule: RewriteRule, labels: Labels, seed: int) -> InstanceResult:
    lhs, rhs = rule.instantiate(**labels)
    ok1, n1, full1 = evaluates_to_zero(lhs - rhs, seed=seed)
    ok2, n2, full2 = evaluates_to_zero(reflect(lhs) - reflect(rhs), seed=seed)
    detail = ""
    if not ok1:
        detail = "LHS-RHS is nonzero"
    elif not ok2:
        detail = "reflected LHS-RHS is nonzero"
    return InstanceResult(labels, ok1 and ok2, n1 + n2, full1 and full2, detail)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("WEBCAT_THREADS", "1")))
    except ValueError:
        return 1


def check_rule(rule: RewriteRule | str, label_bound: int, ring: str = "Z", seed: int = 0) -> RuleReport:
    """Evaluate LHS - RHS (and its reflection) for all labels up to label_bound."""
    if isinstance(rule, str):
        rule = get_rule(rule)
    if label_bound < 1:
        raise ValueError("label_bound must be at least 1")
    if ring not in ("Z", "Q"):
        raise ValueError(f"unknown ring {ring}")
    if rule.ring_requirement == "Q" and ring == "Z":
        raise RingRequirementError(f"{rule.name} needs coefficients in Q")
    labs = rule.instantiations(label_bound)
    workers = _threads()
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            results = list(ex.map(lambda lab: _check_one(rule, lab, seed), labs))
    else:
        results = [_check_one(rule, lab, seed) for lab in labs]
    return RuleReport(rule.name, results)
