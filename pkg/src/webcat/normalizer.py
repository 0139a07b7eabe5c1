"""Rewriting morphisms to elementary chicken foot diagrams.

An elementary CFD is the pair (A, P): A is a non-negative integer matrix with
row sums the target and column sums the source, P attaches a partition to each
nonzero entry.  Its diagram splits every source strand into legs, puts the dot
packet at the bottom of each leg, crosses the legs with the minimal number of
crossings and merges them into the target strands.

``normalize`` folds a morphism bottom to top onto a linear combination of such
diagrams.  Splits, merges and crossings act on a CFD in closed form.  The only
non-trivial local computations are

* a balloon (two legs of one column merged back together) and
* a crossing between two legs of one column,

which are both done by pulling the picture onto thin strands, where a
thickness-a packet becomes a symmetric polynomial and a crossing becomes a
Demazure-type operator, and reading the answer back off triangularly.  Dots
are pushed down through crossings one crossing at a time; the correction terms
have smaller degree and are folded recursively.
"""

from __future__ import annotations

import json
import threading
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, NamedTuple, Sequence

from .combinatorics import (
    Composition,
    IntMatrix,
    Partition,
    Poly,
    binomial,
    composition,
    conjugate,
    enumerate_bounded_partitions,
    enumerate_contingency,
    factorial,
    partition_key,
    poly_add,
    poly_embed,
    poly_mul,
    poly_one,
    rising,
)
from .diagram import (
    Diagram,
    Morphism,
    compose,
    cross,
    fmt_scalar,
    id_,
    identity,
    merge,
    packet,
    scalar,
    split,
    tensor,
    tensor_all,
    wdot,
)


class NormalizationError(RuntimeError):
    pass


class RingError(ValueError):
    pass


class ElementaryCFD(NamedTuple):
    source: Composition
    target: Composition
    A: IntMatrix
    P: tuple[tuple[Partition, ...], ...]

    @property
    def degree(self) -> int:
        return sum(sum(p) for row in self.P for p in row)

    def sort_key(self) -> tuple:
        flatA = tuple(-x for row in self.A for x in row)
        flatP = tuple(partition_key(p) for row in self.P for p in row)
        return (flatA, flatP)

    def to_json(self) -> dict:
        return {"A": [list(r) for r in self.A], "P": [[list(p) for p in r] for r in self.P]}


def make_cfd(source: Sequence[int], target: Sequence[int], A, P=None) -> ElementaryCFD:
    A = tuple(tuple(int(x) for x in row) for row in A)
    source, target = tuple(source), tuple(target)
    if P is None:
        P = tuple(tuple(() for _ in row) for row in A)
    P = tuple(tuple(tuple(sorted(p, reverse=True)) for p in row) for row in P)
    if tuple(sum(r) for r in A) != target:
        raise ValueError(f"row sums of {A} are not {target}")
    if A and tuple(sum(r[j] for r in A) for j in range(len(A[0]))) != source:
        raise ValueError(f"column sums of {A} are not {source}")
    for row_a, row_p in zip(A, P):
        for a, p in zip(row_a, row_p):
            if p and (p[0] > a or p[-1] < 1):
                raise ValueError(f"packet {p} does not fit a leg of thickness {a}")
    return ElementaryCFD(source, target, A, P)


def identity_cfd(mu: Sequence[int]) -> ElementaryCFD:
    mu = tuple(mu)
    A = tuple(tuple(mu[i] if i == j else 0 for j in range(len(mu))) for i in range(len(mu)))
    return make_cfd(mu, mu, A)


class NormalForm:
    """Linear combination of elementary CFDs with a common boundary."""

    __slots__ = ("source", "target", "coeffs")

    def __init__(self, source: Sequence[int], target: Sequence[int], coeffs: dict | None = None):
        self.source, self.target = tuple(source), tuple(target)
        self.coeffs: dict[ElementaryCFD, int | Fraction] = {
            E: scalar(c) for E, c in (coeffs or {}).items() if c != 0}

    def items(self) -> list[tuple[ElementaryCFD, int | Fraction]]:
        return sorted(self.coeffs.items(), key=lambda ec: ec[0].sort_key())

    def __eq__(self, other) -> bool:
        return isinstance(other, NormalForm) and (self.source, self.target, self.coeffs) == (
            other.source, other.target, other.coeffs)

    def __add__(self, other: "NormalForm") -> "NormalForm":
        out = dict(self.coeffs)
        for E, c in other.coeffs.items():
            out[E] = out.get(E, 0) + c
        return NormalForm(self.source, self.target, out)

    def __sub__(self, other: "NormalForm") -> "NormalForm":
        return self + other * -1

    def __mul__(self, c) -> "NormalForm":
        return NormalForm(self.source, self.target, {E: v * c for E, v in self.coeffs.items()})

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs.values())

    def to_morphism(self) -> Morphism:
        out = Morphism.zero(self.source, self.target)
        for E, c in self.coeffs.items():
            out = out + Morphism.of(cfd_to_diagram(E), c)
        return out

    def to_json(self) -> str:
        return json.dumps({
            "source": list(self.source),
            "target": list(self.target),
            "terms": [dict(coeff=fmt_scalar(c), **E.to_json()) for E, c in self.items()],
        }, separators=(",", ":"))

    @staticmethod
    def from_json(text: str) -> "NormalForm":
        data = json.loads(text)
        coeffs = {}
        for t in data["terms"]:
            E = make_cfd(data["source"], data["target"], t["A"], t["P"])
            coeffs[E] = Fraction(t["coeff"])
        return NormalForm(data["source"], data["target"], coeffs)

    def __repr__(self) -> str:
        body = ""
        for E, c in self.items():
            sign = "-" if c < 0 else "+"
            body += f" {sign} {fmt_scalar(abs(c))}*{E.A}{E.P}"
        body = body[3:] if body.startswith(" + ") else "-" + body[3:] if body else "0"
        return f"NormalForm({body})"


# ---- the CFD diagram ----

def _multi_split(parts: Sequence[int]) -> Morphism:
    if len(parts) == 1:
        return id_(parts[0])
    rest = parts[1:]
    return compose(tensor(id_(parts[0]), _multi_split(rest)), split(parts[0], sum(rest)))


def _multi_merge(parts: Sequence[int]) -> Morphism:
    out = identity((parts[0],))
    acc = parts[0]
    for a in parts[1:]:
        out = compose(merge(acc, a), tensor(out, id_(a)))
        acc += a
    return out


def _bubble_word(top_of: Sequence[int]) -> list[int]:
    """Adjacent swaps (bottom to top) taking position k to top_of[k]."""
    cur = list(top_of)
    word = []
    changed = True
    while changed:
        changed = False
        for k in range(len(cur) - 1):
            if cur[k] > cur[k + 1]:
                cur[k], cur[k + 1] = cur[k + 1], cur[k]
                word.append(k)
                changed = True
    return word


def _legs(E: ElementaryCFD) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    bottom = [(i, j) for j in range(len(E.source)) for i in range(len(E.target)) if E.A[i][j]]
    top = [(i, j) for i in range(len(E.target)) for j in range(len(E.source)) if E.A[i][j]]
    return bottom, top


def cfd_to_diagram(E: ElementaryCFD) -> Diagram:
    if not E.source:
        return Diagram((), (), ())
    bottom, top = _legs(E)
    splits = tensor_all(*[_multi_split([E.A[i][j] for i in range(len(E.target)) if E.A[i][j]])
                          for j in range(len(E.source))])
    packets = tensor_all(*[packet(E.A[i][j], E.P[i][j]) for i, j in bottom])
    m = compose(packets, splits)
    pos_top = {leg: k for k, leg in enumerate(top)}
    cur = [E.A[i][j] for i, j in bottom]
    for k in _bubble_word([pos_top[leg] for leg in bottom]):
        step = tensor_all(identity(tuple(cur[:k])), cross(cur[k], cur[k + 1]), identity(tuple(cur[k + 2:])))
        m = compose(step, m)
        cur[k], cur[k + 1] = cur[k + 1], cur[k]
    merges = tensor_all(*[_multi_merge([a for a in row if a]) for row in E.A])
    m = compose(merges, m)
    (d,) = m.terms
    return d


# ---- enumeration ----

def enumerate_cfds(source: Sequence[int], target: Sequence[int],
                   max_degree: int | None = None, level: int | None = None) -> list[ElementaryCFD]:
    """ParMat (or ParMat^level) between the boundaries, optionally degree-bounded."""
    if max_degree is None and level is None:
        raise ValueError("need a degree bound or a level")
    source, target = composition(source), composition(target)
    if sum(source) != sum(target):
        return []
    out = []
    for A in enumerate_contingency(target, source):
        entries = [(i, j, A[i][j]) for i in range(len(A)) for j in range(len(A[0])) if A[i][j]]
        choices = []
        for _, _, a in entries:
            max_len = None if level is None else level - 1
            bound = max_degree if max_degree is not None else a * (level - 1)
            choices.append(enumerate_bounded_partitions(a, max_len, bound))
        for pick in product(*choices):
            if max_degree is not None and sum(sum(p) for p in pick) > max_degree:
                continue
            P = [[() for _ in row] for row in A]
            for (i, j, _), p in zip(entries, pick):
                P[i][j] = p
            out.append(ElementaryCFD(source, target, A, tuple(tuple(r) for r in P)))
    return sorted(out, key=ElementaryCFD.sort_key)


def graded_dimension(source: Sequence[int], target: Sequence[int], max_degree: int | None,
                     level: int | None = None) -> list[int]:
    """Number of basis elements in each degree 0..max_degree."""
    cfds = enumerate_cfds(source, target, max_degree=max_degree, level=level)
    top = max_degree if max_degree is not None else max((E.degree for E in cfds), default=0)
    counts = [0] * (top + 1)
    for E in cfds:
        counts[E.degree] += 1
    return counts


# ---- thin strand calculus ----

@lru_cache(maxsize=None)
def _p(n: int, r: int) -> tuple:
    """Polynomial image of omega_{n,r} after splitting into n thin strands."""
    if r == 0:
        return ((((0,) * n), 1),)
    if r > n:
        return ()
    if n == 1:
        return (((1,), 1),)
    out: Poly = {}
    for c in range(0, min(r, n - 1) + 1):
        for d in range(0, 2):
            e = r - c - d
            if e < 0:
                continue
            co = factorial(e) * binomial(n - 1 - c, e) * binomial(1 - d, e)
            if not co:
                continue
            left = poly_embed(dict(_p(n - 1, c)), 0, n)
            right = poly_embed({(d,): 1}, n - 1, n)
            out = poly_add(out, poly_mul(left, right), co)
    return tuple(sorted(out.items()))


@lru_cache(maxsize=None)
def _p_nu(n: int, nu: Partition) -> tuple:
    out = poly_one(n)
    for r in nu:
        out = poly_mul(out, dict(_p(n, r)))
    return tuple(sorted(out.items()))


def _demazure(f: Poly, i: int) -> Poly:
    """T_i f = s_i f + (f - s_i f)/(x_i - x_{i+1})."""
    out: Poly = {}
    for m, c in f.items():
        p, q = m[i], m[i + 1]
        sm = list(m)
        sm[i], sm[i + 1] = q, p
        sm = tuple(sm)
        out[sm] = out.get(sm, 0) + c
        if p != q:
            lo, hi, sign = (q, p, 1) if p > q else (p, q, -1)
            for k in range(hi - lo):
                e = list(m)
                e[i], e[i + 1] = hi - 1 - k, lo + k
                e = tuple(e)
                out[e] = out.get(e, 0) + sign * c
    return {m: c for m, c in out.items() if c}


def _apply_word(f: Poly, word: Iterable[int]) -> Poly:
    for i in word:
        f = _demazure(f, i)
    return f


def _decode(H: Poly, blocks: Sequence[int]) -> dict[tuple[Partition, ...], int]:
    """Expand a block-symmetric polynomial in products of the _p_nu images."""
    H = dict(H)
    out: dict[tuple[Partition, ...], int] = {}
    offsets = [sum(blocks[:k]) for k in range(len(blocks))]
    n = sum(blocks)
    while H:
        lead = max(H, key=lambda m: (sum(m), m))
        c = H[lead]
        nus = tuple(conjugate(lead[o:o + b]) for o, b in zip(offsets, blocks))
        basis = poly_one(n)
        for o, b, nu in zip(offsets, blocks, nus):
            basis = poly_mul(basis, poly_embed(dict(_p_nu(b, nu)), o, n))
        if basis.get(lead) != 1:
            raise NormalizationError("non-unitriangular thin-strand decoding")
        H = poly_add(H, basis, -c)
        out[nus] = out.get(nus, 0) + c
    return out


@lru_cache(maxsize=None)
def balloon_coeffs(eta: Partition, tau: Partition, a: int, b: int) -> tuple:
    """merge(a,b) o (omega_{a,eta} (x) omega_{b,tau}) o split(a,b) as {nu: coeff}."""
    n = a + b
    F = poly_mul(poly_embed(dict(_p_nu(a, eta)), 0, n), poly_embed(dict(_p_nu(b, tau)), a, n))
    H: Poly = {}
    from itertools import combinations
    for S in combinations(range(n), a):
        rest = [k for k in range(n) if k not in S]
        top_of = list(S) + rest
        H = poly_add(H, _apply_word(F, _bubble_word(top_of)))
    return tuple(sorted((nus[0], c) for nus, c in _decode(H, [n]).items()))


@lru_cache(maxsize=None)
def crossing_coeffs(eta: Partition, tau: Partition, a: int, b: int) -> tuple:
    """cross(a,b) o (omega_{a,eta} (x) omega_{b,tau}) o split(a,b) as {(tau', eta'): coeff},
    meaning sum coeff (omega_{b,tau'} (x) omega_{a,eta'}) o split(b,a)."""
    n = a + b
    F = poly_mul(poly_embed(dict(_p_nu(a, eta)), 0, n), poly_embed(dict(_p_nu(b, tau)), a, n))
    top_of = [b + k for k in range(a)] + list(range(b))
    H = _apply_word(F, _bubble_word(top_of))
    return tuple(sorted(_decode(H, [b, a]).items()))


def balloon_expand(eta: Sequence[int], tau: Sequence[int], a: int, b: int) -> NormalForm:
    eta, tau = tuple(sorted(eta, reverse=True)), tuple(sorted(tau, reverse=True))
    if (eta and eta[0] > a) or (tau and tau[0] > b):
        raise ValueError("packet part exceeds strand thickness")
    out = {}
    for nu, c in balloon_coeffs(eta, tau, a, b):
        out[make_cfd((a + b,), (a + b,), [[a + b]], [[nu]])] = c
    return NormalForm((a + b,), (a + b,), out)


# ---- local moves on a single CFD ----

def _merge_parts(p: Partition, q: Partition) -> Partition:
    return tuple(sorted(p + q, reverse=True))


def _with(A, P, rows_a, rows_p, i, count):
    """Replace rows i..i+count-1 by the given rows."""
    return A[:i] + tuple(rows_a) + A[i + count:], P[:i] + tuple(rows_p) + P[i + count:]


def _combine(factors: list[list[tuple[object, int]]]) -> Iterable[tuple[tuple, int]]:
    for pick in product(*factors):
        c = 1
        for _, v in pick:
            c *= v
        if c:
            yield tuple(x for x, _ in pick), c


@lru_cache(maxsize=None)
def _split_packet(nu: Partition, b: int, c: int) -> tuple:
    """split(b,c) o omega_{b+c,nu} = sum coeff (omega_{b,nu1} (x) omega_{c,nu2}) o split(b,c)."""
    terms = {((), ()): 1}
    for r in nu:
        nxt = {}
        for (n1, n2), v in terms.items():
            for r1 in range(0, min(b, r) + 1):
                for r2 in range(0, min(c, r - r1) + 1):
                    e = r - r1 - r2
                    co = factorial(e) * binomial(b - r1, e) * binomial(c - r2, e)
                    if not co:
                        continue
                    k = (_merge_parts(n1, (r1,) if r1 else ()), _merge_parts(n2, (r2,) if r2 else ()))
                    nxt[k] = nxt.get(k, 0) + v * co
        terms = {k: v for k, v in nxt.items() if v}
    return tuple(sorted(terms.items()))


def _vectors_below(total: int, caps: Sequence[int]):
    if not caps:
        if total == 0:
            yield ()
        return
    for x in range(min(total, caps[0]), -1, -1):
        if total - x > sum(caps[1:]):
            break
        for rest in _vectors_below(total - x, caps[1:]):
            yield (x,) + rest


@lru_cache(maxsize=None)
def _split_row(E: ElementaryCFD, i: int, p: int) -> tuple:
    q = E.target[i] - p
    row_a, row_p = E.A[i], E.P[i]
    out = {}
    for b in _vectors_below(p, row_a):
        c = tuple(a - x for a, x in zip(row_a, b))
        factors = []
        for a, x, y, nu in zip(row_a, b, c, row_p):
            if a == 0:
                factors.append([(((), ()), 1)])
            elif x == 0 or y == 0:
                factors.append([((nu, ()) if y == 0 else ((), nu), 1)])
            else:
                factors.append(list(_split_packet(nu, x, y)))
        for pick, co in _combine(factors):
            A, P = _with(E.A, E.P, [b, c], [tuple(k[0] for k in pick), tuple(k[1] for k in pick)], i, 1)
            F = ElementaryCFD(E.source, E.target[:i] + (p, q) + E.target[i + 1:], A, P)
            out[F] = out.get(F, 0) + co
    return tuple(out.items())


@lru_cache(maxsize=None)
def _merge_rows(E: ElementaryCFD, i: int) -> tuple:
    ra, rb = E.A[i], E.A[i + 1]
    pa, pb = E.P[i], E.P[i + 1]
    factors = []
    for x, y, nx, ny in zip(ra, rb, pa, pb):
        if x and y:
            factors.append(list(balloon_coeffs(nx, ny, x, y)))
        else:
            factors.append([(nx if x else ny, 1)])
    new_a = tuple(x + y for x, y in zip(ra, rb))
    out = {}
    for pick, co in _combine(factors):
        A, P = _with(E.A, E.P, [new_a], [pick], i, 2)
        F = ElementaryCFD(E.source, E.target[:i] + (E.target[i] + E.target[i + 1],) + E.target[i + 2:], A, P)
        out[F] = out.get(F, 0) + co
    return tuple(out.items())


@lru_cache(maxsize=None)
def _cross_rows(E: ElementaryCFD, i: int) -> tuple:
    ra, rb = E.A[i], E.A[i + 1]
    pa, pb = E.P[i], E.P[i + 1]
    factors = []
    for x, y, nx, ny in zip(ra, rb, pa, pb):
        if x and y:
            factors.append(list(crossing_coeffs(nx, ny, x, y)))
        else:
            factors.append([((ny, nx), 1)])
    out = {}
    for pick, co in _combine(factors):
        A, P = _with(E.A, E.P, [rb, ra], [tuple(k[0] for k in pick), tuple(k[1] for k in pick)], i, 2)
        F = ElementaryCFD(E.source, E.target[:i] + (E.target[i + 1], E.target[i]) + E.target[i + 2:], A, P)
        out[F] = out.get(F, 0) + co
    return tuple(out.items())


def _nf_add(out: dict, items, scale=1):
    for F, c in items:
        v = out.get(F, 0) + scale * c
        if v:
            out[F] = v
        else:
            out.pop(F, None)


def _lift(fn, terms: dict, *args) -> dict:
    out: dict = {}
    for E, c in terms.items():
        _nf_add(out, fn(E, *args), c)
    return out


# ---- dots ----

@lru_cache(maxsize=None)
def _distribute(r: int, parts: tuple[int, ...]) -> tuple:
    """omega_{sum,r} above a left-associated merge of parts, pushed onto the parts."""
    if len(parts) == 1:
        return (((r,), 1),) if r <= parts[0] else ()
    head, last = parts[:-1], parts[-1]
    x = sum(head)
    out = {}
    for c in range(0, min(r, x) + 1):
        for d in range(0, min(r - c, last) + 1):
            e = r - c - d
            co = factorial(e) * binomial(x - c, e) * binomial(last - d, e)
            if not co:
                continue
            for rs, v in _distribute(c, head):
                k = rs + (d,)
                out[k] = out.get(k, 0) + v * co
    return tuple((k, v) for k, v in out.items() if v)


def _is_leg_level(E: ElementaryCFD) -> bool:
    return all(sum(1 for x in row if x) == 1 for row in E.A)


def _leg_level(E: ElementaryCFD) -> tuple[ElementaryCFD, list[tuple[int, int]]]:
    """Every leg becomes its own target strand; returns the (start, count) of each row."""
    rows_a, rows_p, target, spans = [], [], [], []
    width = len(E.source)
    for ra, rp in zip(E.A, E.P):
        start = len(rows_a)
        for j, (a, nu) in enumerate(zip(ra, rp)):
            if a:
                rows_a.append(tuple(a if k == j else 0 for k in range(width)))
                rows_p.append(tuple(nu if k == j else () for k in range(width)))
                target.append(a)
        spans.append((start, len(rows_a) - start))
    return ElementaryCFD(E.source, tuple(target), tuple(rows_a), tuple(rows_p)), spans


def _col(row: Sequence[int]) -> int:
    for j, x in enumerate(row):
        if x:
            return j
    raise NormalizationError("empty row in leg-level diagram")


_local = threading.local()


def _guard() -> list[tuple[int, int]]:
    # one stack of pending measures per thread
    if not hasattr(_local, "stack"):
        _local.stack = []
    return _local.stack


def _check_measure(m: tuple[int, int]):
    g = _guard()
    if g and not m < g[-1]:
        raise NormalizationError(f"termination measure did not decrease: {m} after {g[-1]}")


def _apply_dot(E: ElementaryCFD, i: int, r: int) -> tuple:
    if r == 0:
        return ((E, 1),)
    if _is_leg_level(E):
        return _push(E, i, r)
    return _dot_general(E, i, r)


@lru_cache(maxsize=None)
def _dot_general(E: ElementaryCFD, i: int, r: int) -> tuple:
    L, spans = _leg_level(E)
    start, count = spans[i]
    parts = tuple(L.target[start:start + count])
    out: dict = {}
    for rs, co in _distribute(r, parts):
        terms = {L: co}
        for k, rk in enumerate(rs):
            if rk:
                terms = _lift(_apply_dot, terms, start + k, rk)
        for s, cnt in reversed(spans):
            for _ in range(cnt - 1):
                terms = _lift(_merge_rows, terms, s)
        _nf_add(out, terms.items())
    return tuple(out.items())


def _inversions(E: ElementaryCFD) -> int:
    cols = [_col(row) for row in E.A]
    return sum(1 for x in range(len(cols)) for y in range(x + 1, len(cols)) if cols[x] > cols[y])


@lru_cache(maxsize=None)
def _push(E: ElementaryCFD, p: int, r: int) -> tuple:
    """omega_{a,r} on top of the single leg forming target strand p."""
    measure = (E.degree + r, _inversions(E))
    _check_measure(measure)
    stack = _guard()
    stack.append(measure)
    try:
        return _push_inner(E, p, r)
    finally:
        stack.pop()


def _push_inner(E: ElementaryCFD, p: int, r: int) -> tuple:
    cols = [_col(row) for row in E.A]
    jp = cols[p]
    crossed = any((q < p and cols[q] > jp) or (q > p and cols[q] < jp) for q in range(len(cols)))
    if not crossed:
        P = [list(row) for row in E.P]
        P[p][jp] = _merge_parts(P[p][jp], (r,))
        return ((ElementaryCFD(E.source, E.target, E.A, tuple(tuple(x) for x in P)), 1),)
    if p + 1 < len(cols) and cols[p] > cols[p + 1]:
        q = p
    elif p > 0 and cols[p - 1] > cols[p]:
        q = p - 1
    else:
        q = next(k for k in range(len(cols) - 1) if cols[k] > cols[k + 1])
    A = list(E.A)
    P = list(E.P)
    A[q], A[q + 1] = A[q + 1], A[q]
    P[q], P[q + 1] = P[q + 1], P[q]
    T = list(E.target)
    T[q], T[q + 1] = T[q + 1], T[q]
    Ep = ElementaryCFD(E.source, tuple(T), tuple(A), tuple(P))
    out: dict = {}
    if q == p:
        # dot on the upper-left end of the crossing: slides to the lower right
        x, y = Ep.target[q], Ep.target[q + 1]
        _nf_add(out, _lift(_cross_rows, dict(_push(Ep, q + 1, r)), q).items())
        for t in range(1, min(x, y, r) + 1):
            _nf_add(out, _fold_local({Ep: 1}, q, [x, y], _q_top_left(x, y, r, t)).items(), factorial(t))
    elif q == p - 1:
        # dot on the upper-right end: slides to the lower left
        b, a = Ep.target[q], Ep.target[q + 1]
        _nf_add(out, _lift(_cross_rows, dict(_push(Ep, q, r)), q).items())
        for t in range(1, min(a, b, r) + 1):
            _nf_add(out, _fold_local({Ep: 1}, q, [b, a], _q_bottom_left(b, a, r, t)).items(), -factorial(t))
    else:
        _nf_add(out, _lift(_cross_rows, dict(_push(Ep, p, r)), q).items())
    return tuple(out.items())


def _q_top_left(x: int, y: int, r: int, t: int) -> list[tuple]:
    return [("split", 0, t), ("split", 2, y - t), ("dot", 2, r - t), ("cross", 1),
            ("merge", 0), ("merge", 1)]


def _q_bottom_left(b: int, a: int, r: int, t: int) -> list[tuple]:
    return [("split", 0, t), ("split", 2, a - t), ("cross", 1), ("dot", 2, r - t),
            ("merge", 0), ("merge", 1)]


def _fold_local(terms: dict, offset: int, strands: list[int], ops: list[tuple]) -> dict:
    """Run a small word of local moves whose strands may have thickness zero."""
    strands = list(strands)

    def row(k: int) -> int:
        return offset + sum(1 for s in strands[:k] if s)

    for op in ops:
        kind, k = op[0], op[1]
        if kind == "split":
            first = op[2]
            whole = strands[k]
            second = whole - first
            if first and second:
                terms = _lift(_split_row_t, terms, row(k), first)
            strands[k:k + 1] = [first, second]
        elif kind == "merge":
            x, y = strands[k], strands[k + 1]
            if x and y:
                terms = _lift(_merge_rows, terms, row(k))
            strands[k:k + 2] = [x + y]
        elif kind == "cross":
            x, y = strands[k], strands[k + 1]
            if x and y:
                terms = _lift(_cross_rows, terms, row(k))
            strands[k], strands[k + 1] = y, x
        elif kind == "dot":
            if op[2]:
                terms = _lift(_apply_dot, terms, row(k), op[2])
        if not terms:
            break
    return terms


def _split_row_t(E: ElementaryCFD, i: int, p: int) -> tuple:
    return _split_row(E, i, p)


# ---- the fold ----

def apply_atom(terms: dict, kind: str, row: int, a: int, b: int) -> dict:
    if kind == "id":
        return terms
    if kind == "merge":
        return _lift(_merge_rows, terms, row)
    if kind == "split":
        return _lift(_split_row, terms, row, a)
    if kind == "cross":
        return _lift(_cross_rows, terms, row)
    if kind == "dot":
        return _lift(_apply_dot, terms, row, a)
    if kind == "wdot":
        return _lift(_apply_dot, terms, row, b)
    raise ValueError(kind)


def _check_ring(values: Iterable, ring: str):
    if ring not in ("Z", "Q"):
        raise ValueError(f"unknown ring {ring}")
    if ring == "Z":
        for v in values:
            if isinstance(scalar(v), Fraction):
                raise RingError(f"coefficient {v} is not an integer; use ring Q")


def normalize_diagram(d: Diagram) -> dict:
    terms = {identity_cfd(d.source): 1}
    for layer in d.layers:
        row = 0
        for at in layer:
            terms = apply_atom(terms, at.kind, row, at.a, at.b)
            row += len(at.target)
    return terms


def normalize(m: Morphism, ring: str = "Z") -> NormalForm:
    _check_ring(m.terms.values(), ring)
    out: dict = {}
    for d, c in m.terms.items():
        _nf_add(out, normalize_diagram(d).items(), c)
    nf = NormalForm(m.source, m.target, out)
    _check_ring(nf.coeffs.values(), ring)
    return nf


def multiply_normal(f: NormalForm, g: NormalForm) -> NormalForm:
    """f after g."""
    if f.source != g.target:
        from .diagram import BoundaryError
        raise BoundaryError(f"cannot compose {g.source}->{g.target} with {f.source}->{f.target}")
    out: dict = {}
    for E, c in g.coeffs.items():
        for F, v in f.coeffs.items():
            terms = {E: 1}
            for layer in cfd_to_diagram(F).layers:
                row = 0
                for at in layer:
                    terms = apply_atom(terms, at.kind, row, at.a, at.b)
                    row += len(at.target)
            _nf_add(out, terms.items(), c * v)
    return NormalForm(g.source, f.target, out)


# ---- cyclotomic quotient ----

class LevelParams(NamedTuple):
    ell: int
    u: tuple

    @staticmethod
    def of(u: Sequence) -> "LevelParams":
        u = tuple(scalar(x) for x in u)
        if not u:
            raise ValueError("level must be at least 1")
        return LevelParams(len(u), u)


def g_element(r: int, u) -> Morphism:
    if r < 1:
        raise ValueError("g_element needs r >= 1")
    out = Morphism.zero((r,), (r,))
    for i in range(r + 1):
        co = (-1) ** i * rising(u, i)
        part = wdot(r, r - i) if r - i else id_(r)
        out = out + part * co
    return out


@lru_cache(maxsize=None)
def _reduce_front(a: int, nu: Partition, L: LevelParams) -> tuple:
    """omega_{a,nu} on the leftmost strand, rewritten modulo the cyclotomic ideal."""
    ell = L.ell
    if len(nu) < ell:
        return ((nu, 1),)
    if len(nu) > ell:
        out: dict = {}
        head, tail = nu[:ell], nu[ell:]
        for kappa, c in _reduce_front(a, head, L):
            for k2, c2 in _reduce_front(a, _merge_parts(kappa, tail), L):
                out[k2] = out.get(k2, 0) + c * c2
        return tuple((k, v) for k, v in out.items() if v)
    r = nu[-1]
    out: dict = {}
    if r == a:
        # prod_j g_{a,u_j} = 0 with leading term omega_{a,(a^ell)}
        for idx in product(range(a + 1), repeat=ell):
            if not any(idx):
                continue
            co = 1
            parts = []
            for j, i in enumerate(idx):
                co *= (-1) ** i * rising(L.u[j], i)
                if a - i:
                    parts.append(a - i)
            if not co:
                continue
            for k2, c2 in _reduce_front(a, tuple(sorted(parts, reverse=True)), L):
                out[k2] = out.get(k2, 0) - co * c2
        return tuple((k, v) for k, v in out.items() if v)
    # omega_{a,r} = merge o (omega_r (x) 1) o split: push the other parts into the balloon
    rest = nu[:-1]
    legs = {((r,), ()): 1}
    for part in rest:
        nxt: dict = {}
        for (n1, n2), v in legs.items():
            for (m1, m2), w in _split_packet((part,), r, a - r):
                k = (_merge_parts(n1, m1), _merge_parts(n2, m2))
                nxt[k] = nxt.get(k, 0) + v * w
        legs = {k: v for k, v in nxt.items() if v}
    for (n1, n2), v in legs.items():
        for kappa, c in _reduce_front(r, n1, L):
            for rho, c2 in balloon_coeffs(kappa, n2, r, a - r):
                if len(rho) >= ell:
                    for rho2, c3 in _reduce_front(a, rho, L):
                        out[rho2] = out.get(rho2, 0) + v * c * c2 * c3
                else:
                    out[rho] = out.get(rho, 0) + v * c * c2
    return tuple((k, v) for k, v in out.items() if v)


def _over_long(E: ElementaryCFD, ell: int) -> list[tuple[int, int]]:
    return [(i, j) for i, row in enumerate(E.P) for j, p in enumerate(row) if len(p) >= ell]


def _rebuild(E: ElementaryCFD, leg: tuple[int, int], nu: Partition, strip: bool) -> list[tuple]:
    """Word (in fold moves) rebuilding E from its source with one packet changed.

    With strip=True the chosen leg's packet is applied on the leftmost strand
    after moving the leg there; otherwise in place.
    """
    bottom, top = _legs(E)
    ops = []
    # splits of each column, left to right, tracked on rows
    row = 0
    for j in range(len(E.source)):
        parts = [E.A[i][j] for i in range(len(E.target)) if E.A[i][j]]
        for a in parts[:-1]:
            ops.append(("split", row, a, 0))
            row += 1
        row += 1
    for k, (i, j) in enumerate(bottom):
        if (i, j) == leg:
            continue
        for part in E.P[i][j]:
            ops.append(("wdot", k, E.A[i][j], part))
    k0 = bottom.index(leg)
    a0 = E.A[leg[0]][leg[1]]
    if strip:
        thick = [E.A[i][j] for i, j in bottom]
        for k in range(k0, 0, -1):
            ops.append(("cross", k - 1, thick[k - 1], thick[k]))
            thick[k - 1], thick[k] = thick[k], thick[k - 1]
        for part in nu:
            ops.append(("wdot", 0, a0, part))
        for k in range(0, k0):
            ops.append(("cross", k, thick[k], thick[k + 1]))
            thick[k], thick[k + 1] = thick[k + 1], thick[k]
    else:
        for part in nu:
            ops.append(("wdot", k0, a0, part))
    pos_top = {lg: k for k, lg in enumerate(top)}
    cur = [E.A[i][j] for i, j in bottom]
    for k in _bubble_word([pos_top[lg] for lg in bottom]):
        ops.append(("cross", k, cur[k], cur[k + 1]))
        cur[k], cur[k + 1] = cur[k + 1], cur[k]
    row = 0
    for ra in E.A:
        cnt = sum(1 for x in ra if x)
        for _ in range(cnt - 1):
            ops.append(("merge", row, 0, 0))
        row += 1
    return ops


def _run(E0: ElementaryCFD, ops: list[tuple]) -> dict:
    terms = {E0: 1}
    for kind, row, a, b in ops:
        terms = apply_atom(terms, kind, row, a, b)
    return terms


def _cyc_reduce(terms: dict, L: LevelParams) -> dict:
    out: dict = {}
    work = dict(terms)
    guard = 0
    while work:
        guard += 1
        if guard > 10**6:
            raise NormalizationError("level reduction did not terminate")
        E = max(work, key=lambda F: (F.degree, len(_over_long(F, L.ell)), F.sort_key()))
        c = work.pop(E)
        bad = _over_long(E, L.ell)
        if not bad:
            _nf_add(out, [(E, c)])
            continue
        for F, v in _reduce_one(E, L):
            _nf_add(work, [(F, v)], c)
    return out


@lru_cache(maxsize=None)
def _reduce_one(E: ElementaryCFD, L: LevelParams) -> tuple:
    """One level-reduction step: E is congruent to the returned combination."""
    leg = _over_long(E, L.ell)[-1]
    nu = E.P[leg[0]][leg[1]]
    a0 = E.A[leg[0]][leg[1]]
    base = identity_cfd(E.source)
    out: dict = {}
    # E = W_front - (W_front - E), where W_front moves the packet to the leftmost strand
    front = _run(base, _rebuild(E, leg, nu, strip=True))
    corr = dict(front)
    _nf_add(corr, [(E, 1)], -1)
    _nf_add(out, corr.items(), -1)
    for kappa, c in _reduce_front(a0, nu, L):
        _nf_add(out, _run(base, _rebuild(E, leg, kappa, strip=True)).items(), c)
    return tuple(out.items())


def cyclotomic_normalize(m: Morphism | NormalForm, L: LevelParams, ring: str = "Z") -> NormalForm:
    nf = m if isinstance(m, NormalForm) else normalize(m, ring="Q")
    out = _cyc_reduce(dict(nf.coeffs), L)
    res = NormalForm(nf.source, nf.target, out)
    if ring == "Z" and not res.is_integral():
        raise RingError("level reduction produced non-integral coefficients")
    return res
