"""Exact matrix representation on exterior powers of the twisted natural module.

A vector in the wedge space of a composition mu is a sparse dict from keys to
coefficients; a key is a tuple of blocks, one strictly increasing tuple of box
indices (1..N) per part of mu.  Merges, splits and crossings act blockwise.
Dots are applied by embedding the wedge blocks into the full tensor power,
acting there with the polynomial generators and reading off the wedge
coefficients again.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, gcd
from typing import Iterable, Sequence

from .combinatorics import Composition, composition
from .diagram import Atom, Diagram, Morphism, scalar

Key = tuple[tuple[int, ...], ...]
Vector = dict


class OracleError(RuntimeError):
    pass


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class RepParams:
    """Shape Lambda (weakly increasing row lengths) and twist c; u is derived."""

    shape: tuple[int, ...]
    c: tuple
    u: tuple = field(init=False)
    row: tuple[int, ...] = field(init=False, repr=False)
    col: tuple[int, ...] = field(init=False, repr=False)
    left: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        shape = tuple(self.shape)
        if not shape or any(b < a for a, b in zip(shape, shape[1:])) or shape[0] < 1:
            raise ValueError(f"shape must be weakly increasing positive rows: {shape}")
        ell = shape[-1]
        c = tuple(scalar(x) for x in self.c)
        if len(c) != ell:
            raise ValueError(f"need {ell} twist parameters, got {len(c)}")
        n = len(shape)
        conj = [sum(1 for r in shape if r >= i) for i in range(1, ell + 1)]
        u = tuple(scalar(c[i] + conj[i] - n) for i in range(ell))
        row, col, left = [0], [0], [0]
        box = 0
        for r, length in enumerate(shape, start=1):
            for j in range(1, length + 1):
                box += 1
                row.append(r)
                col.append(j)
                left.append(box - 1 if j > 1 else 0)
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "row", tuple(row))
        object.__setattr__(self, "col", tuple(col))
        object.__setattr__(self, "left", tuple(left))

    @property
    def ell(self) -> int:
        return self.shape[-1]

    @property
    def n(self) -> int:
        return len(self.shape)

    @property
    def N(self) -> int:
        return sum(self.shape)

    @property
    def full_rows(self) -> int:
        """Number of rows of maximal length (the conjugate's last entry)."""
        return sum(1 for r in self.shape if r == self.ell)

    @staticmethod
    def rectangle(rows: int, ell: int, c: Sequence | None = None) -> "RepParams":
        if c is None:
            c = [1000 * i for i in range(1, ell + 1)]
        return RepParams((ell,) * rows, tuple(c))

    @staticmethod
    def for_u(rows: int, u: Sequence) -> "RepParams":
        """Rectangle whose derived parameters equal u exactly."""
        return RepParams((len(u),) * rows, tuple(u))


def wedge_basis(mu: Sequence[int], N: int) -> list[Key]:
    for a in mu:
        if a > N:
            raise DimensionError(f"thickness {a} exceeds N={N}")
    blocks = [list(combinations(range(1, N + 1), a)) for a in mu]
    out: list[Key] = [()]
    for bl in blocks:
        out = [k + (b,) for k in out for b in bl]
    return out


def wedge_dim(mu: Sequence[int], N: int) -> int:
    out = 1
    for a in mu:
        out *= comb(N, a)
    return out


def _add(out: dict, key, c):
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def _sort_sign(seq: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    if len(set(seq)) < len(seq):
        return 0, ()
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return (-1) ** inv, tuple(sorted(seq))


@lru_cache(maxsize=None)
def _shuffles(block: tuple[int, ...], a: int) -> tuple:
    out = []
    for S in combinations(range(len(block)), a):
        Sset = set(S)
        rest = [i for i in range(len(block)) if i not in Sset]
        inv = sum(1 for s in S for t in rest if s > t)
        out.append(((-1) ** inv, tuple(block[i] for i in S), tuple(block[i] for i in rest)))
    return tuple(out)


def _act_merge(vec: Vector, p: int) -> Vector:
    out: Vector = {}
    for key, c in vec.items():
        sign, blk = _sort_sign(key[p] + key[p + 1])
        if sign:
            _add(out, key[:p] + (blk,) + key[p + 2:], sign * c)
    return out


def _act_split(vec: Vector, p: int, a: int) -> Vector:
    out: Vector = {}
    for key, c in vec.items():
        for sign, first, second in _shuffles(key[p], a):
            _add(out, key[:p] + (first, second) + key[p + 1:], sign * c)
    return out


def _act_cross(vec: Vector, p: int) -> Vector:
    out: Vector = {}
    for key, c in vec.items():
        x, y = key[p], key[p + 1]
        sign = -1 if (len(x) * len(y)) % 2 else 1
        _add(out, key[:p] + (y, x) + key[p + 2:], sign * c)
    return out


@lru_cache(maxsize=None)
def _signed_perms(block: tuple[int, ...]) -> tuple:
    out = []
    for perm in permutations(range(len(block))):
        inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
        out.append(((-1) ** inv, tuple(block[i] for i in perm)))
    return tuple(out)


def x_tensor(vec: dict, k: int, params: RepParams) -> dict:
    """The polynomial generator x_k on the plain tensor power (0-based k)."""
    out: dict = {}
    col, left, u = params.col, params.left, params.u
    for t, c in vec.items():
        ik = t[k]
        ck = col[ik]
        if left[ik]:
            _add(out, t[:k] + (left[ik],) + t[k + 1:], c)
        _add(out, t, u[ck - 1] * c)
        for j, ij in enumerate(t):
            if j < k and col[ij] >= ck:
                s = list(t)
                s[j], s[k] = s[k], s[j]
                _add(out, tuple(s), c)
            elif j > k and col[ij] < ck:
                s = list(t)
                s[j], s[k] = s[k], s[j]
                _add(out, tuple(s), -c)
    return out


def _swap_in(B: tuple[int, ...], idx: int, y: int) -> tuple[int, tuple[int, ...] | None]:
    """Replace B[idx] by y and re-sort; returns (sign, block), sign 0 on a repeat."""
    if B[idx] == y:
        return 1, B
    if y in B:
        return 0, None
    inv = sum(1 for z in B[:idx] if z > y) + sum(1 for z in B[idx + 1:] if z < y)
    return (-1) ** inv, tuple(sorted(B[:idx] + (y,) + B[idx + 1:]))


def _x_slot(terms: dict, params: RepParams) -> dict:
    """Peel the next slot off the active block and apply x to it.

    A state is (left blocks, head, tail, right blocks).  The head holds the
    slots already acted on, as an explicit tensor; the tail and every other
    block are still antisymmetrized.  x on slot k commutes with permutations
    inside any block lying wholly on one side of k, so a swap into such a
    block is summed over the block in one step.
    """
    out: dict = {}
    col, left, u = params.col, params.left, params.u
    for (L, head, tail, R), c0 in terms.items():
        k = len(head)
        for idx, ik in enumerate(tail):
            c = -c0 if idx % 2 else c0
            rest = tail[:idx] + tail[idx + 1:]
            ck = col[ik]
            t = head + (ik,)
            if left[ik]:
                _add(out, (L, head + (left[ik],), rest, R), c)
            _add(out, (L, t, rest, R), u[ck - 1] * c)
            for j, ij in enumerate(head):
                if col[ij] >= ck:
                    s = list(t)
                    s[j], s[k] = s[k], s[j]
                    _add(out, (L, tuple(s), rest, R), c)
            for on_left, blocks in ((True, L), (False, (rest,) + R)):
                for bi, B in enumerate(blocks):
                    for bidx, b in enumerate(B):
                        if (col[b] >= ck) != on_left:
                            continue
                        sign, nb = _swap_in(B, bidx, ik)
                        if not sign:
                            continue
                        nbl = blocks[:bi] + (nb,) + blocks[bi + 1:]
                        if on_left:
                            _add(out, (nbl, head + (b,), rest, R), sign * c)
                        else:
                            _add(out, (L, head + (b,), nbl[0], nbl[1:]), -sign * c)
    return out


@lru_cache(maxsize=100000)
def _full_dot_key(key: Key, p: int, params: RepParams) -> tuple:
    terms = {(key[:p], (), key[p], key[p + 1:]): 1}
    for _ in range(len(key[p])):
        terms = _x_slot(terms, params)
    out: Vector = {}
    for (L, h, _, R), c in terms.items():
        if all(h[i] < h[i + 1] for i in range(len(h) - 1)):
            _add(out, L + (h,) + R, c)
    return tuple(out.items())


def _act_full_dot(vec: Vector, p: int, params: RepParams) -> Vector:
    out: Vector = {}
    for key, c in vec.items():
        for kk, cc in _full_dot_key(key, p, params):
            _add(out, kk, c * cc)
    return out


def _act_wdot(vec: Vector, p: int, a: int, r: int, params: RepParams) -> Vector:
    if r == 0:
        return dict(vec)
    if r == a:
        return _act_full_dot(vec, p, params)
    v = _act_split(vec, p, r)
    v = _act_full_dot(v, p, params)
    return _act_merge(v, p)


def act_atom(at: Atom, vec: Vector, p: int, params: RepParams) -> Vector:
    """1 (x) at (x) 1 with the atom's leftmost input at block position p."""
    k = at.kind
    if k == "id":
        return vec
    if k == "merge":
        return _act_merge(vec, p)
    if k == "split":
        return _act_split(vec, p, at.a)
    if k == "cross":
        return _act_cross(vec, p)
    if k == "dot":
        return _act_full_dot(vec, p, params)
    if k == "wdot":
        return _act_wdot(vec, p, at.a, at.b, params)
    raise ValueError(k)


def apply_diagram(d: Diagram, vec: Vector, params: RepParams) -> Vector:
    for layer in d.layers:
        p = 0
        for at in layer:
            vec = act_atom(at, vec, p, params)
            p += len(at.target)
            if not vec:
                return vec
    return vec


def apply_morphism(m: Morphism, vec: Vector, params: RepParams) -> Vector:
    for a in m.source + m.target:
        if a > params.N:
            raise DimensionError(f"thickness {a} exceeds N={params.N}")
    out: Vector = {}
    for d, c in m.terms.items():
        for key, v in apply_diagram(d, vec, params).items():
            _add(out, key, c * v)
    return out


class RationalMatrix:
    """Sparse exact matrix; columns indexed by source wedge keys."""

    def __init__(self, source: Composition, target: Composition, N: int, columns: dict[Key, Vector]):
        self.source, self.target, self.N = source, target, N
        self.columns = {k: v for k, v in columns.items() if v}

    @property
    def shape(self) -> tuple[int, int]:
        return wedge_dim(self.target, self.N), wedge_dim(self.source, self.N)

    def is_zero(self) -> bool:
        return not self.columns

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and (self.source, self.target, self.columns) == (
            other.source, other.target, other.columns)

    def _combine(self, other: "RationalMatrix", sign: int) -> "RationalMatrix":
        cols: dict[Key, Vector] = {k: dict(v) for k, v in self.columns.items()}
        for k, v in other.columns.items():
            col = cols.setdefault(k, {})
            for kk, c in v.items():
                _add(col, kk, sign * c)
        return RationalMatrix(self.source, self.target, self.N, cols)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self._combine(other, -1)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        cols: dict[Key, Vector] = {}
        for k, v in other.columns.items():
            out: Vector = {}
            for kk, c in v.items():
                for k3, c3 in self.columns.get(kk, {}).items():
                    _add(out, k3, c * c3)
            cols[k] = out
        return RationalMatrix(other.source, self.target, self.N, cols)

    def to_dense(self) -> list[list]:
        rows = {k: i for i, k in enumerate(wedge_basis(self.target, self.N))}
        src = wedge_basis(self.source, self.N)
        out = [[0] * len(src) for _ in rows]
        for j, k in enumerate(src):
            for kk, c in self.columns.get(k, {}).items():
                out[rows[kk]][j] = c
        return out


def evaluate(m: Morphism, params: RepParams) -> RationalMatrix:
    cols = {k: apply_morphism(m, {k: 1}, params) for k in wedge_basis(m.source, params.N)}
    return RationalMatrix(m.source, m.target, params.N, cols)


def _context_morphism(atom: Atom, left: Sequence[int], right: Sequence[int]) -> Morphism:
    row = [Atom("id", t) for t in left] + [atom] + [Atom("id", t) for t in right]
    return Morphism.of(Diagram.build([row], tuple(left) + atom.source + tuple(right)))


def act_web_generator(atom: Atom, left: Sequence[int], right: Sequence[int], params: RepParams) -> RationalMatrix:
    if atom.kind not in ("merge", "split", "cross"):
        raise ValueError("web generators are merge, split and cross")
    return evaluate(_context_morphism(atom, left, right), params)


def act_dot(left: Sequence[int], right: Sequence[int], params: RepParams) -> RationalMatrix:
    return evaluate(_context_morphism(Atom("dot", 1), left, right), params)


def act_packet(a: int, r: int, left: Sequence[int], right: Sequence[int], params: RepParams) -> RationalMatrix:
    """omega_{a,r} in context, through its defining composite."""
    if r == 0:
        atom = Atom("id", a)
    else:
        atom = Atom("wdot", a, r)
    return evaluate(_context_morphism(atom, left, right), params)


# ---- exact linear algebra ----

class Echelon:
    """Incremental row echelon form over Q with integer rows (fraction-free)."""

    def __init__(self, width: int):
        self.width = width
        self.rows: dict[int, list[int]] = {}

    @staticmethod
    def _primitive(row: list[int]) -> list[int]:
        g = 0
        for x in row:
            g = gcd(g, x)
            if g == 1:
                break
        if g > 1:
            row = [x // g for x in row]
        return row

    def reduce(self, row: list[int]) -> list[int]:
        row = list(row)
        for i in range(self.width):
            if row[i] and i in self.rows:
                piv = self.rows[i]
                a, b = piv[i], row[i]
                row = [a * x - b * y for x, y in zip(row, piv)]
                row = self._primitive(row)
        return row

    def add(self, row: list[int]) -> bool:
        row = self.reduce(row)
        for i in range(self.width):
            if row[i]:
                if row[i] < 0:
                    row = [-x for x in row]
                self.rows[i] = row
                return True
        return False

    @property
    def rank(self) -> int:
        return len(self.rows)


def _integral_row(values: Sequence) -> list[int]:
    den = 1
    for v in values:
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    return [int(v * den) for v in values]


def solve_exact(rows: Iterable[Sequence], n: int) -> list[Fraction] | None:
    """Solve the consistent system given as augmented rows [a_1..a_n | b]."""
    ech = Echelon(n + 1)
    for r in rows:
        ech.add(_integral_row(r))
    if n in ech.rows:
        raise OracleError("inconsistent linear system")
    if ech.rank < n:
        return None
    # back substitution on the fully reduced echelon rows
    sol = [Fraction(0)] * n
    for i in sorted(ech.rows, reverse=True):
        row = ech.rows[i]
        acc = Fraction(row[n])
        for j in range(i + 1, n):
            if row[j]:
                acc -= row[j] * sol[j]
        sol[i] = acc / row[i]
    return sol


def top_vector(mu: Sequence[int], params: RepParams) -> Key:
    """Blocks filled with the last-column boxes of consecutive rows."""
    ell = params.ell
    last_col = [b for b in range(1, params.N + 1) if params.col[b] == ell]
    out, pos = [], 0
    for a in mu:
        out.append(tuple(last_col[pos:pos + a]))
        pos += a
    return tuple(out)


ENUMERATE_LIMIT = 20000


def random_key(mu: Sequence[int], N: int, rng: random.Random) -> Key:
    return tuple(tuple(sorted(rng.sample(range(1, N + 1), a))) for a in mu)


def _probe_keys(mu: Sequence[int], params: RepParams, rng: random.Random) -> Iterable[Key]:
    """Top vector first (when it exists), then distinct basis keys in random order.

    Small bases are shuffled outright; large ones are sampled without ever
    being listed, so the stream is only exhaustive in the first case.
    """
    first = top_vector(mu, params) if sum(mu) <= params.full_rows else None
    seen = set()
    if first is not None:
        seen.add(first)
        yield first
    total = wedge_dim(mu, params.N)
    if total <= ENUMERATE_LIMIT:
        order = wedge_basis(mu, params.N)
        rng.shuffle(order)
        for k in order:
            if k not in seen:
                yield k
        return
    while len(seen) < total:
        k = random_key(mu, params.N, rng)
        if k not in seen:
            seen.add(k)
            yield k


def oracle_params(weight: int, degree_bound: int, c: Sequence | None = None) -> RepParams:
    return RepParams.rectangle(max(weight, 1), degree_bound + 1, c)


def _images(m: Morphism, keys: list[Key], params: RepParams) -> list[Vector]:
    return [apply_morphism(m, {k: 1}, params) for k in keys]


def _flatten(vectors: list[Vector]) -> dict:
    out = {}
    for i, v in enumerate(vectors):
        for k, c in v.items():
            out[(i, k)] = c
    return out


def oracle_coefficients(m: Morphism, basis: list[Morphism], params: RepParams,
                        seed: int = 0, check_probes: int = 3) -> list[Fraction]:
    """Coefficients y with m = sum y_i basis_i under evaluation (assumed unique)."""
    rng = random.Random(seed)
    n = len(basis)
    if n == 0:
        if any(apply_morphism(m, {k: 1}, params) for k in wedge_basis(m.source, params.N)):
            raise OracleError("nonzero morphism in an empty hom space")
        return []
    ech = Echelon(n + 1)
    probes = _probe_keys(m.source, params, rng)
    used: list[Key] = []
    for key in probes:
        used.append(key)
        cols = [apply_morphism(b, {key: 1}, params) for b in basis]
        rhs = apply_morphism(m, {key: 1}, params)
        coords = set(rhs)
        for v in cols:
            coords.update(v)
        for kk in sorted(coords):
            ech.add(_integral_row([v.get(kk, 0) for v in cols] + [rhs.get(kk, 0)]))
        if n in ech.rows:
            raise OracleError("morphism is not in the span of the basis images")
        if ech.rank == n:
            break
    if ech.rank < n:
        raise OracleError("basis images are linearly dependent")
    sol = [Fraction(0)] * n
    for i in sorted(ech.rows, reverse=True):
        row = ech.rows[i]
        acc = Fraction(row[n])
        for j in range(i + 1, n):
            if row[j]:
                acc -= row[j] * sol[j]
        sol[i] = acc / row[i]
    used_set = set(used)
    if wedge_dim(m.source, params.N) <= ENUMERATE_LIMIT:
        rest = [k for k in wedge_basis(m.source, params.N) if k not in used_set]
        checks = rng.sample(rest, min(check_probes, len(rest)))
    else:
        checks = []
        while len(checks) < check_probes:
            k = random_key(m.source, params.N, rng)
            if k not in used_set and k not in checks:
                checks.append(k)
    for key in checks:
        lhs = apply_morphism(m, {key: 1}, params)
        rhs: Vector = {}
        for y, b in zip(sol, basis):
            if y:
                for kk, c in apply_morphism(b, {key: 1}, params).items():
                    _add(rhs, kk, y * c)
        if lhs != {k: scalar(v) for k, v in rhs.items() if v}:
            raise OracleError("solved coefficients fail on a verification probe")
    return [scalar(y) for y in sol]


def oracle_normalize(m: Morphism, degree_bound: int | None = None, c: Sequence | None = None, seed: int = 0):
    """Normal form of m obtained purely from the representation."""
    from .normalizer import NormalForm, cfd_to_diagram, enumerate_cfds

    if degree_bound is None:
        degree_bound = max([d.degree for d in m.terms], default=0)
    weight = sum(m.source)
    params = oracle_params(weight, degree_bound, c)
    cfds = enumerate_cfds(m.source, m.target, max_degree=degree_bound)
    basis = [Morphism.of(cfd_to_diagram(E)) for E in cfds]
    ys = oracle_coefficients(m, basis, params, seed=seed)
    return NormalForm(m.source, m.target, {E: y for E, y in zip(cfds, ys) if y})


def hom_rank(mu: Sequence[int], nu: Sequence[int], ell: int, params: RepParams, seed: int = 0) -> int:
    """Rank of the images of the level-ell basis mu -> nu."""
    from .normalizer import cfd_to_diagram, enumerate_cfds

    mu, nu = composition(mu), composition(nu)
    if sum(mu) > params.full_rows:
        raise ValueError(f"weight {sum(mu)} exceeds the number of full rows {params.full_rows}")
    cfds = enumerate_cfds(mu, nu, level=ell)
    basis = [Morphism.of(cfd_to_diagram(E)) for E in cfds]
    n = len(basis)
    ech = Echelon(n)
    rng = random.Random(seed)
    for key in _probe_keys(mu, params, rng):
        cols = [apply_morphism(b, {key: 1}, params) for b in basis]
        coords = set()
        for v in cols:
            coords.update(v)
        for kk in sorted(coords):
            ech.add(_integral_row([v.get(kk, 0) for v in cols]))
        if ech.rank == n:
            break
    return ech.rank
