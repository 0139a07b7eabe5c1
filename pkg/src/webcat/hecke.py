"""Hecke algebra side: affine Hecke generators inside End(1^m), the
cyclotomic Hecke basis acting on V^{(x)m}, idempotent tableaux and the
dimension checks relating Hom spaces between permutation modules to the
level-ell chicken foot basis.

All Hecke elements are realised as web morphisms on thin strands and acted
out through ``rep_oracle``.  Evaluation reads diagrams bottom to top, so a
product h1 h2 is h1 stacked under h2 and the representation is a right
action.  Under it s_i acts by minus the place transposition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Iterable, Sequence

from .combinatorics import Composition, composition, factorial
from .diagram import Morphism, cross, dot, identity, stack, tensor_all
from .normalizer import LevelParams, enumerate_cfds
from .rep_oracle import Echelon, RationalMatrix, RepParams, _integral_row, apply_morphism, evaluate

Perm = tuple[int, ...]


# ---- affine Hecke generators ----

def x_gen(j: int, m: int) -> Morphism:
    """Dot on strand j (1-based) of 1^m."""
    if not 1 <= j <= m:
        raise ValueError(f"strand {j} outside 1..{m}")
    return tensor_all(identity((1,) * (j - 1)), dot(1), identity((1,) * (m - j)))


def s_gen(i: int, m: int) -> Morphism:
    """Thin crossing of strands i and i+1 (1-based)."""
    if not 1 <= i < m:
        raise ValueError(f"s_{i} needs 1 <= i < {m}")
    return tensor_all(identity((1,) * (i - 1)), cross(1, 1), identity((1,) * (m - i - 1)))


def embed_affine_hecke(m: int) -> dict[str, Morphism]:
    """Generators x_1..x_m and s_1..s_{m-1} as endomorphisms of 1^m."""
    if m < 1:
        raise ValueError("m must be at least 1")
    gens = {f"x{j}": x_gen(j, m) for j in range(1, m + 1)}
    gens.update({f"s{i}": s_gen(i, m) for i in range(1, m)})
    return gens


def product_of(parts: Sequence[Morphism], m: int) -> Morphism:
    """h1 h2 ... as a morphism: h1 at the bottom."""
    out = identity((1,) * m)
    for p in parts:
        out = stack(out, p)
    return out


def reduced_word(w: Perm) -> list[int]:
    """A reduced word i_1 i_2 ... with w = s_{i_1} s_{i_2} ... (one-line notation, 1-based)."""
    cur = list(w)
    word: list[int] = []
    changed = True
    while changed:
        changed = False
        for k in range(len(cur) - 1):
            if cur[k] > cur[k + 1]:
                cur[k], cur[k + 1] = cur[k + 1], cur[k]
                word.append(k + 1)
                changed = True
    return word[::-1]


def perm_morphism(w: Perm) -> Morphism:
    m = len(w)
    return product_of([s_gen(i, m) for i in reduced_word(w)], m)


@dataclass(frozen=True)
class HeckeBasisElement:
    """w x_1^{r_1} ... x_m^{r_m}."""

    w: Perm
    exponents: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.w) != list(range(1, len(self.w) + 1)):
            raise ValueError(f"{self.w} is not a permutation")
        if len(self.exponents) != len(self.w) or any(r < 0 for r in self.exponents):
            raise ValueError("need one non-negative exponent per strand")

    @property
    def m(self) -> int:
        return len(self.w)

    def check_level(self, ell: int):
        if any(r >= ell for r in self.exponents):
            raise ValueError(f"exponents must be < {ell}")

    def morphism(self) -> Morphism:
        m = self.m
        xs = [x_gen(j + 1, m) for j, r in enumerate(self.exponents) for _ in range(r)]
        return stack(perm_morphism(self.w), product_of(xs, m))


def hecke_basis(m: int, ell: int) -> list[HeckeBasisElement]:
    return [HeckeBasisElement(w, r)
            for w in permutations(range(1, m + 1))
            for r in product(range(ell), repeat=m)]


def hecke_action_matrix(h: HeckeBasisElement | Morphism, m: int, params: RepParams) -> RationalMatrix:
    mor = h.morphism() if isinstance(h, HeckeBasisElement) else h
    if mor.source != (1,) * m:
        raise ValueError(f"element does not act on {m} thin strands")
    return evaluate(mor, params)


def young_sum(mu: Sequence[int]) -> Morphism:
    """x_mu: the sum of all w in the Young subgroup of the composition mu."""
    mu = composition(mu)
    m = sum(mu)
    out = Morphism.zero((1,) * m, (1,) * m)
    blocks, start = [], 1
    for a in mu:
        blocks.append(list(permutations(range(start, start + a))))
        start += a
    for pieces in product(*blocks):
        w = tuple(i for p in pieces for i in p)
        out = out + perm_morphism(w)
    return out


# ---- idempotent tableaux ----

@dataclass(frozen=True)
class IdempotentTableau:
    """A filling of shape Lambda whose only nonzero entries are rightmost in their rows.

    ``rightmost`` holds that entry for each row, top to bottom.
    """

    shape: tuple[int, ...]
    rightmost: tuple[int, ...]
    entries: tuple[tuple[int, ...], ...] = field(init=False, repr=False)

    def __post_init__(self):
        if len(self.shape) != len(self.rightmost):
            raise ValueError("one entry per row")
        if any(a < 0 for a in self.rightmost):
            raise ValueError("entries must be non-negative")
        rows = tuple(tuple([0] * (L - 1) + [a]) for L, a in zip(self.shape, self.rightmost))
        object.__setattr__(self, "entries", rows)

    @staticmethod
    def from_entries(shape: Sequence[int], entries: Sequence[Sequence[int]]) -> "IdempotentTableau":
        shape = tuple(shape)
        for L, row in zip(shape, entries):
            if len(row) != L:
                raise ValueError("row lengths must match the shape")
            if any(row[:-1]):
                raise ValueError("only the rightmost entry of a row may be nonzero")
        return IdempotentTableau(shape, tuple(row[-1] for row in entries))

    @property
    def weight(self) -> int:
        return sum(self.rightmost)

    @property
    def ell(self) -> int:
        return self.shape[-1]

    def multicomposition(self) -> tuple[Composition, ...]:
        """Column readings, top to bottom, zeros dropped."""
        cols: list[list[int]] = [[] for _ in range(self.ell)]
        for L, a in zip(self.shape, self.rightmost):
            if a:
                cols[L - 1].append(a)
        return tuple(tuple(c) for c in cols)

    def index_word(self) -> tuple[int, ...]:
        """i(A): box k repeated a_k times, boxes numbered along rows."""
        out, box = [], 0
        for L, a in zip(self.shape, self.rightmost):
            box += L
            out += [box] * a
        return tuple(out)


def idempotent_tableaux(shape: Sequence[int], m: int, last_column_only: bool = False) -> list[IdempotentTableau]:
    shape = tuple(shape)
    ell = shape[-1]
    rows = [i for i, L in enumerate(shape) if L == ell or not last_column_only]
    out = []

    def rec(i: int, left: int, acc: list[int]):
        if i == len(rows):
            if left == 0:
                full = [0] * len(shape)
                for r, a in zip(rows, acc):
                    full[r] = a
                out.append(IdempotentTableau(shape, tuple(full)))
            return
        for a in range(left, -1, -1):
            rec(i + 1, left - a, acc + [a])

    rec(0, m, [])
    return out


def special_tableau(params: RepParams, m: int) -> IdempotentTableau:
    """Entry 1 in the last column of the top m full rows."""
    ell = params.ell
    full = [i for i, L in enumerate(params.shape) if L == ell]
    if len(full) < m:
        raise ValueError(f"need at least {m} rows of length {ell}")
    ent = [0] * params.n
    for i in full[:m]:
        ent[i] = 1
    return IdempotentTableau(params.shape, tuple(ent))


def _row_class(word: Iterable[int], params: RepParams) -> tuple[int, ...]:
    return tuple(sorted(params.row[i] for i in word))


def idempotent_support(A: IdempotentTableau, params: RepParams) -> list[tuple[int, ...]]:
    """Index words i with row(i) a rearrangement of row(i(A))."""
    if A.shape != params.shape:
        raise ValueError("tableau shape differs from the representation shape")
    target = _row_class(A.index_word(), params)
    return [i for i in product(range(1, params.N + 1), repeat=A.weight)
            if _row_class(i, params) == target]


def idempotent_matrix(A: IdempotentTableau, params: RepParams) -> RationalMatrix:
    m = A.weight
    cols = {tuple((i,) for i in word): {tuple((i,) for i in word): 1} for word in idempotent_support(A, params)}
    return RationalMatrix((1,) * m, (1,) * m, params.N, cols)


# ---- Hom dimensions between permutation modules ----

def _restricted_rank(morphs: Iterable[Morphism], keys: list, params: RepParams) -> int:
    rows = []
    for mor in morphs:
        flat = {}
        for n, k in enumerate(keys):
            for kk, c in apply_morphism(mor, {k: 1}, params).items():
                flat[(n, kk)] = c
        rows.append(flat)
    coords = sorted({c for r in rows for c in r})
    ech = Echelon(len(coords))
    for r in rows:
        ech.add(_integral_row([r.get(c, 0) for c in coords]))
    return ech.rank


def faithful_keys(m: int, params: RepParams) -> list:
    """Basis of e_S V^{(x)m}, on which the cyclotomic Hecke algebra acts faithfully."""
    S = special_tableau(params, m)
    return [tuple((i,) for i in word) for word in idempotent_support(S, params)]


def hecke_rank(m: int, params: RepParams) -> int:
    """Rank of the span of all basis-element actions on e_S V^{(x)m}."""
    keys = faithful_keys(m, params)
    return _restricted_rank((b.morphism() for b in hecke_basis(m, params.ell)), keys, params)


def perm_module_hom_dim(mu: Sequence[int], nu: Sequence[int], params: RepParams) -> int:
    """dim x_nu H x_mu for compositions mu, nu of m (last-column blocks)."""
    mu, nu = composition(mu), composition(nu)
    m = sum(mu)
    if sum(nu) != m:
        raise ValueError(f"weights differ: {mu} vs {nu}")
    if params.full_rows < m:
        raise ValueError(f"faithfulness needs at least {m} rows of length {params.ell}")
    keys = faithful_keys(m, params)
    xm, xn = young_sum(mu), young_sum(nu)
    morphs = (stack(xn, b.morphism(), xm) for b in hecke_basis(m, params.ell))
    return _restricted_rank(morphs, keys, params)


@dataclass
class WSchurReport:
    lam: Composition
    mu: Composition
    ell: int
    hom_dim: int
    parmat: int

    @property
    def passed(self) -> bool:
        return self.hom_dim == self.parmat

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} lam={self.lam} mu={self.mu} ell={self.ell}: "
                f"Hecke side {self.hom_dim}, ParMat side {self.parmat}")


def wschur_dim_check(lam: Sequence[int], mu: Sequence[int], L: LevelParams,
                     rows: int | None = None) -> WSchurReport:
    """Compare dim x_lam H x_mu at parameters -u with |ParMat^ell(lam, mu)|."""
    lam, mu = composition(lam), composition(mu)
    m = sum(lam)
    params = RepParams.for_u(rows or m, [-x for x in L.u])
    hom = perm_module_hom_dim(lam, mu, params)
    count = len(enumerate_cfds(lam, mu, level=L.ell))
    return WSchurReport(lam, mu, L.ell, hom, count)


def end_dimension(m: int, ell: int) -> int:
    return factorial(m) * ell ** m
