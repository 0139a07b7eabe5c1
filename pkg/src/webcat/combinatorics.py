"""Integer combinatorics shared across the package.

Compositions and partitions are plain tuples of ints; integer matrices are
tuples of row tuples.  Everything here is exact and deterministic.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

Composition = tuple[int, ...]
Partition = tuple[int, ...]
IntMatrix = tuple[tuple[int, ...], ...]
Poly = dict[tuple[int, ...], int]


class InvalidInput(ValueError):
    pass


def composition(parts: Iterable[int]) -> Composition:
    parts = tuple(int(p) for p in parts)
    if any(p < 1 for p in parts):
        raise InvalidInput(f"composition parts must be >= 1, got {parts}")
    return parts


def partition(parts: Iterable[int]) -> Partition:
    parts = tuple(sorted((int(p) for p in parts), reverse=True))
    if parts and parts[-1] < 1:
        raise InvalidInput(f"partition parts must be >= 1, got {parts}")
    return parts


def partition_key(nu: Partition) -> tuple:
    """Graded-lex key: smaller weight first, then larger parts first."""
    return (sum(nu), tuple(-p for p in nu))


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def factorial(n: int) -> int:
    return math.factorial(n)


def rising(u, i: int):
    """u (u+1) ... (u+i-1); works for ints and Fractions."""
    out = 1
    for j in range(i):
        out = out * (u + j)
    return out


def row_sums(A: IntMatrix) -> Composition:
    return tuple(sum(r) for r in A)


def col_sums(A: IntMatrix) -> Composition:
    if not A:
        return ()
    return tuple(sum(r[j] for r in A) for j in range(len(A[0])))


def transpose(A: IntMatrix) -> IntMatrix:
    if not A:
        return ()
    return tuple(zip(*A))


def _vectors(total: int, caps: Sequence[int]) -> Iterator[tuple[int, ...]]:
    # all vectors v with 0 <= v_j <= caps[j] and sum v = total, lex descending
    if not caps:
        if total == 0:
            yield ()
        return
    rest = sum(caps[1:])
    for first in range(min(total, caps[0]), max(0, total - rest) - 1, -1):
        for tail in _vectors(total - first, caps[1:]):
            yield (first,) + tail


def enumerate_contingency(lam: Sequence[int], mu: Sequence[int]) -> list[IntMatrix]:
    """All non-negative matrices with row sums lam and column sums mu.

    Row-major lexicographic order, largest entries first.
    """
    lam, mu = composition(lam), composition(mu)
    if sum(lam) != sum(mu):
        raise InvalidInput(f"weight mismatch: {lam} vs {mu}")
    out: list[IntMatrix] = []

    def rec(i: int, remaining: tuple[int, ...], rows: list[tuple[int, ...]]):
        if i == len(lam):
            if not any(remaining):
                out.append(tuple(rows))
            return
        for row in _vectors(lam[i], remaining):
            rows.append(row)
            rec(i + 1, tuple(r - x for r, x in zip(remaining, row)), rows)
            rows.pop()

    rec(0, mu, [])
    return out


def enumerate_bounded_partitions(max_part: int, max_len: int | None, max_weight: int) -> list[Partition]:
    """Partitions with parts <= max_part, length <= max_len and weight <= max_weight."""
    if max_part < 0 or max_weight < 0:
        raise InvalidInput("bounds must be non-negative")
    cap_len = max_weight if max_len is None else max_len
    out: list[Partition] = []

    def rec(prefix: tuple[int, ...], largest: int, room: int):
        out.append(prefix)
        if len(prefix) >= cap_len:
            return
        for p in range(min(largest, room), 0, -1):
            rec(prefix + (p,), p, room - p)

    rec((), max_part, max_weight)
    return sorted(out, key=partition_key)


def partitions_in_box(max_part: int, max_len: int, weight: int | None = None) -> list[Partition]:
    """Partitions fitting in a max_len x max_part box, optionally of fixed weight."""
    bound = max_part * max_len if weight is None else weight
    parts = enumerate_bounded_partitions(max_part, max_len, bound)
    if weight is not None:
        parts = [p for p in parts if sum(p) == weight]
    return parts


# ---- polynomials: dict from exponent tuple to coefficient ----

def poly_add(f: Poly, g: Poly, scale=1) -> Poly:
    out = dict(f)
    for m, c in g.items():
        v = out.get(m, 0) + scale * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def poly_mul(f: Poly, g: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def poly_one(nvars: int) -> Poly:
    return {(0,) * nvars: 1}


def poly_embed(f: Poly, offset: int, nvars: int) -> Poly:
    """Rename variables x_i -> x_{i+offset} inside nvars variables."""
    out: Poly = {}
    for m, c in f.items():
        e = [0] * nvars
        e[offset:offset + len(m)] = m
        out[tuple(e)] = c
    return out


def poly_sorted(f: Poly) -> list[tuple[tuple[int, ...], int]]:
    return sorted(f.items(), key=lambda mc: (-sum(mc[0]), tuple(-e for e in mc[0])))


@lru_cache(maxsize=None)
def _e_r(r: int, m: int) -> tuple:
    terms = []
    for S in combinations(range(m), r):
        e = [0] * m
        for s in S:
            e[s] = 1
        terms.append((tuple(e), 1))
    return tuple(terms)


def elementary_symmetric(nu: Sequence[int], num_vars: int) -> Poly:
    """e_nu(x_1..x_m) as a polynomial dict."""
    nu = partition(nu)
    if nu and nu[0] > num_vars:
        raise InvalidInput(f"part {nu[0]} exceeds number of variables {num_vars}")
    out = poly_one(num_vars)
    for r in nu:
        out = poly_mul(out, dict(_e_r(r, num_vars)))
    return out


def conjugate(nu: Sequence[int]) -> Partition:
    nu = [p for p in nu if p > 0]
    if not nu:
        return ()
    return tuple(sum(1 for p in nu if p > i) for i in range(max(nu)))
