"""Verification suites shared by the command line and the test-suite.

Each suite returns a ``SuiteReport``: one line per check, failing lines
prefixed FAIL and naming the rule, labels or basis pair involved.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, permutations, product
from typing import Iterable, Sequence

from .combinatorics import binomial, enumerate_contingency, factorial
from .diagram import Morphism, identity, packet, random_diagram, split, merge, stack, tensor, wdot, id_
from .hecke import (
    HeckeBasisElement,
    embed_affine_hecke,
    end_dimension,
    hecke_action_matrix,
    hecke_rank,
    idempotent_matrix,
    idempotent_tableaux,
    wschur_dim_check,
)
from .normalizer import (
    LevelParams,
    NormalForm,
    cfd_to_diagram,
    cyclotomic_normalize,
    enumerate_cfds,
    make_cfd,
    normalize,
)
from .rep_oracle import Echelon, RepParams, _integral_row, evaluate, hom_rank, oracle_normalize
from .rules import (
    BALLOON_U,
    CYC_U,
    balloon,
    catalog,
    check_rule,
    g_elem,
    g_thin,
    get_rule,
    thin_dots,
)


@dataclass
class SuiteReport:
    name: str
    lines: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    def record(self, ok: bool, text: str):
        line = f"{'PASS' if ok else 'FAIL'} {text}"
        self.lines.append(line)
        if not ok:
            self.failures.append(line)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        return f"{self.name}: {len(self.lines) - len(self.failures)}/{len(self.lines)} passed"


def compositions(weight: int) -> Iterable[tuple[int, ...]]:
    if weight == 0:
        yield ()
        return
    for first in range(1, weight + 1):
        for rest in compositions(weight - first):
            yield (first,) + rest


# ---- relations ----

def relations(max_size: int = 3, low_bound: int | None = None, seed: int = 0) -> SuiteReport:
    """Every catalog rule under the oracle; R1-R3 may use a larger bound."""
    rep = SuiteReport("relations")
    for rule in catalog():
        bound = low_bound if low_bound and rule.family in ("R1", "R2", "R3") else max_size
        res = check_rule(rule, bound, ring=rule.ring_requirement, seed=seed)
        for line in res.lines():
            ok = line.startswith("PASS")
            rep.record(ok, line.split(" ", 1)[1])
    return rep


# ---- basis ----

def basis_fixed_points(max_weight: int = 4, max_degree: int = 3) -> SuiteReport:
    rep = SuiteReport("basis")
    for w in range(1, max_weight + 1):
        for src in compositions(w):
            for tgt in compositions(w):
                bad, count = [], 0
                for E in enumerate_cfds(src, tgt, max_degree=max_degree):
                    count += 1
                    nf = normalize(Morphism.of(cfd_to_diagram(E)))
                    if nf != NormalForm(src, tgt, {E: 1}):
                        bad.append(E)
                if count:
                    detail = f" first failure A={bad[0].A} P={bad[0].P}" if bad else ""
                    rep.record(not bad, f"{src}->{tgt}: {count - len(bad)}/{count} fixed{detail}")
    return rep


# ---- oracle equivalence ----

def random_morphism(rng: random.Random, max_weight: int = 3, max_layers: int = 4, max_degree: int = 3) -> Morphism:
    w = rng.choice([1] + [min(2, max_weight)] * 2 + [max_weight] * 4)
    d = random_diagram(rng, w, rng.randint(min(2, max_layers), max_layers), max_degree)
    return Morphism.of(d, rng.choice([1, 1, 2, -1, 3]))


def oracle_equivalence(count: int = 500, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("oracle")
    rng = random.Random(seed)
    for i in range(count):
        m = random_morphism(rng)
        nf = normalize(m)
        on = oracle_normalize(m, seed=seed + i)
        rep.record(nf == on, f"sample {i}: {next(iter(m.terms)).render()}")
    return rep


# ---- polynomial algebra on one strand ----

def packet_products(max_a: int = 4, max_degree: int = 6) -> SuiteReport:
    rep = SuiteReport("packets")
    for a in range(1, max_a + 1):
        for size in range(1, max_degree + 1):
            for parts in combinations_with_replacement(range(1, a + 1), size):
                if sum(parts) > max_degree:
                    continue
                nu = tuple(sorted(parts, reverse=True))
                want = NormalForm((a,), (a,), {make_cfd((a,), (a,), [[a]], [[nu]]): 1})
                ok = True
                for order in set(permutations(parts)):
                    m = id_(a)
                    for r in order:
                        m = stack(m, wdot(a, r))
                    if normalize(m) != want:
                        ok = False
                        break
                rep.record(ok, f"a={a} packets {nu}")
    return rep


# ---- closed-form coefficients ----

def split_merge(max_sum: int = 6, max_a: int = 3, max_b: int = 3) -> SuiteReport:
    rep = SuiteReport("split-merge")
    for a in range(1, max_sum):
        for b in range(1, max_sum - a + 1):
            got = normalize(stack(split(a, b), merge(a, b)))
            want = normalize(identity((a + b,))) * binomial(a + b, a)
            rep.record(got == want, f"split({a},{b});merge({a},{b}) = {binomial(a + b, a)} id")
    for a in range(1, max_a + 1):
        for b in range(1, max_b + 1):
            for r in range(0, a + 1):
                m = stack(split(a, b), tensor(wdot(a, r) if r else id_(a), id_(b)), merge(a, b))
                co = binomial(a + b - r, b)
                want = normalize((wdot(a + b, r) if r else id_(a + b)) * co)
                rep.record(normalize(m) == want, f"bigon a={a} b={b} r={r}: coefficient {co}")
    return rep


def balloons(max_a: int = 4, us: Sequence = BALLOON_U) -> SuiteReport:
    rep = SuiteReport("balloons")
    for a in range(1, max_a + 1):
        got = normalize(balloon(a, g_thin(0)))
        want = normalize(packet(a, (a,)) * factorial(a))
        rep.record(got == want, f"balloon of {a} dotted thin strands = {factorial(a)} omega_{a}")
    for r in range(1, max_a + 1):
        for u in us:
            got = normalize(balloon(r, g_thin(u)), ring="Q")
            want = normalize(g_elem(r, u) * factorial(r), ring="Q")
            rep.record(got == want, f"balloon of g_(1,{u}) on {r} strands = {r}! g_({r},{u})")
    return rep


# ---- Hecke side ----

def _monomials(m: int, d: int) -> list[tuple[int, ...]]:
    return [e for e in product(range(d + 1), repeat=m) if sum(e) <= d]


def _nf_rank(forms: list[NormalForm]) -> int:
    keys = sorted({E for f in forms for E in f.coeffs}, key=lambda E: E.sort_key())
    ech = Echelon(len(keys))
    for f in forms:
        ech.add(_integral_row([f.coeffs.get(k, 0) for k in keys]))
    return ech.rank


def hecke(max_m: int = 4, max_rank_m: int = 3, max_d: int = 2) -> SuiteReport:
    rep = SuiteReport("hecke")
    for m in range(1, max_m + 1):
        g = embed_affine_hecke(m)
        one = normalize(identity((1,) * m))

        def nf(*names):
            return normalize(stack(*[g[n] for n in names]))

        for i in range(1, m):
            rep.record(nf(f"s{i}", f"s{i}") == one, f"m={m} s{i}^2 = 1")
            rep.record(nf(f"x{i + 1}", f"s{i}") == nf(f"s{i}", f"x{i}") - one,
                       f"m={m} x{i + 1} s{i} = s{i} x{i} - 1")
            for j in range(i + 1, m):
                if j == i + 1:
                    rep.record(nf(f"s{i}", f"s{j}", f"s{i}") == nf(f"s{j}", f"s{i}", f"s{j}"),
                               f"m={m} braid s{i} s{j}")
                else:
                    rep.record(nf(f"s{i}", f"s{j}") == nf(f"s{j}", f"s{i}"), f"m={m} s{i} s{j} commute")
        for i in range(1, m + 1):
            for j in range(i + 1, m + 1):
                rep.record(nf(f"x{i}", f"x{j}") == nf(f"x{j}", f"x{i}"), f"m={m} x{i} x{j} commute")
            for k in range(1, m):
                if k not in (i - 1, i):
                    rep.record(nf(f"x{i}", f"s{k}") == nf(f"s{k}", f"x{i}"), f"m={m} x{i} s{k} commute")
    for m in range(1, max_rank_m + 1):
        forms = []
        for w in permutations(range(1, m + 1)):
            for e in _monomials(m, max_d):
                forms.append(normalize(HeckeBasisElement(w, e).morphism()))
        want = factorial(m) * len(_monomials(m, max_d))
        rank = _nf_rank(forms)
        rep.record(rank == want, f"m={m} w x^r with degree <= {max_d}: rank {rank} of {want}")
    for m, ell in ((1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2)):
        if m > max_rank_m:
            continue
        params = RepParams.rectangle(m, ell, [7 * i + 2 for i in range(ell)])
        r = hecke_rank(m, params)
        total = len(enumerate_cfds((1,) * m, (1,) * m, level=ell))
        ok = r == end_dimension(m, ell) == total
        rep.record(ok, f"m={m} ell={ell}: action rank {r}, level basis {total}, m! ell^m {end_dimension(m, ell)}")
    idem = idempotents()
    rep.lines.extend(idem.lines)
    rep.failures.extend(idem.failures)
    return rep


def idempotents(shape=(1, 2, 2), max_m: int = 2) -> SuiteReport:
    rep = SuiteReport("idempotents")
    params = RepParams(shape, (3, 11))
    for m in range(1, max_m + 1):
        tabs = idempotent_tableaux(shape, m)
        mats = [idempotent_matrix(A, params) for A in tabs]
        eye = evaluate(identity((1,) * m), params)
        total = mats[0]
        for M in mats[1:]:
            total = total + M
        rep.record(total == eye, f"m={m}: {len(tabs)} idempotents sum to the identity")
        for A, M in zip(tabs, mats):
            rep.record(M @ M == M, f"m={m} A={A.rightmost}: idempotent")
        ortho = all((M @ K).is_zero() for i, M in enumerate(mats) for j, K in enumerate(mats) if i != j)
        rep.record(ortho, f"m={m}: idempotents mutually orthogonal")
        gens = embed_affine_hecke(m)
        for name, g in gens.items():
            G = hecke_action_matrix(g, m, params)
            ok = all(M @ G == G @ M for M in mats)
            rep.record(ok, f"m={m}: every e_A commutes with {name}")
    return rep


# ---- Hom ranks and W-Schur ----

def hom_ranks(max_weight: int = 3, max_ell: int = 3, cs=((1000, 2000, 3000), (5, -7, 19))) -> SuiteReport:
    rep = SuiteReport("hom-rank")
    for ell in range(1, max_ell + 1):
        for c in cs:
            params = RepParams.rectangle(3, ell, list(c[:ell]))
            for w in range(1, max_weight + 1):
                for mu in compositions(w):
                    for nu in compositions(w):
                        r = hom_rank(mu, nu, ell, params)
                        n = len(enumerate_cfds(mu, nu, level=ell))
                        rep.record(r == n, f"ell={ell} c={c[:ell]} {mu}->{nu}: rank {r}, ParMat {n}")
    for m, ell, want in ((1, 1, 1), (1, 2, 2), (2, 2, 8), (3, 2, 48)):
        n = len(enumerate_cfds((1,) * m, (1,) * m, level=ell))
        rep.record(n == want, f"dim End(1^{m}) at level {ell} = {n}, expected {want}")
    return rep


def wschur(max_weight: int = 3, us=((0,), (2,), (0, 1), (1, -3))) -> SuiteReport:
    rep = SuiteReport("wschur")
    for u in us:
        L = LevelParams.of(u)
        for w in range(1, max_weight + 1):
            for lam in compositions(w):
                for mu in compositions(w):
                    r = wschur_dim_check(lam, mu, L)
                    rep.record(r.passed, f"u={u} " + r.line().split(" ", 1)[1])
                    if L.ell == 1:
                        n = len(enumerate_contingency(lam, mu))
                        rep.record(r.hom_dim == n, f"u={u} {lam},{mu}: Hecke side {r.hom_dim}, |Mat| {n}")
    return rep


# ---- characteristic zero ----

def char0(max_label: int = 3, cyc_r: int = 3) -> SuiteReport:
    rep = SuiteReport("char0")
    for name in ("R4.top", "R4.bottom", "R5.split", "R5.merge"):
        rule = get_rule(name)
        for lab in rule.instantiations(max_label):
            lhs, rhs = rule.instantiate(**lab)
            ok = normalize(thin_dots(lhs - rhs), ring="Q").is_zero()
            rep.record(ok, f"{name}{lab} with thin dots")
    rule = get_rule("balloon-cyclotomic")
    for r in range(1, cyc_r + 1):
        for u in CYC_U:
            if len(u) > 2:
                continue
            lhs, rhs = rule.instantiate(r=r, u=u)
            ok = normalize(lhs - rhs, ring="Q").is_zero()
            rep.record(ok, f"{r}! prod_j g_({r},u_j) as a balloon, u={tuple(str(x) for x in u)}")
    return rep


# ---- cyclotomic reduction ----

def cyclotomic(count: int = 60, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("cyclotomic")
    rng = random.Random(seed)
    for i in range(count):
        w = rng.randint(1, 3)
        ell = rng.randint(1, 3)
        u = tuple(rng.choice([-3, -1, 0, 1, 2, 5]) for _ in range(ell))
        d = random_diagram(rng, w, rng.randint(1, 4), rng.randint(0, 4))
        m = Morphism.of(d)
        res = cyclotomic_normalize(m, LevelParams.of(u))
        params = RepParams.for_u(w, u)
        ok = (evaluate(m, params) - evaluate(res.to_morphism(), params)).is_zero()
        ok = ok and all(len(p) <= ell - 1 for E in res.coeffs for row in E.P for p in row)
        rep.record(ok, f"sample {i} u={u}: {d.render()}")
    L1 = LevelParams.of((0,))
    for i in range(count):
        w = rng.randint(1, 4)
        d = random_diagram(rng, w, rng.randint(1, 4), 0)
        m = Morphism.of(d)
        rep.record(cyclotomic_normalize(m, L1) == normalize(m), f"level one, dot-free sample {i}: {d.render()}")
    return rep


SUITES = ("relations", "hecke", "wschur", "char0", "basis")


def run_suite(name: str, max_size: int = 3, seed: int = 0) -> SuiteReport:
    if name == "relations":
        return relations(max_size, seed=seed)
    if name == "hecke":
        return hecke(max_m=min(max_size + 1, 4), max_rank_m=min(max_size, 3))
    if name == "wschur":
        return wschur(min(max_size, 3))
    if name == "char0":
        return char0(max_size, cyc_r=max_size)
    if name == "basis":
        return basis_fixed_points(max_size, min(max_size, 3))
    raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
