"""Acceptance criteria, exact arithmetic throughout (tolerance zero).

Each test runs one verification suite and logs a single PASS/FAIL line;
the lines are collected again at the end of the pytest run.
"""

import time

from webcat import suites


def run(verdict, number, title, fn, *args, **kwargs):
    t0 = time.perf_counter()
    rep = fn(*args, **kwargs)
    verdict(number, title, rep, time.perf_counter() - t0)


def test_01_relation_catalog(verdict):
    run(verdict, 1, "every relation holds in the representation, labels <= 3 (<= 4 for R1-R3)",
        suites.relations, 3, low_bound=4)


def test_02_basis_fixed_points(verdict):
    run(verdict, 2, "basis diagrams normalize to themselves, weight <= 4, degree <= 3",
        suites.basis_fixed_points, 4, 3)


def test_03_oracle_equivalence(verdict):
    run(verdict, 3, "rewriting agrees with the representation on 500 random morphisms",
        suites.oracle_equivalence, 500, seed=0)


def test_04_packet_polynomial_algebra(verdict):
    run(verdict, 4, "stacked packets give one sorted-partition diagram, a <= 4, degree <= 6",
        suites.packet_products, 4, 6)


def test_05_split_merge_coefficients(verdict):
    run(verdict, 5, "split-merge bigons give the binomial coefficients",
        suites.split_merge, 6, 3, 3)


def test_06_balloons(verdict):
    run(verdict, 6, "balloons give a! omega_a and r! g_(r,u)", suites.balloons, 4)


def test_07_affine_hecke(verdict):
    run(verdict, 7, "affine Hecke relations and independence of w x^r, m <= 4",
        suites.hecke, max_m=4, max_rank_m=3, max_d=2)


def test_08_hom_ranks(verdict):
    run(verdict, 8, "Hom ranks match the level-ell basis for two twists", suites.hom_ranks, 3, 3)


def test_09_wschur(verdict):
    run(verdict, 9, "permutation-module Hom dimensions match ParMat, level <= 2", suites.wschur, 3)


def test_10_char_zero(verdict):
    run(verdict, 10, "thin-dot presentation over Q and the cyclotomic balloon", suites.char0, 3, cyc_r=3)


def test_11_cyclotomic_reduction(verdict):
    run(verdict, 11, "level reduction is sound and trivial at level one", suites.cyclotomic, 60, seed=0)
