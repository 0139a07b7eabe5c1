import pytest

from webcat.diagram import cross, dot, id_, identity, merge, split, stack, tensor
from webcat.normalizer import normalize
from webcat.rules import (
    InstantiationError,
    RewriteRule,
    RingRequirementError,
    catalog,
    check_rule,
    derived,
    families,
    get_rule,
    rules_in,
)


def test_catalog_covers_all_families():
    assert families() == [f"R{i}" for i in range(1, 15)]
    names = [r.name for r in catalog()]
    assert len(names) == len(set(names))
    for r in catalog() + derived():
        assert r.citation and r.ring_requirement in ("Z", "Q")


def test_r3_unit():
    lhs, rhs = get_rule("R3").instantiate(a=1, b=1)
    assert lhs == stack(split(1, 1), merge(1, 1))
    assert rhs == id_(2) * 2


def test_r2_unit():
    lhs, rhs = get_rule("R2").instantiate(a=1, b=1, c=1, d=1)
    assert lhs == stack(merge(1, 1), split(1, 1))
    assert rhs == identity((1, 1)) + cross(1, 1)


def test_r6_two_legs():
    lhs, rhs = get_rule("R6").instantiate(a=2)
    assert lhs == stack(split(1, 1), tensor(dot(1), dot(1)), merge(1, 1))
    assert rhs == dot(2) * 2


def test_bad_labels_rejected():
    with pytest.raises(InstantiationError):
        get_rule("R3").instantiate(a=1)
    with pytest.raises(KeyError):
        get_rule("R99")


@pytest.mark.parametrize("name, bound", [("R3", 3), ("R10.top", 2), ("R10.bottom", 2)])
def test_check_rule_passes(name, bound):
    rep = check_rule(name, bound)
    assert rep.passed, rep.lines()
    assert rep.results


def test_ring_requirement():
    with pytest.raises(RingRequirementError):
        check_rule("R14", 2, ring="Z")
    assert check_rule("R14", 2, ring="Q").passed


def test_broken_rule_is_caught():
    r3 = get_rule("R3")
    broken = RewriteRule("R3.broken", "R3", "deliberately wrong", "Z", r3.lhs_fn,
                         lambda a, b: id_(a + b) * (a + b), r3.labels, r3.admissible)
    rep = check_rule(broken, 2)
    assert not rep.passed
    fails = [line for line in rep.lines() if line.startswith("FAIL")]
    assert fails and all(line.startswith("FAIL R3.broken[a=") for line in fails)
    # a=b=1 gives 2*id on both sides, so that instance still passes
    assert rep.lines()[0].startswith("PASS R3.broken[a=1,b=1]")


def test_report_lines_name_the_instance():
    rep = check_rule("R1.merge", 1)
    assert rep.lines() == ["PASS R1.merge[a=1,b=1,c=1] (full)"]


def _deg(m):
    return max(d.degree for d in m.terms)


@pytest.mark.parametrize("family", ["R9", "R10", "R11", "R12"])
def test_degree_bookkeeping(family):
    for rule in rules_in(family):
        for lab in rule.instantiations(3):
            lhs, rhs = rule.instantiate(**lab)
            top = _deg(lhs)
            degs = [d.degree for d in rhs.terms]
            assert max(degs) <= top
            if family in ("R9", "R10"):
                assert degs.count(top) == 1, (rule.name, lab)


def test_rules_hold_in_normal_form():
    for rule in catalog() + derived():
        ring = rule.ring_requirement
        for lab in rule.instantiations(2):
            lhs, rhs = rule.instantiate(**lab)
            assert normalize(lhs, ring="Q") == normalize(rhs, ring="Q"), (rule.name, lab)
            if ring == "Z":
                assert normalize(lhs).is_integral()


def test_threads_keep_order(monkeypatch):
    serial = check_rule("R8.braid", 2).lines()
    monkeypatch.setenv("WEBCAT_THREADS", "3")
    assert check_rule("R8.braid", 2).lines() == serial
