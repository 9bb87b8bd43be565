from fractions import Fraction

import pytest
from hypothesis import given

from mixedfair import (Allocation, BudgetExceeded, Instance, Property, compute_rrs, is_ef1, is_efx,
                       is_envy_free, is_pareto_optimal, is_prop1, is_proportional)
from mixedfair.fairness import check

from conftest import all_complete_allocations, instance_and_allocation, reference_ef1, reference_po


def test_envy_free_examples(prop3):
    assert is_envy_free(Instance([[3, -1]]), Allocation([{0}])).holds
    report = is_envy_free(prop3, Allocation([{0}, {1, 2, 3}]))
    assert not report.holds and report.violation == (1, 0)
    assert is_envy_free(Instance([[], []], m=0), Allocation([set(), set()])).holds


def test_proportional_examples(prop3):
    assert is_proportional(Instance([[3, -1]]), Allocation([{0, 1}])).holds
    report = is_proportional(prop3, Allocation([{0}, {1, 2, 3}]))
    assert not report.holds and report.violation == (1,)


def test_ef1_examples(prop3):
    report = is_ef1(prop3, Allocation([{0, 1}, {2, 3}]))
    assert not report.holds and report.violation == (1, 0)
    report = is_ef1(prop3, Allocation([{1}, {0, 2, 3}]))
    assert report.holds
    # agent 2 envies agent 1 (-4 < -3); shedding chore 2 is the first own removal that works
    assert report.witnesses == {(1, 0): 2}


def test_ef1_witness_prefers_envied_bundle():
    inst = Instance([[1, 5, 1], [1, 5, 1]])
    report = is_ef1(inst, Allocation([{0, 2}, {1}]))
    assert report.witnesses == {(0, 1): 1}


def test_prop1_examples(prop3):
    report = is_prop1(prop3, Allocation([{0, 1}, {2, 3}]))
    assert report.holds
    assert report.witnesses[1] == ("shed", 2)
    assert report.witnesses[0] == ("share", None)
    assert is_prop1(Instance([[1, -2]]), Allocation([{0, 1}])).holds


def test_prop1_gain_clause_uses_unallocated_items():
    inst = Instance([[4, 4], [1, 1]])
    report = is_prop1(inst, Allocation([set(), {1}]))
    assert report.holds and report.witnesses[0] == ("gain", 0)


def test_efx_examples(prop3):
    # confirmed clause by clause: agent 1 sheds chore 1 (0 >= -4), item 0 removal (-3 >= -6);
    # agent 2 sheds chore 2 or 3 (-1 >= -3), no goods in the other bundle
    assert is_efx(prop3, Allocation([{1}, {0, 2, 3}])).holds
    assert is_efx(Instance([[1, 1], [1, 1]]), Allocation([{0}, {1}])).holds
    # agent 1 holds {2} (1) against {0, 1} (6); dropping good 1 still leaves 5 > 1
    report = is_efx(Instance([[5, 1, 1], [5, 1, 1]]), Allocation([{2}, {0, 1}]))
    assert not report.holds and report.violation == (0, 1, 1)


def test_efx_brute_force_on_prop3(prop3):
    alloc = Allocation([{1}, {0, 2, 3}])
    ok = True
    for i, j in [(0, 1), (1, 0)]:
        mine, theirs = prop3.value(i, alloc[i]), prop3.value(i, alloc[j])
        for o in prop3.items:
            if o in alloc[i] and prop3.u(i, o) < 0:
                ok &= mine - prop3.u(i, o) >= theirs
            if o in alloc[j] and prop3.u(i, o) > 0:
                ok &= mine >= theirs - prop3.u(i, o)
    assert ok is True


def test_pareto_optimal_examples(example1):
    assert is_pareto_optimal(Instance([[2, -1, 0]]), Allocation([{0, 1, 2}])).holds
    assert is_pareto_optimal(example1, Allocation([{1, 3}, {0, 2, 4, 5, 6}])).holds
    assert is_pareto_optimal(Instance([[1], [2]]), Allocation([{0}, set()])).holds
    report = is_pareto_optimal(Instance([[1, 1], [-1, 5]]), Allocation([{1}, {0}]))
    assert not report.holds
    # first dominating allocation in canonical order: agent 1 takes both, agent 2 sheds the chore
    assert report.dominating == Allocation([{0, 1}, set()])


def test_pareto_optimal_requires_complete_and_budget():
    inst = Instance([[1, 1], [1, 1]])
    with pytest.raises(ValueError):
        is_pareto_optimal(inst, Allocation([{0}, set()]))
    big = Instance([[1] * 12] * 4)
    with pytest.raises(BudgetExceeded, match="too large for exact PO check"):
        is_pareto_optimal(big, Allocation([set(range(12)), set(), set(), set()]), budget=10**6)


def test_dimension_mismatch_is_an_argument_error(prop3):
    with pytest.raises(ValueError):
        is_ef1(prop3, Allocation([{0}]))
    with pytest.raises(ValueError):
        is_envy_free(prop3, Allocation([{0}, {9}]))


def test_rrs_examples(prop3):
    assert compute_rrs(Instance([[3, -2, 1]]), 0) == 2
    # double round robin on two clones: bundles {2} (-3) and {0, 1, 3} (-4)
    assert compute_rrs(prop3, 0) == -4
    # goods phase runs n..1: clone 2 takes 5 and 1, clone 1 takes 3
    assert compute_rrs(Instance([[5, 3, 1], [0, 0, 0]]), 0) == 3
    with pytest.raises(ValueError):
        compute_rrs(prop3, 2)


def test_check_dispatch(prop3):
    assert not check(prop3, Allocation([{0, 1}, {2, 3}]), "ef1").holds
    assert check(prop3, Allocation([{0, 1}, {2, 3}]), Property.PROP1).holds


def _reverify(inst, alloc, report):
    if report.property is Property.EF1:
        for (i, j), o in report.witnesses.items():
            assert o in alloc[i] | alloc[j]
            assert inst.value(i, alloc[i] - {o}) >= inst.value(i, alloc[j] - {o})
    if report.property is Property.PROP1:
        for i, (clause, o) in report.witnesses.items():
            share = inst.total(i) / inst.n
            mine = inst.value(i, alloc[i])
            if clause == "share":
                assert mine >= share
            elif clause == "gain":
                assert o not in alloc[i] and mine + inst.u(i, o) >= share
            else:
                assert o in alloc[i] and mine - inst.u(i, o) >= share


@given(instance_and_allocation(complete=False))
def test_witnesses_reverify(case):
    inst, alloc = case
    for checker in (is_ef1, is_prop1):
        report = checker(inst, alloc)
        if report.holds:
            _reverify(inst, alloc, report)


@given(instance_and_allocation(complete=False))
def test_ef1_matches_definition(case):
    inst, alloc = case
    assert is_ef1(inst, alloc).holds == reference_ef1(inst, alloc)


@given(instance_and_allocation())
def test_implications(case):
    inst, alloc = case
    ef, prop = is_envy_free(inst, alloc).holds, is_proportional(inst, alloc).holds
    ef1, prop1, efx = is_ef1(inst, alloc).holds, is_prop1(inst, alloc).holds, is_efx(inst, alloc).holds
    assert not ef or (prop and ef1)
    assert not ef1 or prop1
    assert not prop or prop1
    assert not efx or ef1


@given(instance_and_allocation(max_n=3, max_m=5))
def test_po_matches_definition(case):
    inst, alloc = case
    report = is_pareto_optimal(inst, alloc)
    assert report.holds == reference_po(inst, alloc)
    if not report.holds:
        better = report.dominating
        gains = [inst.value(i, better[i]) - inst.value(i, alloc[i]) for i in inst.agents]
        assert min(gains) >= 0 and max(gains) > 0


def test_po_fractional_utilities():
    inst = Instance([["1/3", "-1/2"], ["1/6", "1/4"]])
    verdicts = {a: is_pareto_optimal(inst, a).holds for a in all_complete_allocations(2, 2)}
    assert verdicts == {a: reference_po(inst, a) for a in verdicts}
    assert verdicts[Allocation([{0}, {1}])]
    assert not verdicts[Allocation([{0, 1}, set()])]


def test_ef1_accepts_oracles():
    from mixedfair import synthetic_doubly_monotonic

    oracle = synthetic_doubly_monotonic(11, 2, 4)
    for alloc in all_complete_allocations(2, 4):
        assert is_ef1(oracle, alloc).holds == reference_ef1(oracle, alloc)


def test_report_truthiness():
    inst = Instance([[1], [1]])
    assert is_ef1(inst, Allocation([{0}, set()]))
    assert not is_envy_free(inst, Allocation([{0}, set()]))
    assert Fraction(1) == inst.total(0)
