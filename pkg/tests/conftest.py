import itertools
import os

import pytest
from hypothesis import settings, strategies as st

from mixedfair import Allocation, Instance
from mixedfair.generators import example1_instance, prop3_instance

settings.register_profile("ci", deadline=None, max_examples=200)
settings.register_profile("dev", deadline=None, max_examples=50)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


@pytest.fixture
def prop3():
    return prop3_instance()


@pytest.fixture
def example1():
    return example1_instance()


@st.composite
def instances(draw, max_n=4, max_m=7, min_n=1, low=-10, high=10):
    n = draw(st.integers(min_n, max_n))
    m = draw(st.integers(0, max_m))
    rows = draw(st.lists(st.lists(st.integers(low, high), min_size=m, max_size=m), min_size=n, max_size=n))
    return Instance(rows, m=m)


@st.composite
def instance_and_allocation(draw, max_n=4, max_m=7, complete=True):
    inst = draw(instances(max_n=max_n, max_m=max_m))
    choices = inst.n if complete else inst.n + 1
    owners = draw(st.lists(st.integers(0, choices - 1), min_size=inst.m, max_size=inst.m))
    bundles = [{o for o, a in enumerate(owners) if a == i} for i in range(inst.n)]
    return inst, Allocation(bundles)


def all_complete_allocations(n, m):
    for owners in itertools.product(range(n), repeat=m):
        yield Allocation.from_assignment(owners, n)


def reference_ef1(valuation, alloc):
    """Definition-level EF1: try every single removal from either bundle."""
    for i in range(alloc.n):
        for j in range(alloc.n):
            if i == j:
                continue
            own, other = alloc[i], alloc[j]
            if valuation.value(i, own) >= valuation.value(i, other):
                continue
            if not any(valuation.value(i, own - {o}) >= valuation.value(i, other - {o}) for o in own | other):
                return False
    return True


def reference_po(inst, alloc):
    """Definition-level PO: compare against every complete allocation."""
    mine = [inst.value(i, alloc[i]) for i in inst.agents]
    for other in all_complete_allocations(inst.n, inst.m):
        theirs = [inst.value(i, other[i]) for i in inst.agents]
        if all(t >= v for t, v in zip(theirs, mine)) and any(t > v for t, v in zip(theirs, mine)):
            return False
    return True


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import ACCEPTANCE_LINES
    except ImportError:
        return
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
