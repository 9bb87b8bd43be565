"""Brute-force ground truth: enumerate every allocation of a small instance.

Nothing here prunes or reasons about structure.  The value of these
functions is that they are obviously correct, so they can be trusted to judge
the algorithms.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from . import kernels
from .model import Allocation, Instance

DEFAULT_BUDGET = 20_000_000

_FLAGS = {
    "EF": kernels.EF,
    "PROP": kernels.PROP,
    "EF1": kernels.EF1,
    "PROP1": kernels.PROP1,
    "EFX": kernels.EFX,
    "PO": kernels.PO,
}


class BudgetExceeded(RuntimeError):
    """The requested enumeration is larger than the allowed budget."""


@dataclass(frozen=True)
class EnumerationBudget:
    max_allocations: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.max_allocations < 1:
            raise ValueError("budget must be positive")

    def check(self, n: int, m: int, complete_only: bool = True, what: str = "enumeration") -> int:
        count = count_allocations(n, m, complete_only)
        if count > self.max_allocations:
            raise BudgetExceeded(
                f"instance too large for exact {what}: {count} allocations > budget {self.max_allocations}")
        return count


def _budget(budget) -> EnumerationBudget:
    if budget is None:
        return EnumerationBudget()
    if isinstance(budget, EnumerationBudget):
        return budget
    return EnumerationBudget(int(budget))


def count_allocations(n: int, m: int, complete_only: bool = True) -> int:
    return n ** m if complete_only else (n + 1) ** m


def enumerate_allocations(inst: Instance, complete_only: bool = True, budget=None) -> Iterator[Allocation]:
    """Yield every allocation once, counting in base ``n`` with item 0 most significant.

    With ``complete_only=False`` an item may also stay unallocated, giving
    ``(n + 1) ** m`` allocations.
    """
    _budget(budget).check(inst.n, inst.m, complete_only)
    owners = range(inst.n) if complete_only else range(inst.n + 1)
    for assignment in itertools.product(owners, repeat=inst.m):
        bundles: list[set[int]] = [set() for _ in range(inst.n)]
        for item, agent in enumerate(assignment):
            if agent < inst.n:
                bundles[agent].add(item)
        yield Allocation(bundles)


def decode(code: int, n: int, m: int) -> Allocation:
    """Inverse of the canonical enumeration order."""
    owners = [0] * m
    for j in range(m - 1, -1, -1):
        code, owners[j] = divmod(code, n)
    return Allocation.from_assignment(owners, n)


def integer_matrix(inst: Instance) -> list[list[int]]:
    """Scale each agent's row to integers; every per-agent comparison is preserved."""
    rows = []
    for row in inst.utilities:
        scale = math.lcm(*(u.denominator for u in row)) if row else 1
        rows.append([int(u * scale) for u in row])
    return rows


def find_pareto_improvement(inst: Instance, alloc: Allocation, budget=None) -> Allocation | None:
    """First complete allocation that Pareto-improves on ``alloc``, or ``None``."""
    _budget(budget).check(inst.n, inst.m, what="PO check")
    U = integer_matrix(inst)
    base = [sum(U[i][o] for o in alloc[i]) for i in inst.agents]
    code = kernels.find_dominating(U, base)
    return None if code < 0 else decode(code, inst.n, inst.m)


def property_flags(properties: Iterable[str]) -> int:
    flags = 0
    for p in properties:
        key = str(getattr(p, "value", p)).upper()
        if key not in _FLAGS:
            raise ValueError(f"unknown property {p!r}; expected one of {', '.join(_FLAGS)}")
        flags |= _FLAGS[key]
    return flags


def exists_allocation(inst: Instance, predicate: Iterable[str] | Callable[[Instance, Allocation], object],
                      budget=None) -> Allocation | None:
    """First complete allocation (canonical order) meeting ``predicate``.

    ``predicate`` is either a collection of property names, read as their
    conjunction (e.g. ``{"EF1", "PO"}``), or a callable ``(inst, alloc)``
    whose truthiness decides.
    """
    if callable(predicate):
        for alloc in enumerate_allocations(inst, budget=budget):
            if predicate(inst, alloc):
                return alloc
        return None
    flags = property_flags(predicate)
    _budget(budget).check(inst.n, inst.m)
    code = kernels.first_satisfying(integer_matrix(inst), flags)
    return None if code < 0 else decode(code, inst.n, inst.m)


def pareto_frontier(inst: Instance, budget=None) -> list[Allocation]:
    """All complete allocations not Pareto-dominated by another complete allocation."""
    allocs = list(enumerate_allocations(inst, budget=budget))
    vectors = [tuple(inst.value(i, a[i]) for i in inst.agents) for a in allocs]
    # a dominator always has a strictly larger sum, so scanning by decreasing
    # sum only ever needs to compare against vectors already accepted
    frontier: list[tuple] = []
    for v in sorted(set(vectors), key=sum, reverse=True):
        if not any(all(f[i] >= v[i] for i in range(inst.n)) and f != v for f in frontier):
            frontier.append(v)
    keep = set(frontier)
    return [a for a, v in zip(allocs, vectors) if v in keep]
