"""Fairness and efficiency checkers.

Every checker returns a :class:`FairnessReport` carrying a verdict plus the
evidence for it.  EF and EF1 accept either an additive :class:`Instance` or a
:class:`UtilityOracle`; the remaining notions are defined for additive
utilities and take an :class:`Instance`.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .model import Allocation, Instance, UtilityOracle
from .oracle import DEFAULT_BUDGET, find_pareto_improvement

Valuation = Union[Instance, UtilityOracle]


class Property(str, enum.Enum):
    EF = "EF"
    PROP = "PROP"
    EF1 = "EF1"
    PROP1 = "PROP1"
    EFX = "EFX"
    PO = "PO"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class FairnessReport:
    """Verdict for one property.

    ``witnesses`` maps an envious pair ``(i, j)`` to the item whose removal
    cancels the envy (EF1), or an agent to ``(clause, item)`` (PROP1, where
    clause is ``"share"``, ``"gain"`` or ``"shed"``).  ``violation`` names the
    first offending pair or agent when the property fails; for EFX it also
    carries the offending item.  For PO, ``dominating`` is a Pareto
    improvement when one exists.
    """

    property: Property
    holds: bool
    witnesses: dict = field(default_factory=dict)
    violation: tuple | None = None
    dominating: Allocation | None = None

    def __bool__(self) -> bool:
        return self.holds


def _check_shapes(inst: Valuation, alloc: Allocation) -> None:
    alloc.validate_for(inst.n, inst.m)


def _singleton(inst: Valuation, agent: int, item: int) -> Fraction:
    if isinstance(inst, Instance):
        return inst.u(agent, item)
    return inst.evaluate(agent, frozenset((item,)))


def envy_witness(inst: Valuation, alloc: Allocation, i: int, j: int):
    """Decide whether ``i`` envies ``j`` up to one item.

    Returns ``(ok, item)``: ``item`` is ``None`` when ``i`` does not envy
    ``j`` at all.  Removals from ``j``'s bundle are tried first, highest
    value to ``i`` first, then removals from ``i``'s own bundle, lowest value
    first; ties go to the lower item index.
    """
    own, other = alloc[i], alloc[j]
    if inst.value(i, own) >= inst.value(i, other):
        return True, None
    from_other = sorted(other, key=lambda o: (-_singleton(inst, i, o), o))
    from_own = sorted(own, key=lambda o: (_singleton(inst, i, o), o))
    if isinstance(inst, Instance):
        # additive: the extreme item is the only candidate worth testing
        gap = inst.value(i, other) - inst.value(i, own)
        if from_other and inst.u(i, from_other[0]) >= gap:
            return True, from_other[0]
        if from_own and -inst.u(i, from_own[0]) >= gap:
            return True, from_own[0]
        return False, None
    for o in from_other + from_own:
        if inst.value(i, own - {o}) >= inst.value(i, other - {o}):
            return True, o
    return False, None


def is_envy_free(inst: Valuation, alloc: Allocation) -> FairnessReport:
    _check_shapes(inst, alloc)
    for i in inst.agents:
        mine = inst.value(i, alloc[i])
        for j in inst.agents:
            if i != j and mine < inst.value(i, alloc[j]):
                return FairnessReport(Property.EF, False, violation=(i, j))
    return FairnessReport(Property.EF, True)


def is_proportional(inst: Instance, alloc: Allocation) -> FairnessReport:
    _check_shapes(inst, alloc)
    for i in inst.agents:
        if inst.value(i, alloc[i]) < inst.total(i) / inst.n:
            return FairnessReport(Property.PROP, False, violation=(i,))
    return FairnessReport(Property.PROP, True)


def is_ef1(inst: Valuation, alloc: Allocation) -> FairnessReport:
    """EF1 for mixed items: envy vanishes after dropping one good of the envied
    agent or one chore of the envious agent.

    >>> inst = Instance([[2, -3, -3, -3], [2, -3, -3, -3]])
    >>> is_ef1(inst, Allocation([{0, 1}, {2, 3}])).violation
    (1, 0)
    """
    _check_shapes(inst, alloc)
    witnesses = {}
    for i in inst.agents:
        for j in inst.agents:
            if i == j:
                continue
            ok, item = envy_witness(inst, alloc, i, j)
            if not ok:
                return FairnessReport(Property.EF1, False, witnesses, violation=(i, j))
            if item is not None:
                witnesses[(i, j)] = item
    return FairnessReport(Property.EF1, True, witnesses)


def is_prop1(inst: Instance, alloc: Allocation) -> FairnessReport:
    _check_shapes(inst, alloc)
    witnesses = {}
    for i in inst.agents:
        share = inst.total(i) / inst.n
        mine = inst.value(i, alloc[i])
        if mine >= share:
            witnesses[i] = ("share", None)
            continue
        outside = [o for o in inst.items if o not in alloc[i]]
        best_gain = max(outside, key=lambda o: (inst.u(i, o), -o), default=None)
        if best_gain is not None and mine + inst.u(i, best_gain) >= share:
            witnesses[i] = ("gain", best_gain)
            continue
        worst_own = min(alloc[i], key=lambda o: (inst.u(i, o), o), default=None)
        if worst_own is not None and mine - inst.u(i, worst_own) >= share:
            witnesses[i] = ("shed", worst_own)
            continue
        return FairnessReport(Property.PROP1, False, witnesses, violation=(i,))
    return FairnessReport(Property.PROP1, True, witnesses)


def is_efx(inst: Instance, alloc: Allocation) -> FairnessReport:
    _check_shapes(inst, alloc)
    for i in inst.agents:
        mine = inst.value(i, alloc[i])
        for j in inst.agents:
            if i == j:
                continue
            theirs = inst.value(i, alloc[j])
            for o in sorted(alloc[i]):
                if inst.u(i, o) < 0 and mine - inst.u(i, o) < theirs:
                    return FairnessReport(Property.EFX, False, violation=(i, j, o))
            for o in sorted(alloc[j]):
                if inst.u(i, o) > 0 and mine < theirs - inst.u(i, o):
                    return FairnessReport(Property.EFX, False, violation=(i, j, o))
    return FairnessReport(Property.EFX, True)


def is_pareto_optimal(inst: Instance, alloc: Allocation, budget=DEFAULT_BUDGET) -> FairnessReport:
    """Exact PO check by enumerating all ``n ** m`` complete allocations.

    Raises :class:`~mixedfair.oracle.BudgetExceeded` rather than guessing when
    the instance is too large.
    """
    _check_shapes(inst, alloc)
    if not alloc.is_complete(inst.m):
        raise ValueError("PO is checked against complete allocations; allocation is incomplete")
    better = find_pareto_improvement(inst, alloc, budget)
    if better is None:
        return FairnessReport(Property.PO, True)
    return FairnessReport(Property.PO, False, dominating=better)


CHECKERS = {
    Property.EF: is_envy_free,
    Property.PROP: is_proportional,
    Property.EF1: is_ef1,
    Property.PROP1: is_prop1,
    Property.EFX: is_efx,
    Property.PO: is_pareto_optimal,
}


def check(inst: Instance, alloc: Allocation, prop: Property | str, **kwargs) -> FairnessReport:
    prop = Property(str(prop).upper())
    return CHECKERS[prop](inst, alloc, **kwargs)


def compute_rrs(inst: Instance, agent: int) -> Fraction:
    """Round Robin Share of ``agent``.

    Runs the double round robin among ``n`` clones that all share ``agent``'s
    utilities and returns the smallest bundle value any clone ends up with.
    Plain round robin is not well defined for mixed items, hence the double
    variant.
    """
    from .discrete import double_round_robin

    if not 0 <= agent < inst.n:
        raise ValueError(f"agent {agent} out of range for n={inst.n}")
    row = inst.utilities[agent]
    clones = Instance([row] * inst.n, m=inst.m)
    alloc = double_round_robin(clones)
    return min(clones.value(i, alloc[i]) for i in clones.agents)
