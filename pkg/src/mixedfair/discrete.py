"""Discrete allocation algorithms for mixed goods and chores.

Ties are always broken towards the lowest item index and then the lowest
agent index, so every function here is deterministic.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .fairness import Valuation, envy_witness
from .model import Allocation, Instance, UtilityOracle

logger = logging.getLogger(__name__)


class InvariantError(RuntimeError):
    """An algorithm reached a state its correctness argument rules out."""


def _check_order(order: Sequence[int] | None, n: int) -> list[int]:
    if order is None:
        return list(range(n))
    order = list(order)
    if sorted(order) != list(range(n)):
        raise ValueError(f"order {order} is not a permutation of the {n} agents")
    return order


def _best(inst: Instance, agent: int, candidates) -> int:
    return max(candidates, key=lambda o: (inst.u(agent, o), -o))


def naive_round_robin(inst: Instance, order: Sequence[int] | None = None) -> Allocation:
    """Agents take turns picking their favourite remaining item.

    This fails EF1 once goods and chores are mixed; it is kept as the
    counterexample baseline.
    """
    order = _check_order(order, inst.n)
    remaining = set(inst.items)
    bundles: list[set[int]] = [set() for _ in inst.agents]
    turn = 0
    while remaining:
        agent = order[turn % inst.n]
        pick = _best(inst, agent, remaining)
        bundles[agent].add(pick)
        remaining.discard(pick)
        turn += 1
    return Allocation(bundles)


def double_round_robin(inst: Instance, picks: list | None = None) -> Allocation:
    """EF1 allocation for additive utilities via two opposite round-robin passes.

    Items nobody values positively are dealt first in order ``1..n``, padded
    with zero-value dummy chores so every agent receives the same number.
    The rest are then picked in order ``n..1``; an agent with no strictly
    positive item left picks a dummy instead.  Dummies are dropped from the
    result.

    If ``picks`` is a list, ``(phase, agent, item)`` tuples are appended to
    it, with dummies reported as item indices ``>= m``.
    """
    n, m = inst.n, inst.m
    positive = [o for o in inst.items if any(inst.u(i, o) > 0 for i in inst.agents)]
    negative = sorted(set(inst.items) - set(positive))
    k = (-len(negative)) % n
    dummies = list(range(m, m + k))
    bundles: list[set[int]] = [set() for _ in inst.agents]

    def u(agent: int, item: int) -> Fraction:
        return inst.u(agent, item) if item < m else Fraction(0)

    pool = set(negative) | set(dummies)
    turn = 0
    while pool:
        agent = turn % n
        pick = max(pool, key=lambda o: (u(agent, o), -o))
        pool.discard(pick)
        bundles[agent].add(pick)
        if picks is not None:
            picks.append(("chores", agent, pick))
        turn += 1

    pool = set(positive)
    turn = 0
    next_dummy = m + k
    while pool:
        agent = n - 1 - turn % n
        pick = max(pool, key=lambda o: (u(agent, o), -o))
        if inst.u(agent, pick) > 0:
            pool.discard(pick)
            bundles[agent].add(pick)
        else:
            pick = next_dummy
            next_dummy += 1
        if picks is not None:
            picks.append(("goods", agent, pick))
        turn += 1

    return Allocation({o for o in b if o < m} for b in bundles)


@dataclass
class EnvyGraph:
    """Directed graph with an arc ``i -> j`` whenever ``i`` envies ``j``."""

    n: int
    arcs: set[tuple[int, int]]

    @classmethod
    def of(cls, valuation: Valuation, alloc: Allocation) -> "EnvyGraph":
        values = [[valuation.value(i, alloc[j]) for j in range(valuation.n)] for i in range(valuation.n)]
        arcs = {(i, j) for i in range(valuation.n) for j in range(valuation.n)
                if i != j and values[i][i] < values[i][j]}
        return cls(valuation.n, arcs)

    def successors(self, i: int) -> list[int]:
        return sorted(j for (a, j) in self.arcs if a == i)

    def has_incoming(self, j: int, within=None) -> bool:
        return any(b == j and (within is None or a in within) for (a, b) in self.arcs)

    def has_outgoing(self, i: int) -> bool:
        return any(a == i for (a, _) in self.arcs)

    def find_cycle(self) -> list[int] | None:
        """A directed cycle ``[i1, ..., ik]`` with ``i1 -> i2 -> ... -> ik -> i1``, or None.

        Depth-first search from the lowest-index agent, visiting successors
        in index order.
        """
        state = [0] * self.n  # 0 unseen, 1 on stack, 2 done
        stack: list[int] = []

        def visit(v: int):
            state[v] = 1
            stack.append(v)
            for w in self.successors(v):
                if state[w] == 1:
                    return stack[stack.index(w):]
                if state[w] == 0:
                    found = visit(w)
                    if found:
                        return found
            stack.pop()
            state[v] = 2
            return None

        for start in range(self.n):
            if state[start] == 0:
                cycle = visit(start)
                if cycle:
                    return list(cycle)
        return None

    def is_acyclic(self) -> bool:
        return self.find_cycle() is None


def rotate(alloc: Allocation, cycle: Sequence[int]) -> Allocation:
    """Every agent on the cycle takes the bundle of the agent it envies."""
    k = len(cycle)
    return alloc.swapped({cycle[t]: cycle[(t + 1) % k] for t in range(k)})


def eliminate_envy_cycles(valuation: Valuation, alloc: Allocation, trace: list | None = None) -> Allocation:
    while True:
        cycle = EnvyGraph.of(valuation, alloc).find_cycle()
        if cycle is None:
            return alloc
        rotated = rotate(alloc, cycle)
        if trace is not None:
            trace.append(("rotate", tuple(cycle), alloc, rotated))
        alloc = rotated


def envy_graph_allocate(oracle: UtilityOracle | Instance, trace: list | None = None) -> Allocation:
    """EF1 allocation for doubly monotonic utilities.

    Items are handed out in index order.  If some agents weakly gain from
    the item, it goes to one of them that nobody else among them envies;
    otherwise it goes to an agent who envies nobody.  Envy cycles are then
    rotated away.  An additive :class:`Instance` is accepted as is.

    ``trace``, if given, receives ``("assign", item, agent)`` and
    ``("rotate", cycle, before, after)`` events.
    """
    n = oracle.n
    alloc = Allocation([set() for _ in range(n)])
    for o in range(oracle.m):
        gainers = [i for i in range(n)
                   if oracle.value(i, alloc[i] | {o}) - oracle.value(i, alloc[i]) >= 0]
        graph = EnvyGraph.of(oracle, alloc)
        if gainers:
            within = set(gainers)
            chosen = next((i for i in gainers if not graph.has_incoming(i, within)), None)
        else:
            chosen = next((i for i in range(n) if not graph.has_outgoing(i)), None)
        if chosen is None:
            raise InvariantError(
                f"no admissible recipient for item {o} (gainers={gainers}, arcs={sorted(graph.arcs)}); "
                "the utilities are probably not doubly monotonic")
        bundles = list(alloc.bundles)
        bundles[chosen] = bundles[chosen] | {o}
        alloc = Allocation(bundles)
        if trace is not None:
            trace.append(("assign", o, chosen))
        alloc = eliminate_envy_cycles(oracle, alloc, trace)
    return alloc


@dataclass(frozen=True)
class AwStep:
    item: int
    direction: str  # "winner->loser" or "loser->winner"
    allocation: Allocation
    loser_ef1: bool


@dataclass
class AwTrace:
    winner: int
    loser: int
    order: list[int] = field(default_factory=list)
    initial: Allocation | None = None
    initial_loser_ef1: bool = False
    steps: list[AwStep] = field(default_factory=list)

    @property
    def snapshots(self) -> list[Allocation]:
        return [self.initial] + [s.allocation for s in self.steps]


def generalized_adjusted_winner(inst: Instance, winner: int = 0) -> tuple[Allocation, AwTrace]:
    """EF1 and Pareto-optimal allocation for two agents.

    Items whose sign the agents disagree on go to the agent who does not
    dislike them; the remaining goods start with the winner and the chores
    with the loser.  Those are then scanned in non-increasing order of
    ``|u_loser| / |u_winner|`` (ties by index): goods move to the loser,
    chores move to the winner, until the loser is EF1 towards the winner.

    Items one agent values at zero and the other positively go to the
    positive side; items both value at zero stay with the winner.
    """
    if inst.n != 2:
        raise ValueError(f"adjusted winner needs exactly two agents, got {inst.n}")
    if winner not in (0, 1):
        raise ValueError("winner must be agent 0 or 1")
    w, l = winner, 1 - winner
    bundles = {w: set(), l: set()}
    objective = []
    for o in inst.items:
        uw, ul = inst.u(w, o), inst.u(l, o)
        if uw >= 0 and ul < 0:
            bundles[w].add(o)
        elif ul >= 0 and uw < 0:
            bundles[l].add(o)
        elif uw == 0 and ul == 0:
            bundles[w].add(o)
        elif uw == 0:
            bundles[l].add(o)
        elif ul == 0:
            bundles[w].add(o)
        elif uw > 0:
            bundles[w].add(o)
            objective.append(o)
        else:
            bundles[l].add(o)
            objective.append(o)

    def snapshot() -> Allocation:
        return Allocation([bundles[0], bundles[1]])

    order = sorted(objective, key=lambda o: (-abs(inst.u(l, o)) / abs(inst.u(w, o)), o))
    alloc = snapshot()
    trace = AwTrace(winner=w, loser=l, order=order, initial=alloc)
    satisfied = envy_witness(inst, alloc, l, w)[0]
    trace.initial_loser_ef1 = satisfied
    for o in order:
        if satisfied:
            break
        if inst.u(w, o) > 0:
            bundles[w].discard(o)
            bundles[l].add(o)
            direction = "winner->loser"
        else:
            bundles[l].discard(o)
            bundles[w].add(o)
            direction = "loser->winner"
        alloc = snapshot()
        satisfied = envy_witness(inst, alloc, l, w)[0]
        trace.steps.append(AwStep(o, direction, alloc, satisfied))
        logger.debug("AW transfer %s %s, loser EF1=%s", o, direction, satisfied)
    if not satisfied:
        raise InvariantError("loser still not EF1 after every objective item was transferred")
    return alloc, trace


def serial_dictatorship(inst: Instance, order: Sequence[int] | None = None) -> Allocation:
    """Pareto-optimal allocation in ``O(mn)``.

    Agents in ``order`` each take every remaining item they value strictly
    positively.  Leftovers are items nobody values positively; each goes to
    the first agent in ``order`` who values it at zero, or else to the last
    agent.  Routing zero-valued leftovers matters: dumping them all on the
    last agent can hand it a chore another agent would absorb for free.
    """
    order = _check_order(order, inst.n)
    remaining = set(inst.items)
    bundles: list[set[int]] = [set() for _ in inst.agents]
    for agent in order:
        taken = {o for o in remaining if inst.u(agent, o) > 0}
        bundles[agent] |= taken
        remaining -= taken
    for o in sorted(remaining):
        taker = next((a for a in order if inst.u(a, o) == 0), order[-1])
        bundles[taker].add(o)
    return Allocation(bundles)
