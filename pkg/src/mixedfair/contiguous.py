"""Contiguous division: moving knife on a mixed cake and rounding to a path.

Item ``o_j`` (0-indexed ``j``) occupies the cell ``[j, j + 1]`` of the cake
``[0, m]``, where agent ``i`` has constant density ``u_i(o_j)``.  All cut
points are exact rationals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .model import Allocation, Instance

Interval = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class MixedCake:
    inst: Instance

    @property
    def length(self) -> int:
        return self.inst.m

    def prefix(self, agent: int, x: Fraction) -> Fraction:
        """Value of ``[0, x]`` for ``agent``."""
        row = self.inst.utilities[agent]
        whole = min(math.floor(x), len(row))
        total = sum(row[:whole], Fraction(0))
        if whole < len(row):
            total += (x - whole) * row[whole]
        return total


def cake_value(cake: MixedCake, agent: int, a, b) -> Fraction:
    """Exact value of ``[a, b]`` for ``agent``.

    >>> cake_value(MixedCake(Instance([[2, 1]])), 0, 0, Fraction(3, 4))
    Fraction(3, 2)
    """
    a, b = Fraction(a), Fraction(b)
    if not 0 <= agent < cake.inst.n:
        raise ValueError(f"agent {agent} out of range")
    if not 0 <= a <= b <= cake.length:
        raise ValueError(f"[{a}, {b}] is not a subinterval of [0, {cake.length}]")
    return cake.prefix(agent, b) - cake.prefix(agent, a)


def _breakpoints(left: Fraction, right: Fraction) -> list[Fraction]:
    inner = range(math.floor(left) + 1, math.ceil(right))
    return [left] + [Fraction(k) for k in inner] + ([right] if right > left else [])


def _crossing(cake: MixedCake, agent: int, left: Fraction, right: Fraction, level: Fraction,
              last: bool) -> Fraction:
    """Smallest (or, with ``last``, largest) ``x`` in ``[left, right]`` where
    the value of ``[left, x]`` equals ``level``.

    The value is piecewise linear between integer points, so each segment is
    solved in closed form.
    """
    points = _breakpoints(left, right)
    base = cake.prefix(agent, left)
    values = [cake.prefix(agent, p) - base for p in points]
    segments = list(zip(range(len(points) - 1), range(1, len(points))))
    if last:
        segments.reverse()
    if len(points) == 1:
        if values[0] == level:
            return points[0]
        raise ArithmeticError("level not attained")
    for s, t in segments:
        gp, gq = values[s], values[t]
        lo, hi = min(gp, gq), max(gp, gq)
        if not lo <= level <= hi:
            continue
        endpoint = (t if last else s)
        if values[endpoint] == level:
            return points[endpoint]
        if gp == gq:
            continue
        return points[s] + (level - gp) * (points[t] - points[s]) / (gq - gp)
    raise ArithmeticError(f"level {level} not attained on [{left}, {right}] for agent {agent}")


@dataclass(frozen=True)
class FractionalAllocation:
    """One half-open interval ``[l, r)`` per agent, or ``None`` for an empty piece.

    ``order`` lists the agents with non-empty pieces from left to right.
    """

    m: int
    intervals: tuple[Interval | None, ...]
    order: tuple[int, ...]

    def __post_init__(self):
        pieces = sorted(iv for iv in self.intervals if iv is not None)
        cursor = Fraction(0)
        for a, b in pieces:
            if a != cursor or not a < b:
                raise ValueError(f"intervals do not tile [0, {self.m}) contiguously at {a}")
            cursor = b
        if cursor != self.m:
            raise ValueError(f"intervals cover [0, {cursor}) instead of [0, {self.m})")

    def value(self, cake: MixedCake, agent: int) -> Fraction:
        iv = self.intervals[agent]
        return Fraction(0) if iv is None else cake_value(cake, agent, *iv)


def moving_knife(cake: MixedCake | Instance) -> FractionalAllocation:
    """Contiguous proportional division of a mixed cake.

    While some remaining agent values the remaining cake positively, only
    those agents take part: each marks the first point where the left piece
    is worth its share of the rest, and the leftmost mark takes that piece.
    When nobody values the rest positively, each agent marks the last point
    where the left piece is worth its share, and the rightmost mark wins.
    Agents dropped from the positive phase receive nothing.
    """
    if isinstance(cake, Instance):
        cake = MixedCake(cake)
    n = cake.inst.n
    intervals: list[Interval | None] = [None] * n
    order: list[int] = []
    left, right = Fraction(0), Fraction(cake.length)
    agents = list(range(n))

    def give(agent: int, a: Fraction, b: Fraction) -> None:
        if a < b:
            intervals[agent] = (a, b)
            order.append(agent)

    while agents:
        values = {i: cake_value(cake, i, left, right) for i in agents}
        positive = [i for i in agents if values[i] > 0]
        if positive:
            agents = positive
            if len(positive) == 1:
                give(positive[0], left, right)
                break
            k = len(positive)
            marks = {i: _crossing(cake, i, left, right, values[i] / k, last=False) for i in positive}
            chosen = min(positive, key=lambda i: (marks[i], i))
        else:
            k = len(agents)
            marks = {i: _crossing(cake, i, left, right, values[i] / k, last=True) for i in agents}
            chosen = max(agents, key=lambda i: (marks[i], -i))
        give(chosen, left, marks[chosen])
        left = marks[chosen]
        agents.remove(chosen)
    return FractionalAllocation(cake.length, tuple(intervals), tuple(order))


def _strictly_inside_one_item(iv: Interval) -> bool:
    # touches neither end of the item cell it sits in
    a, b = iv
    cell = math.floor(a)
    return cell < a and b < cell + 1


def connected_prop1(inst: Instance, fractional: FractionalAllocation | None = None) -> Allocation:
    """Connected PROP1 allocation of items laid out on a path in index order.

    Rounds the moving-knife division: an agent whose piece lies strictly
    inside a single item gets nothing, items wholly inside a piece stay with
    its owner, and an item cut between a left and a right neighbour goes to
    the left one if it values the item at zero or more, otherwise to the
    right one.
    """
    if fractional is None:
        fractional = moving_knife(MixedCake(inst))
    pieces = [(iv, i) for i, iv in enumerate(fractional.intervals) if iv is not None]
    pieces.sort()
    kept = [(iv, i) for iv, i in pieces if not _strictly_inside_one_item(iv)]
    bundles: list[set[int]] = [set() for _ in inst.agents]
    for o in inst.items:
        cell = (Fraction(o), Fraction(o + 1))
        claim = [i for iv, i in kept if min(iv[1], cell[1]) > max(iv[0], cell[0])]
        # only the pieces covering the two ends of the cell can survive
        if len(claim) == 1:
            bundles[claim[0]].add(o)
        elif len(claim) == 2:
            left_agent, right_agent = claim
            taker = left_agent if inst.u(left_agent, o) >= 0 else right_agent
            bundles[taker].add(o)
        else:
            raise AssertionError(f"item {o} claimed by {claim}")
    return Allocation(bundles)


def is_contiguous(alloc: Allocation) -> bool:
    """True when every bundle is a run of consecutive item indices."""
    return all(not b or max(b) - min(b) + 1 == len(b) for b in alloc)


def boundary_items(inst: Instance, fractional: FractionalAllocation) -> list[int]:
    """Items split between two surviving pieces and settled by the sign rule."""
    kept = [iv for iv in fractional.intervals if iv is not None and not _strictly_inside_one_item(iv)]
    out = []
    for o in inst.items:
        claim = [iv for iv in kept if min(iv[1], o + 1) > max(iv[0], o)]
        if len(claim) == 2:
            out.append(o)
    return out
