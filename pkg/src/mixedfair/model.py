"""Core domain types and utility oracles.

All utilities are exact rationals (:class:`fractions.Fraction`).  Agents and
items are 0-indexed throughout the library; only the CLI translates to the
1-indexed convention used when presenting results.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Sequence

Bundle = frozenset  # frozenset[int] of item indices


def to_rational(value) -> Fraction:
    """Convert an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected: a float cannot be trusted to carry the exact value the
    caller had in mind.

    >>> to_rational("3/6")
    Fraction(1, 2)
    >>> to_rational(-4)
    Fraction(-4, 1)
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not utilities")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError:
            raise ValueError(f"not a rational number: {value!r}") from None
    raise TypeError(f"utilities must be exact rationals, got {type(value).__name__}")


@dataclass(frozen=True)
class Instance:
    """``n`` agents, ``m`` items and an additive utility matrix."""

    utilities: tuple[tuple[Fraction, ...], ...]
    names: dict | None = field(default=None, compare=False, hash=False)

    def __init__(self, utilities: Iterable[Iterable], names: dict | None = None, *, m: int | None = None):
        rows = tuple(tuple(to_rational(u) for u in row) for row in utilities)
        if not rows:
            raise ValueError("an instance needs at least one agent")
        width = len(rows[0]) if m is None else m
        if any(len(row) != width for row in rows):
            raise ValueError(f"utility matrix must be {len(rows)}x{width}")
        object.__setattr__(self, "utilities", rows)
        object.__setattr__(self, "names", names)

    @property
    def n(self) -> int:
        return len(self.utilities)

    @property
    def m(self) -> int:
        return len(self.utilities[0])

    @property
    def agents(self) -> range:
        return range(self.n)

    @property
    def items(self) -> range:
        return range(self.m)

    def u(self, agent: int, item: int) -> Fraction:
        return self.utilities[agent][item]

    def value(self, agent: int, bundle: Iterable[int]) -> Fraction:
        row = self.utilities[agent]
        return sum((row[o] for o in bundle), Fraction(0))

    def total(self, agent: int) -> Fraction:
        return sum(self.utilities[agent], Fraction(0))

    def with_rows(self, rows: Sequence[Sequence]) -> "Instance":
        return Instance(rows, m=self.m)

    def __repr__(self) -> str:
        rows = ", ".join("[" + ", ".join(str(u) for u in row) + "]" for row in self.utilities)
        return f"Instance([{rows}])"


@dataclass(frozen=True)
class Allocation:
    """Pairwise-disjoint bundles, one per agent.

    Completeness is not assumed; query it with :meth:`is_complete`.
    """

    bundles: tuple[frozenset[int], ...]

    def __init__(self, bundles: Iterable[Iterable[int]]):
        frozen = tuple(frozenset(b) for b in bundles)
        seen: set[int] = set()
        for b in frozen:
            for o in b:
                if not isinstance(o, int) or o < 0:
                    raise ValueError(f"invalid item index {o!r}")
            if seen & b:
                raise ValueError(f"bundles overlap on items {sorted(seen & b)}")
            seen |= b
        object.__setattr__(self, "bundles", frozen)

    @classmethod
    def from_assignment(cls, owners: Sequence[int], n: int) -> "Allocation":
        """Build from ``owners[j]`` = agent holding item ``j``."""
        bundles: list[set[int]] = [set() for _ in range(n)]
        for item, agent in enumerate(owners):
            bundles[agent].add(item)
        return cls(bundles)

    @property
    def n(self) -> int:
        return len(self.bundles)

    def __getitem__(self, agent: int) -> frozenset[int]:
        return self.bundles[agent]

    def __iter__(self):
        return iter(self.bundles)

    def __len__(self) -> int:
        return len(self.bundles)

    def allocated(self) -> frozenset[int]:
        return frozenset().union(*self.bundles)

    def is_complete(self, m: int) -> bool:
        return self.allocated() == frozenset(range(m))

    def owner(self, item: int) -> int | None:
        for agent, b in enumerate(self.bundles):
            if item in b:
                return agent
        return None

    def validate_for(self, n: int, m: int) -> None:
        """Raise ValueError unless this allocation fits ``n`` agents and ``m`` items."""
        if len(self.bundles) != n:
            raise ValueError(f"allocation has {len(self.bundles)} bundles for {n} agents")
        for b in self.bundles:
            if any(o >= m for o in b):
                raise ValueError(f"item index out of range for m={m}: {max(b)}")

    def swapped(self, mapping: dict[int, int]) -> "Allocation":
        """Return the allocation where agent ``i`` receives ``self[mapping.get(i, i)]``."""
        return Allocation(self.bundles[mapping.get(i, i)] for i in range(self.n))

    def __repr__(self) -> str:
        return "Allocation(" + ", ".join(str(sorted(b)) for b in self.bundles) + ")"


@dataclass(frozen=True)
class UtilityOracle:
    """Set-function utilities with a declared goods/chores split per agent.

    ``evaluate(i, X)`` must return an exact rational and ``evaluate(i, ∅)``
    must be 0.  Double monotonicity is the caller's promise; see
    :func:`check_double_monotonicity` for an exhaustive verifier.
    """

    n: int
    m: int
    goods: tuple[frozenset[int], ...]
    chores: tuple[frozenset[int], ...]
    evaluate: Callable[[int, frozenset[int]], Fraction]

    def __post_init__(self):
        if len(self.goods) != self.n or len(self.chores) != self.n:
            raise ValueError("need one goods/chores partition per agent")
        everything = frozenset(range(self.m))
        for g, c in zip(self.goods, self.chores):
            if g & c or (g | c) != everything:
                raise ValueError("goods and chores must partition the items")

    @property
    def agents(self) -> range:
        return range(self.n)

    @property
    def items(self) -> range:
        return range(self.m)

    def value(self, agent: int, bundle: Iterable[int]) -> Fraction:
        return self.evaluate(agent, frozenset(bundle))

    def marginal(self, agent: int, bundle: Iterable[int], item: int) -> Fraction:
        """Change in ``agent``'s utility from adding ``item`` to ``bundle``."""
        bundle = frozenset(bundle)
        return self.evaluate(agent, bundle | {item}) - self.evaluate(agent, bundle)


def _check_agent(n: int, agent: int) -> None:
    if not 0 <= agent < n:
        raise ValueError(f"agent {agent} out of range for n={n}")


def bundle_utility(inst: Instance, agent: int, bundle: Iterable[int]) -> Fraction:
    """Additive utility of ``bundle`` for ``agent``.

    >>> bundle_utility(Instance([[2, -3, -3, -3]]), 0, {0})
    Fraction(2, 1)
    """
    _check_agent(inst.n, agent)
    bundle = frozenset(bundle)
    if any(not 0 <= o < inst.m for o in bundle):
        raise ValueError(f"bundle {sorted(bundle)} out of range for m={inst.m}")
    return inst.value(agent, bundle)


def marginal_utility(oracle: UtilityOracle, alloc: Allocation, agent: int, item: int) -> Fraction:
    return oracle.marginal(agent, alloc[agent], item)


def additive_oracle(inst: Instance) -> UtilityOracle:
    """Wrap an additive instance as an oracle; zero-valued items count as goods."""
    goods = tuple(frozenset(o for o in inst.items if inst.u(i, o) >= 0) for i in inst.agents)
    chores = tuple(frozenset(o for o in inst.items if inst.u(i, o) < 0) for i in inst.agents)
    return UtilityOracle(inst.n, inst.m, goods, chores, inst.value)


class _CappedAdditive:
    # Picklable evaluator for synthetic oracles.
    def __init__(self, good_w, chore_w, caps):
        self.good_w = good_w
        self.chore_w = chore_w
        self.caps = caps

    def __call__(self, agent: int, bundle: frozenset[int]) -> Fraction:
        gw, cw = self.good_w[agent], self.chore_w[agent]
        gain = sum((gw[o] for o in bundle if o in gw), Fraction(0))
        cap = self.caps[agent]
        if cap is not None and gain > cap:
            gain = cap
        return gain - sum((cw[o] for o in bundle if o in cw), Fraction(0))


def synthetic_doubly_monotonic(seed: int, n: int, m: int, *, capped: bool = True,
                               max_weight: int = 10) -> UtilityOracle:
    """Reproducible non-additive doubly monotonic oracle.

    Each agent splits the items at random into goods and chores and draws a
    positive integer weight per item.  The bundle value is the total weight of
    its goods, capped at a per-agent budget, minus the total weight of its
    chores.  With ``capped=False`` the oracle is additive.
    """
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    rng = random.Random(seed)
    goods, chores, good_w, chore_w, caps = [], [], [], [], []
    for _ in range(n):
        g = frozenset(o for o in range(m) if rng.random() < 0.5)
        gw = {o: Fraction(rng.randint(1, max_weight)) for o in sorted(g)}
        cw = {o: Fraction(rng.randint(1, max_weight)) for o in range(m) if o not in g}
        total = sum(gw.values(), Fraction(0))
        cap = Fraction(rng.randint(1, max(1, int(total)))) if capped and total > 0 else None
        goods.append(g)
        chores.append(frozenset(range(m)) - g)
        good_w.append(gw)
        chore_w.append(cw)
        caps.append(cap)
    return UtilityOracle(n, m, tuple(goods), tuple(chores), _CappedAdditive(good_w, chore_w, caps))


def check_double_monotonicity(oracle: UtilityOracle) -> tuple[int, int, frozenset[int]] | None:
    """Exhaustively search for a violation ``(agent, item, X)``; ``None`` if there is none.

    Visits every subset of the other items for every (agent, item) pair, so it
    is only practical for small ``m``.
    """
    for i in oracle.agents:
        if oracle.evaluate(i, frozenset()) != 0:
            return (i, -1, frozenset())
        for o in oracle.items:
            rest = [x for x in oracle.items if x != o]
            is_good = o in oracle.goods[i]
            for r in range(len(rest) + 1):
                for combo in itertools.combinations(rest, r):
                    x = frozenset(combo)
                    delta = oracle.evaluate(i, x | {o}) - oracle.evaluate(i, x)
                    if (is_good and delta < 0) or (not is_good and delta > 0):
                        return (i, o, x)
    return None
