"""Random and fixed instances."""
from __future__ import annotations

import random

from .model import Instance

DISTRIBUTIONS = ("mixed", "uniform", "all-goods", "all-chores", "identical", "paper-prop3", "paper-example1")

# two agents with identical utilities on one good and three equal chores;
# plain round robin cannot reach EF1 here
PROP3_UTILITIES = [[2, -3, -3, -3], [2, -3, -3, -3]]

# the worked two-agent adjusted winner run (Alice wins, Bob loses)
EXAMPLE1_UTILITIES = [[1, -1, 2, 1, -2, -4, -6], [4, -3, 6, 2, -2, -2, -2]]


def prop3_instance() -> Instance:
    return Instance(PROP3_UTILITIES, names={"agents": ["Alice", "Bob"]})


def example1_instance() -> Instance:
    return Instance(EXAMPLE1_UTILITIES, names={"agents": ["Alice", "Bob"]})


def _signed(rng: random.Random, p_good: float, max_abs: int) -> int:
    magnitude = rng.randint(1, max_abs)
    return magnitude if rng.random() < p_good else -magnitude


def random_instance(rng: random.Random, n: int, m: int, dist: str = "mixed", *,
                    p_good: float = 0.5, max_abs: int = 10) -> Instance:
    """Draw an integer-valued instance.

    ``mixed`` draws each entry as a good with probability ``p_good`` and
    magnitude uniform in ``1..max_abs``.  ``identical`` copies one mixed row
    to every agent.  ``uniform`` draws entries uniformly from
    ``-max_abs..max_abs`` (zeros included).
    """
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    if not 0.0 <= p_good <= 1.0:
        raise ValueError("p_good must lie in [0, 1]")
    if dist == "paper-prop3":
        return prop3_instance()
    if dist == "paper-example1":
        return example1_instance()
    if dist == "mixed":
        rows = [[_signed(rng, p_good, max_abs) for _ in range(m)] for _ in range(n)]
    elif dist == "all-goods":
        rows = [[_signed(rng, 1.0, max_abs) for _ in range(m)] for _ in range(n)]
    elif dist == "all-chores":
        rows = [[_signed(rng, 0.0, max_abs) for _ in range(m)] for _ in range(n)]
    elif dist == "identical":
        row = [_signed(rng, p_good, max_abs) for _ in range(m)]
        rows = [list(row) for _ in range(n)]
    elif dist == "uniform":
        rows = [[rng.randint(-max_abs, max_abs) for _ in range(m)] for _ in range(n)]
    else:
        raise ValueError(f"unknown distribution {dist!r}")
    return Instance(rows, m=m)
