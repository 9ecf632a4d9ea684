"""Shared fixtures: the bundled example instance and the random corpus.

The corpus draw is frozen: changing it invalidates recorded expectations, so
tests treat `draw_instance` as part of the contract under test.
"""

import random
from pathlib import Path

import pytest

from corelax import WCN, parse_wcsp, random_instance

FIG3_PATH = Path(__file__).with_name("fig3.wcsp")

CORPUS_COSTS = [0, 1, 2, 5, 10]
CORPUS_DEFAULTS = [0, 10]


@pytest.fixture(scope="session")
def fig3_text() -> str:
    return FIG3_PATH.read_text()


@pytest.fixture()
def fig3(fig3_text) -> WCN:
    return parse_wcsp(fig3_text)


def draw_instance(seed: int) -> WCN:
    """One corpus instance: small, mixed arities, k alternating tight/huge."""
    rng = random.Random(seed * 7919 + 17)
    n = rng.randint(2, 6)
    d = rng.randint(2, 4)
    e = rng.randint(1, 8)
    arity = rng.randint(1, min(3, n))
    k = 20 if seed % 2 == 0 else 10**6
    return random_instance(
        n, d, e, arity, CORPUS_COSTS + [k], CORPUS_DEFAULTS + [k], k, seed
    )


def reference_cost(text: str, values) -> int:
    """Independent instantiation cost, read straight off the wcsp text.

    Deliberately avoids the layer machinery: raw dict lookups per constraint
    plus a plain bounded sum.
    """
    tokens = text.split()
    at = 0

    def take(count):
        nonlocal at
        out = tokens[at : at + count]
        at += count
        return out

    take(1)  # name
    n, _max_dom, e, k = (int(t) for t in take(4))
    take(n)  # domain sizes
    total = 0
    for _ in range(e):
        arity = int(take(1)[0])
        scope = [int(t) for t in take(arity)]
        default_cost = min(k, int(take(1)[0]))
        t_count = int(take(1)[0])
        table = {}
        for _ in range(t_count):
            row = [int(t) for t in take(arity + 1)]
            table[tuple(row[:arity])] = min(k, row[arity])
        projected = tuple(values[x] for x in scope)
        total = min(k, total + table.get(projected, default_cost))
    return total
