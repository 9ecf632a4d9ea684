"""Front lattice over layer choices.

A front assigns one layer index to every constraint of the root network; its
cost is the bounded sum of the selected layer costs. Incrementing exactly one
entry yields a direct successor, so fronts form a finite lattice from the
all-zero bottom front to the all-top front, with strictly increasing cost
along every edge (until saturation at k).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .model import WCN, bounded_add


class BottomForbidden(Exception):
    """The all-zero front already costs k: no instantiation can cost less."""

    def __init__(self, front: "Front"):
        super().__init__(f"bottom front costs k ({front.cost})")
        self.front = front


@dataclass(frozen=True, order=True)
class Front:
    """Layer selection indexed by constraint id, with its cached cost.

    Ordering compares (cost, indexes), so ties in cost break on the
    lexicographically smallest index array.
    """

    cost: int
    indexes: tuple[int, ...]


def front_cost(wcn: WCN, indexes: tuple[int, ...]) -> int:
    """Bounded sum of the selected layer costs over wcn's constraints."""
    total = 0
    for c in wcn.constraints:
        total = bounded_add(total, c.layers[indexes[c.id]].cost, wcn.k)
    return total


def bottom_front(wcn: WCN) -> Front:
    """The all-zero front of a root network.

    Raises BottomForbidden when even the cheapest layers sum to k; every
    front and every complete instantiation then costs k.
    """
    ids = [c.id for c in wcn.constraints]
    if ids != list(range(len(ids))):
        raise ValueError("bottom_front requires a root network with dense constraint ids")
    indexes = (0,) * len(ids)
    front = Front(cost=front_cost(wcn, indexes), indexes=indexes)
    if front.cost >= wcn.k:
        raise BottomForbidden(front)
    return front


def successors(wcn: WCN, front: Front, subset=None) -> list[Front]:
    """Direct successors of a front, incrementing only constraints in subset.

    Subset defaults to all of wcn's constraints. Successors that cost k are
    dropped: they cannot price any instantiation below the forbidden cost.
    Child costs come from the parent's cached cost, which is exact whenever
    it is below k; successors of a saturated front all cost k.
    """
    k = wcn.k
    out: list[Front] = []
    for c in wcn.constraints:
        if subset is not None and c.id not in subset:
            continue
        at = front.indexes[c.id]
        if at + 1 >= c.nb_layers:
            continue
        if front.cost >= k:
            cost = k
        else:
            cost = min(k, front.cost - c.layers[at].cost + c.layers[at + 1].cost)
        if cost >= k:
            continue
        indexes = front.indexes[: c.id] + (at + 1,) + front.indexes[c.id + 1 :]
        out.append(Front(cost=cost, indexes=indexes))
    return out


class FrontQueue:
    """Priority queue of fronts, cheapest first, ignoring re-inserts.

    Every index array is admitted once; pushing it again, before or after it
    was popped, is a no-op.
    """

    def __init__(self):
        self._heap: list[Front] = []
        self._seen: set[tuple[int, ...]] = set()

    def push(self, front: Front) -> bool:
        if front.indexes in self._seen:
            return False
        self._seen.add(front.indexes)
        heapq.heappush(self._heap, front)
        return True

    def pop_min(self) -> Front | None:
        if not self._heap:
            return None
        return heapq.heappop(self._heap)

    def __len__(self) -> int:
        return len(self._heap)

    def __bool__(self) -> bool:
        return bool(self._heap)
