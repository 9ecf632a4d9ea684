"""Hard constraint networks derived from layer selections.

toCN= keeps, for each constraint, exactly the tuples of the selected layer;
toCN<= keeps the tuples of every layer up to the selected one. Either table
is stored positively (allowed tuples) or negatively (forbidden tuples): the
negative form is used when the default layer is among the kept layers, since
the implicit tuples cannot be enumerated cheaply.

Solving is backtracking search with full GAC maintained at every node,
dom/wdeg-style variable ordering, and lexicographic tie-breaks throughout,
so the first solution found is deterministic.
"""

from __future__ import annotations

import time
from collections import deque

from .lattice import Front
from .model import WCN, Variable


class ResourceLimit(Exception):
    """A node or time budget ran out; the caller reports UNKNOWN."""


class Budget:
    """Shared node counter and wall-clock deadline for one search run."""

    def __init__(self, max_nodes: int | None = None, time_limit: float | None = None):
        self.max_nodes = max_nodes
        self.deadline = None if time_limit is None else time.monotonic() + time_limit
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise ResourceLimit(f"node budget {self.max_nodes} exhausted")
        self.check_time()

    def check_time(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise ResourceLimit("time limit exhausted")


class HardConstraint:
    """A table constraint, satisfied by table membership or non-membership."""

    def __init__(self, cid: int, scope: tuple[int, ...], table, positive: bool):
        self.id = cid
        self.scope = tuple(scope)
        self.table = frozenset(tuple(t) for t in table)
        self.table_list = sorted(self.table)
        self.positive = positive

    @property
    def arity(self) -> int:
        return len(self.scope)

    def accepts(self, values: tuple[int, ...]) -> bool:
        """Whether a tuple over this constraint's scope satisfies it."""
        return (tuple(values) in self.table) == self.positive

    def __repr__(self) -> str:
        sign = "+" if self.positive else "-"
        return f"HardConstraint(id={self.id}, scope={self.scope}, {sign}{len(self.table)})"


class CN:
    """A hard constraint network over the same variables as its WCN."""

    def __init__(self, variables: list[Variable], constraints: list[HardConstraint]):
        self.variables = list(variables)
        self.constraints = list(constraints)
        self.on_var: list[list[int]] = [[] for _ in self.variables]
        for ci, c in enumerate(self.constraints):
            for x in c.scope:
                self.on_var[x].append(ci)

    def subset(self, ids) -> "CN":
        """The sub-network keeping only constraints with the given ids."""
        keep = set(ids)
        return CN(self.variables, [c for c in self.constraints if c.id in keep])

    def __repr__(self) -> str:
        return f"CN(n={len(self.variables)}, e={len(self.constraints)})"


def to_cn_eq(wcn: WCN, front: Front) -> CN:
    """Hard network accepting exactly the selected layer of each constraint."""
    hards = []
    for c in wcn.constraints:
        layer = c.layers[front.indexes[c.id]]
        if layer.is_default:
            hards.append(HardConstraint(c.id, c.scope, c.explicit_tuples, positive=False))
        else:
            hards.append(HardConstraint(c.id, c.scope, layer.tuples, positive=True))
    return CN(wcn.variables, hards)


def to_cn_leq(wcn: WCN, front: Front) -> CN:
    """Hard network accepting every layer up to the selected one."""
    hards = []
    for c in wcn.constraints:
        at = front.indexes[c.id]
        if c.default_index <= at:
            above = [t for L in c.layers[at + 1 :] for t in L.tuples]
            hards.append(HardConstraint(c.id, c.scope, above, positive=False))
        else:
            below = [t for L in c.layers[: at + 1] for t in L.tuples]
            hards.append(HardConstraint(c.id, c.scope, below, positive=True))
    return CN(wcn.variables, hards)


def _revise(cn: CN, ci: int, domains: list[set[int]], residues: dict) -> tuple[list[int], bool]:
    """Prune unsupported values of one constraint.

    Returns (variables whose domain changed, wiped out?). Positive tables are
    revised by support scanning with residues; negative tables by counting
    valid forbidden tuples per value against the number of extensions.
    """
    c = cn.constraints[ci]
    scope = c.scope
    arity = len(scope)
    changed: list[int] = []
    if c.positive:
        for pos in range(arity):
            x = scope[pos]
            dom = domains[x]
            removed = []
            for a in sorted(dom):
                t = residues.get((ci, pos, a))
                if t is not None and all(t[j] in domains[scope[j]] for j in range(arity)):
                    continue
                for t in c.table_list:
                    if t[pos] == a and all(t[j] in domains[scope[j]] for j in range(arity)):
                        residues[(ci, pos, a)] = t
                        break
                else:
                    removed.append(a)
            if removed:
                dom.difference_update(removed)
                changed.append(x)
                if not dom:
                    return changed, True
    else:
        sizes = [len(domains[x]) for x in scope]
        space = 1
        for s in sizes:
            space *= s
        counts: list[dict[int, int]] = [{} for _ in range(arity)]
        for t in c.table_list:
            if all(t[j] in domains[scope[j]] for j in range(arity)):
                for j in range(arity):
                    counts[j][t[j]] = counts[j].get(t[j], 0) + 1
        for pos in range(arity):
            x = scope[pos]
            extensions = space // sizes[pos]
            dom = domains[x]
            removed = [a for a in sorted(dom) if counts[pos].get(a, 0) == extensions]
            if removed:
                dom.difference_update(removed)
                changed.append(x)
                if not dom:
                    return changed, True
    return changed, False


def _propagate(cn: CN, domains: list[set[int]], residues: dict, seeds=None) -> int | None:
    """Enforce GAC; returns the index of the constraint that wiped a domain,
    or None at fixpoint."""
    if seeds is None:
        queue = deque(range(len(cn.constraints)))
    else:
        queue = deque(sorted(set(seeds)))
    queued = set(queue)
    while queue:
        ci = queue.popleft()
        queued.discard(ci)
        changed, wiped = _revise(cn, ci, domains, residues)
        if wiped:
            return ci
        for x in changed:
            for cj in cn.on_var[x]:
                if cj not in queued:
                    queued.add(cj)
                    queue.append(cj)
    return None


def propagate_gac(cn: CN) -> list[set[int]] | None:
    """GAC fixpoint domains from full domains, or None on wipe-out."""
    domains = [set(range(v.domain_size)) for v in cn.variables]
    if _propagate(cn, domains, {}) is not None:
        return None
    return domains


def _pick_variable(cn: CN, domains: list[set[int]], weights: list[int]) -> int:
    """Unassigned variable minimizing dom/wdeg, smallest id on ties."""
    best = -1
    best_dom = 0
    best_w = 1
    for x in range(len(domains)):
        d = len(domains[x])
        if d < 2:
            continue
        w = max(1, sum(weights[ci] for ci in cn.on_var[x]))
        if best < 0 or d * best_w < best_dom * w:
            best, best_dom, best_w = x, d, w
    return best


def solve_cn(cn: CN, budget: Budget | None = None) -> tuple[int, ...] | None:
    """First solution under the fixed orderings, or None when unsatisfiable.

    Binary branching (x=a, then x!=a with a the smallest value), GAC after
    every decision, constraint weights bumped on each wipe-out.
    """
    domains = [set(range(v.domain_size)) for v in cn.variables]
    weights = [1] * len(cn.constraints)
    residues: dict = {}
    if budget is not None:
        budget.check_time()
    wipe = _propagate(cn, domains, residues)
    if wipe is not None:
        return None
    alternatives: list[tuple[list[set[int]], int]] = []
    while True:
        if budget is not None:
            budget.tick()
        if all(len(d) == 1 for d in domains):
            return tuple(min(d) for d in domains)
        x = _pick_variable(cn, domains, weights)
        a = min(domains[x])
        rest = [set(d) for d in domains]
        rest[x].discard(a)
        alternatives.append((rest, x))
        domains[x] = {a}
        wipe = _propagate(cn, domains, residues, seeds=cn.on_var[x])
        while wipe is not None:
            weights[wipe] += 1
            if not alternatives:
                return None
            domains, y = alternatives.pop()
            if budget is not None:
                budget.tick()
            wipe = _propagate(cn, domains, residues, seeds=cn.on_var[y])
