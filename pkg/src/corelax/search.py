"""Optimization by sequences of hard satisfaction problems.

Complete mode pops fronts from a priority queue in nondecreasing cost order
and tests the exact-layer network of each; the first satisfiable front is the
optimum. On failure the front's successors are queued, either over all
constraints or only over a minimal unsatisfiable core of the failed network,
which keeps the explored slice of the lattice small without losing optimality.

Greedy mode works with the at-most-layer networks instead: each failure's
core is relaxed just enough to become satisfiable, walking a single path to
an upper bound.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from itertools import product

from .hardcn import Budget, ResourceLimit, solve_cn, to_cn_eq, to_cn_leq
from .lattice import BottomForbidden, Front, FrontQueue, bottom_front, successors
from .model import WCN, evaluate_cost
from .muc import extract_muc, restrict_wcn

ENUMERATION_CAP = 10_000_000


class TooLarge(Exception):
    """The instantiation space exceeds the exhaustive enumeration cap."""


class RelaxExhausted(Exception):
    """No relaxation of the core keeps the front cost below k."""


class Status(str, Enum):
    OPTIMUM = "OPTIMUM"
    UPPER_BOUND = "UPPER_BOUND"
    INFEASIBLE = "INFEASIBLE"
    UNKNOWN = "UNKNOWN"


@dataclass
class SearchStats:
    fronts_popped: int = 0
    cns_solved: int = 0
    mucs_extracted: int = 0
    nodes: int = 0
    wall_time: float = 0.0
    muc_sizes: list[int] = field(default_factory=list)


@dataclass
class Outcome:
    """Result of one run.

    OPTIMUM and UPPER_BOUND carry a solution and its cost (< k). INFEASIBLE
    from a complete mode certifies that every instantiation costs k; from
    greedy mode it reports relaxation exhaustion. UNKNOWN means a budget
    stopped the run before any claim could be made.
    """

    status: Status
    solution: tuple[int, ...] | None
    cost: int | None
    stats: SearchStats


class SearchTrace:
    """Optional instrumentation collected during a run."""

    def __init__(self):
        self.popped: list[Front] = []
        self.sats: list[tuple[str, Front, tuple[int, ...], frozenset[int] | None]] = []
        self.mucs: list[tuple[str, Front, frozenset[int]]] = []

    def note_pop(self, front: Front) -> None:
        self.popped.append(front)

    def note_sat(self, kind: str, front: Front, solution: tuple[int, ...], core=None) -> None:
        self.sats.append((kind, front, solution, core))

    def note_muc(self, kind: str, front: Front, core: frozenset[int]) -> None:
        self.mucs.append((kind, front, core))


def _complete(
    wcn: WCN,
    use_muc: bool,
    muc_strategy: str,
    time_limit: float | None,
    node_budget: int | None,
    trace: SearchTrace | None,
) -> Outcome:
    budget = Budget(node_budget, time_limit)
    stats = SearchStats()
    started = time.monotonic()
    try:
        queue = FrontQueue()
        try:
            queue.push(bottom_front(wcn))
        except BottomForbidden:
            pass  # every front costs k; the empty queue reports INFEASIBLE
        while (front := queue.pop_min()) is not None:
            budget.check_time()
            stats.fronts_popped += 1
            if trace is not None:
                trace.note_pop(front)
            cn = to_cn_eq(wcn, front)
            solution = solve_cn(cn, budget)
            stats.cns_solved += 1
            if solution is not None:
                if trace is not None:
                    trace.note_sat("eq", front, solution)
                return Outcome(Status.OPTIMUM, solution, front.cost, stats)
            subset = None
            if use_muc:
                core = extract_muc(cn, muc_strategy, budget)
                stats.mucs_extracted += 1
                stats.muc_sizes.append(len(core))
                if trace is not None:
                    trace.note_muc("eq", front, core)
                subset = core
            for child in successors(wcn, front, subset):
                queue.push(child)
        return Outcome(Status.INFEASIBLE, None, None, stats)
    except ResourceLimit:
        return Outcome(Status.UNKNOWN, None, None, stats)
    finally:
        stats.nodes = budget.nodes
        stats.wall_time = time.monotonic() - started


def complete_search_no_muc(
    wcn: WCN,
    time_limit: float | None = None,
    node_budget: int | None = None,
    trace: SearchTrace | None = None,
) -> Outcome:
    """Optimal search expanding every constraint of each failed front."""
    return _complete(wcn, False, "deletion", time_limit, node_budget, trace)


def complete_search(
    wcn: WCN,
    muc_strategy: str = "deletion",
    time_limit: float | None = None,
    node_budget: int | None = None,
    trace: SearchTrace | None = None,
) -> Outcome:
    """Optimal search expanding only a minimal core of each failed front."""
    return _complete(wcn, True, muc_strategy, time_limit, node_budget, trace)


def relax(
    sub: WCN,
    front: Front,
    muc_strategy: str = "deletion",
    budget: Budget | None = None,
    stats: SearchStats | None = None,
    trace: SearchTrace | None = None,
) -> Front:
    """Cheapest front at or above `front` whose at-most networks over `sub`
    become satisfiable, raising only constraints of `sub`.

    Front costs stay those of the full network (cached through increments),
    and fronts whose full cost reaches k are pruned: the walk never admits a
    front that could only bound from k upward. Raises RelaxExhausted when the
    local queue empties.
    """
    queue = FrontQueue()
    queue.push(front)
    while (g := queue.pop_min()) is not None:
        if budget is not None:
            budget.check_time()
        cn = to_cn_leq(sub, g)
        solution = solve_cn(cn, budget)
        if stats is not None:
            stats.cns_solved += 1
        if solution is not None:
            if trace is not None:
                trace.note_sat("leq-local", g, solution, frozenset(c.id for c in sub.constraints))
            return g
        core = extract_muc(cn, muc_strategy, budget)
        if stats is not None:
            stats.mucs_extracted += 1
            stats.muc_sizes.append(len(core))
        if trace is not None:
            trace.note_muc("leq-local", g, core)
        for child in successors(sub, g, core):
            queue.push(child)
    raise RelaxExhausted(f"no relaxation of {sorted(c.id for c in sub.constraints)} below k")


def incomplete_search(
    wcn: WCN,
    muc_strategy: str = "deletion",
    time_limit: float | None = None,
    node_budget: int | None = None,
    trace: SearchTrace | None = None,
) -> Outcome:
    """Greedy upper-bounding search along a single relaxation path."""
    budget = Budget(node_budget, time_limit)
    stats = SearchStats()
    started = time.monotonic()
    try:
        try:
            front = bottom_front(wcn)
        except BottomForbidden:
            return Outcome(Status.INFEASIBLE, None, None, stats)
        while True:
            budget.check_time()
            cn = to_cn_leq(wcn, front)
            solution = solve_cn(cn, budget)
            stats.cns_solved += 1
            if solution is not None:
                if trace is not None:
                    trace.note_sat("leq", front, solution)
                cost = evaluate_cost(wcn, solution)
                return Outcome(Status.UPPER_BOUND, solution, cost, stats)
            core = extract_muc(cn, muc_strategy, budget)
            stats.mucs_extracted += 1
            stats.muc_sizes.append(len(core))
            if trace is not None:
                trace.note_muc("leq", front, core)
            try:
                front = relax(restrict_wcn(wcn, core), front, muc_strategy, budget, stats, trace)
            except RelaxExhausted:
                return Outcome(Status.INFEASIBLE, None, None, stats)
    except ResourceLimit:
        return Outcome(Status.UNKNOWN, None, None, stats)
    finally:
        stats.nodes = budget.nodes
        stats.wall_time = time.monotonic() - started


def brute_force_optimum(wcn: WCN, cap: int = ENUMERATION_CAP) -> Outcome:
    """Exhaustive enumeration oracle; first minimizer in lexicographic order."""
    stats = SearchStats()
    started = time.monotonic()
    space = 1
    for v in wcn.variables:
        space *= v.domain_size
    if space > cap:
        raise TooLarge(f"{space} instantiations exceed the cap of {cap}")
    best: tuple[int, ...] | None = None
    best_cost = wcn.k + 1
    for values in product(*(range(v.domain_size) for v in wcn.variables)):
        cost = evaluate_cost(wcn, values)
        if cost < best_cost:
            best, best_cost = values, cost
            if cost == 0:
                break
    stats.wall_time = time.monotonic() - started
    if best is None or best_cost >= wcn.k:
        return Outcome(Status.INFEASIBLE, None, None, stats)
    return Outcome(Status.OPTIMUM, best, best_cost, stats)


def solve_mode(
    wcn: WCN,
    mode: str,
    muc_strategy: str = "deletion",
    time_limit: float | None = None,
    node_budget: int | None = None,
    trace: SearchTrace | None = None,
) -> Outcome:
    """Dispatch to one of the search modes by name."""
    if mode == "complete":
        return complete_search(wcn, muc_strategy, time_limit, node_budget, trace)
    if mode == "complete-nomuc":
        return complete_search_no_muc(wcn, time_limit, node_budget, trace)
    if mode == "greedy":
        return incomplete_search(wcn, muc_strategy, time_limit, node_budget, trace)
    raise ValueError(f"unknown mode {mode!r}")
