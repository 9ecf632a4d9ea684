"""Minimal unsatisfiable core extraction over hard constraint networks.

A core is minimal when removing any single constraint makes the rest
satisfiable; by monotonicity of satisfiability that single-removal check
certifies every strict subset. Two strategies are provided: deletion scans
constraints once in id order; dichotomic repeatedly binary-searches for the
transition constraint (smallest unsatisfiable prefix), needing about
|core| * log(e) solves instead of e.
"""

from __future__ import annotations

from .hardcn import CN, Budget, solve_cn
from .model import WCN

STRATEGIES = ("deletion", "dichotomic")


class NotUnsat(Exception):
    """Core extraction was asked on a satisfiable network (caller bug)."""


def _unsat(cn: CN, ids, budget: Budget | None) -> bool:
    return solve_cn(cn.subset(ids), budget) is None


def extract_muc(cn: CN, strategy: str = "deletion", budget: Budget | None = None) -> frozenset[int]:
    """A minimal unsatisfiable core of cn, as a set of constraint ids."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}, expected one of {STRATEGIES}")
    if solve_cn(cn, budget) is not None:
        raise NotUnsat("network is satisfiable")
    ids = [c.id for c in cn.constraints]
    if strategy == "deletion":
        return _deletion_muc(cn, ids, budget)
    return _dichotomic_muc(cn, ids, budget)


def _deletion_muc(cn: CN, ids: list[int], budget: Budget | None) -> frozenset[int]:
    keep = list(ids)
    for cid in ids:
        trial = [i for i in keep if i != cid]
        if _unsat(cn, trial, budget):
            keep = trial
    return frozenset(keep)


def _dichotomic_muc(cn: CN, ids: list[int], budget: Budget | None) -> frozenset[int]:
    # Invariant: kernel + working is unsatisfiable and every minimal core of
    # it contains all of kernel. The smallest i with kernel + working[:i]
    # unsatisfiable marks a transition constraint working[i-1] that belongs
    # to every core of that set; keep it, drop everything after it.
    kernel: list[int] = []
    working = list(ids)
    while True:
        if kernel and _unsat(cn, kernel, budget):
            return frozenset(kernel)
        lo, hi = 1, len(working)
        while lo < hi:
            mid = (lo + hi) // 2
            if _unsat(cn, kernel + working[:mid], budget):
                hi = mid
            else:
                lo = mid + 1
        kernel.append(working[lo - 1])
        working = working[: lo - 1]


def restrict_wcn(wcn: WCN, core) -> WCN:
    """The sub-network keeping only constraints whose id is in core.

    Ids are preserved, so fronts of the root network still index correctly.
    """
    keep = set(core)
    kept = [c for c in wcn.constraints if c.id in keep]
    return WCN(wcn.variables, kept, wcn.k, name=wcn.name)
