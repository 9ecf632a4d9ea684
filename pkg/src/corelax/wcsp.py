"""The wcsp text format, random instances, and the result line protocol.

A file is a header line `name n maxDomSize e k`, a line of n domain sizes,
then e constraint blocks: `arity v1 .. v_arity defaultCost t` followed by t
tuple lines `a1 .. a_arity cost`. Tokens are separated by arbitrary blanks,
blank lines are skipped, and costs at or above k clamp to k.
"""

from __future__ import annotations

import random
from itertools import product

from .model import WCN, DuplicateTuple, SoftConstraint, Variable, build_layers
from .search import Outcome, Status


class WcspError(ValueError):
    """Base class for wcsp format errors."""


class WcspSyntaxError(WcspError):
    """Malformed token or truncated input, reported with its position."""


class ArityMismatch(WcspError):
    """A tuple line does not hold exactly arity values plus a cost."""


class ValueOutOfDomain(WcspError):
    """A tuple value falls outside its variable's domain."""


class BadHeader(WcspError):
    """Inconsistent header, domain line, or constraint header."""


class BadParams(WcspError):
    """Random instance parameters out of range."""


class _Row:
    def __init__(self, lineno: int, tokens: list[str]):
        self.lineno = lineno
        self.tokens = tokens

    def ints(self, what: str) -> list[int]:
        out = []
        col = 1
        for tok in self.tokens:
            try:
                out.append(int(tok))
            except ValueError:
                raise WcspSyntaxError(
                    f"line {self.lineno}, field {col}: expected an integer in {what}, got {tok!r}"
                ) from None
            col += 1
        return out


def _rows(text: str) -> list[_Row]:
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if tokens:
            rows.append(_Row(lineno, tokens))
    return rows


def parse_wcsp(text: str) -> WCN:
    """Parse wcsp text into a weighted constraint network."""
    rows = _rows(text)
    if not rows:
        raise WcspSyntaxError("line 1: empty input")
    head = rows[0]
    if len(head.tokens) != 5:
        raise BadHeader(f"line {head.lineno}: expected 'name n maxDomSize e k', got {len(head.tokens)} fields")
    name = head.tokens[0]
    n, max_dom, e, k = _Row(head.lineno, head.tokens[1:]).ints("the header")
    if n < 1:
        raise BadHeader(f"line {head.lineno}: n must be positive, got {n}")
    if e < 0:
        raise BadHeader(f"line {head.lineno}: e must be nonnegative, got {e}")
    if k < 1:
        raise BadHeader(f"line {head.lineno}: k must be positive, got {k}")
    if len(rows) < 2:
        raise WcspSyntaxError("line 2: missing domain sizes")
    dom_row = rows[1]
    sizes = dom_row.ints("the domain line")
    if len(sizes) != n:
        raise BadHeader(f"line {dom_row.lineno}: expected {n} domain sizes, got {len(sizes)}")
    for ds in sizes:
        if ds < 1:
            raise BadHeader(f"line {dom_row.lineno}: domain sizes must be positive, got {ds}")
    if max(sizes) != max_dom:
        raise BadHeader(
            f"line {dom_row.lineno}: maxDomSize {max_dom} does not match the largest domain {max(sizes)}"
        )
    variables = [Variable(i, ds) for i, ds in enumerate(sizes)]

    at = 2
    constraints = []
    for cid in range(e):
        if at >= len(rows):
            raise WcspSyntaxError(f"unexpected end of input: constraint {cid} missing")
        head_row = rows[at]
        at += 1
        fields = head_row.ints("a constraint header")
        if not fields or fields[0] < 1:
            raise BadHeader(f"line {head_row.lineno}: constraint arity must be positive")
        arity = fields[0]
        if len(fields) != arity + 3:
            raise BadHeader(
                f"line {head_row.lineno}: expected arity + scope + defaultCost + tupleCount "
                f"({arity + 3} fields), got {len(fields)}"
            )
        scope = tuple(fields[1 : 1 + arity])
        default_cost, t_count = fields[1 + arity], fields[2 + arity]
        for x in scope:
            if not 0 <= x < n:
                raise BadHeader(f"line {head_row.lineno}: variable {x} not declared")
        if len(set(scope)) != arity:
            raise BadHeader(f"line {head_row.lineno}: repeated variable in scope {scope}")
        if default_cost < 0:
            raise BadHeader(f"line {head_row.lineno}: negative default cost {default_cost}")
        if t_count < 0:
            raise BadHeader(f"line {head_row.lineno}: negative tuple count {t_count}")
        raw: dict[tuple[int, ...], int] = {}
        for _ in range(t_count):
            if at >= len(rows):
                raise WcspSyntaxError(
                    f"unexpected end of input: constraint {cid} announced {t_count} tuples"
                )
            row = rows[at]
            at += 1
            if len(row.tokens) != arity + 1:
                raise ArityMismatch(
                    f"line {row.lineno}: expected {arity} values and a cost, got {len(row.tokens)} fields"
                )
            nums = row.ints("a tuple line")
            values, cost = tuple(nums[:arity]), nums[arity]
            for pos, val in enumerate(values):
                if not 0 <= val < sizes[scope[pos]]:
                    raise ValueOutOfDomain(
                        f"line {row.lineno}, field {pos + 1}: value {val} outside domain "
                        f"of variable {scope[pos]} (size {sizes[scope[pos]]})"
                    )
            if cost < 0:
                raise WcspSyntaxError(f"line {row.lineno}, field {arity + 1}: negative cost {cost}")
            if values in raw:
                raise DuplicateTuple(f"line {row.lineno}: tuple {values} listed twice")
            raw[values] = cost
        layers = build_layers(raw, default_cost, k)
        constraints.append(SoftConstraint(cid, scope, layers, min(default_cost, k)))
    if at < len(rows):
        raise WcspSyntaxError(f"line {rows[at].lineno}: trailing content after {e} constraints")
    return WCN(variables, constraints, k, name=name)


def serialize_wcsp(wcn: WCN) -> str:
    """Canonical wcsp text: explicit tuples in layer order, then tuple order."""
    if not wcn.variables:
        raise ValueError("cannot serialize a network without variables")
    sizes = [v.domain_size for v in wcn.variables]
    lines = [
        f"{wcn.name} {wcn.n} {max(sizes)} {wcn.e} {wcn.k}",
        " ".join(str(s) for s in sizes),
    ]
    for c in wcn.constraints:
        explicit = [(t, L.cost) for L in c.layers for t in L.tuples]
        scope = " ".join(str(x) for x in c.scope)
        lines.append(f"{c.arity} {scope} {c.default_cost} {len(explicit)}")
        for values, cost in explicit:
            lines.append(" ".join(str(v) for v in values) + f" {cost}")
    return "\n".join(lines) + "\n"


def random_instance(
    n: int,
    domain_size: int,
    e: int,
    arity: int,
    cost_menu: list[int],
    default_menu: list[int],
    k: int,
    seed: int,
    name: str | None = None,
) -> WCN:
    """Deterministic random network: same seed, same serialized bytes.

    Each scope is a sorted sample of `arity` distinct variables; different
    constraints may share a scope. Explicit tables stay small (at most 8
    tuples) so layer counts stay digestible for exhaustive searches.
    """
    if n < 1:
        raise BadParams(f"n must be positive, got {n}")
    if domain_size < 1:
        raise BadParams(f"domain size must be positive, got {domain_size}")
    if e < 0:
        raise BadParams(f"e must be nonnegative, got {e}")
    if not 1 <= arity <= n:
        raise BadParams(f"arity must be in 1..{n}, got {arity}")
    if k < 1:
        raise BadParams(f"k must be positive, got {k}")
    if not cost_menu or not default_menu:
        raise BadParams("cost menus must be nonempty")
    for menu in (cost_menu, default_menu):
        for cost in menu:
            if not 0 <= cost <= k:
                raise BadParams(f"menu cost {cost} outside [0, {k}]")
    rng = random.Random(seed)
    variables = [Variable(i, domain_size) for i in range(n)]
    space = domain_size**arity
    constraints = []
    for cid in range(e):
        scope = tuple(sorted(rng.sample(range(n), arity)))
        count = rng.randint(0, min(space, 8))
        chosen = rng.sample(sorted(product(range(domain_size), repeat=arity)), count)
        raw = {t: rng.choice(cost_menu) for t in sorted(chosen)}
        default_cost = rng.choice(default_menu)
        layers = build_layers(raw, default_cost, k)
        constraints.append(SoftConstraint(cid, scope, layers, min(default_cost, k)))
    return WCN(variables, constraints, k, name=name or f"rand-{seed}")


_STATUS_LINE = {
    Status.OPTIMUM: "s OPTIMUM FOUND",
    Status.UPPER_BOUND: "s UPPER BOUND",
    Status.INFEASIBLE: "s INFEASIBLE",
    Status.UNKNOWN: "s UNKNOWN",
}


def emit_result(outcome: Outcome) -> str:
    """Render an outcome as the line protocol (s/o/v then c stat lines).

    Wall time is deliberately left out: output must be byte-stable for
    identical inputs and flags.
    """
    lines = [_STATUS_LINE[outcome.status]]
    if outcome.solution is not None:
        lines.append(f"o {outcome.cost}")
        lines.append(("v " + " ".join(str(v) for v in outcome.solution)).rstrip())
    s = outcome.stats
    lines.append(f"c fronts={s.fronts_popped}")
    lines.append(f"c cns={s.cns_solved}")
    lines.append(f"c mucs={s.mucs_extracted}")
    lines.append(f"c nodes={s.nodes}")
    return "\n".join(lines) + "\n"
