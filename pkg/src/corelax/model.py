"""Weighted constraint network model.

A network holds variables with finite integer domains and soft table
constraints. Each constraint maps tuples over its scope to integer costs in
[0, k], where k is the network-wide "forbidden" cost. Tuples of equal cost are
grouped into layers sorted by strictly increasing cost; tuples not listed
explicitly fall into the single default layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product


class ModelError(ValueError):
    """Base class for model construction errors."""


class DuplicateTuple(ModelError):
    """The same tuple was given more than once for one constraint."""


class EmptyRelation(ModelError):
    """A hard constraint was lifted from an empty allowed set."""


class BadWeight(ModelError):
    """A violable constraint weight must satisfy 0 < weight < k."""


def bounded_add(a: int, b: int, k: int) -> int:
    """Add two costs, saturating at the forbidden cost k."""
    return min(k, a + b)


@dataclass(frozen=True)
class Variable:
    id: int
    domain_size: int


@dataclass(frozen=True)
class Layer:
    """A group of equally priced tuples of one constraint.

    The default layer prices every tuple not listed explicitly by the
    constraint; its own tuple list is empty.
    """

    index: int
    cost: int
    tuples: tuple[tuple[int, ...], ...]
    is_default: bool = False


def build_layers(
    tuples: dict[tuple[int, ...], int] | list[tuple[tuple[int, ...], int]],
    default_cost: int,
    k: int,
) -> list[Layer]:
    """Group explicit tuples by cost into layers of strictly increasing cost.

    Costs above k are clamped to k. Tuples priced exactly at the (clamped)
    default cost are absorbed into the default layer. Exactly one default
    layer is always present, even when its cost is k.
    """
    if k < 1:
        raise ModelError(f"k must be positive, got {k}")
    items = list(tuples.items()) if isinstance(tuples, dict) else list(tuples)
    seen: set[tuple[int, ...]] = set()
    if default_cost < 0:
        raise ModelError(f"negative default cost {default_cost}")
    default_cost = min(default_cost, k)
    groups: dict[int, list[tuple[int, ...]]] = {}
    for values, cost in items:
        values = tuple(values)
        if values in seen:
            raise DuplicateTuple(f"tuple {values} listed twice")
        seen.add(values)
        if cost < 0:
            raise ModelError(f"negative cost {cost} for tuple {values}")
        cost = min(cost, k)
        if cost == default_cost:
            continue
        groups.setdefault(cost, []).append(values)
    costs = sorted(groups)
    ordered: list[tuple[int, tuple[tuple[int, ...], ...], bool]] = [
        (c, tuple(sorted(groups[c])), False) for c in costs
    ]
    # The default layer takes its place in the same strictly increasing order.
    at = 0
    while at < len(ordered) and ordered[at][0] < default_cost:
        at += 1
    ordered.insert(at, (default_cost, (), True))
    return [
        Layer(index=i, cost=c, tuples=tups, is_default=d)
        for i, (c, tups, d) in enumerate(ordered)
    ]


class SoftConstraint:
    """A soft table constraint: scope plus cost layers.

    Layers must have contiguous indexes from 0 and strictly increasing costs,
    with exactly one default layer.
    """

    def __init__(
        self,
        cid: int,
        scope: tuple[int, ...] | list[int],
        layers: list[Layer] | tuple[Layer, ...],
        default_cost: int,
    ):
        self.id = cid
        self.scope = tuple(scope)
        self.layers = tuple(layers)
        self.default_cost = default_cost
        if len(set(self.scope)) != len(self.scope):
            raise ModelError(f"constraint {cid}: repeated variable in scope {self.scope}")
        if not self.layers:
            raise ModelError(f"constraint {cid}: no layers")
        defaults = [L for L in self.layers if L.is_default]
        if len(defaults) != 1:
            raise ModelError(f"constraint {cid}: expected one default layer, got {len(defaults)}")
        if defaults[0].tuples:
            raise ModelError(f"constraint {cid}: default layer lists explicit tuples")
        if defaults[0].cost != default_cost:
            raise ModelError(f"constraint {cid}: default layer cost differs from default cost")
        for i, layer in enumerate(self.layers):
            if layer.index != i:
                raise ModelError(f"constraint {cid}: layer indexes not contiguous")
            if i and layer.cost <= self.layers[i - 1].cost:
                raise ModelError(f"constraint {cid}: layer costs not strictly increasing")
        self.default_index = defaults[0].index
        self._cost_by_tuple = {t: L.cost for L in self.layers for t in L.tuples}
        self.explicit_tuples = frozenset(self._cost_by_tuple)

    @classmethod
    def from_tuples(
        cls,
        cid: int,
        scope: tuple[int, ...] | list[int],
        tuples: dict[tuple[int, ...], int] | list[tuple[tuple[int, ...], int]],
        default_cost: int,
        k: int,
    ) -> "SoftConstraint":
        layers = build_layers(tuples, default_cost, k)
        return cls(cid, scope, layers, min(default_cost, k))

    @property
    def arity(self) -> int:
        return len(self.scope)

    @property
    def nb_layers(self) -> int:
        return len(self.layers)

    def cost_of(self, values: tuple[int, ...]) -> int:
        """Cost of one tuple over this constraint's scope."""
        return self._cost_by_tuple.get(values, self.default_cost)

    def __repr__(self) -> str:
        return f"SoftConstraint(id={self.id}, scope={self.scope}, layers={len(self.layers)})"


class WCN:
    """A weighted constraint network: variables, soft constraints, top cost k.

    Constraint ids of a freshly built network are dense 0..e-1; restricted
    views (subsets of constraints) keep the original ids, so fronts stay
    indexed by the root network's constraint ids.
    """

    def __init__(
        self,
        variables: list[Variable],
        constraints: list[SoftConstraint],
        k: int,
        name: str = "wcn",
    ):
        if k < 1:
            raise ModelError(f"k must be positive, got {k}")
        self.variables = list(variables)
        self.constraints = list(constraints)
        self.k = k
        self.name = name
        for i, v in enumerate(self.variables):
            if v.id != i:
                raise ModelError(f"variable ids must be dense, got {v.id} at position {i}")
            if v.domain_size < 1:
                raise ModelError(f"variable {v.id}: empty domain")
        ids = [c.id for c in self.constraints]
        if sorted(set(ids)) != ids:
            raise ModelError("constraint ids must be unique and sorted")
        for c in self.constraints:
            for x in c.scope:
                if not 0 <= x < len(self.variables):
                    raise ModelError(f"constraint {c.id}: unknown variable {x}")
            for layer in c.layers:
                if layer.cost > k:
                    raise ModelError(f"constraint {c.id}: layer cost {layer.cost} above k")
                for t in layer.tuples:
                    if len(t) != c.arity:
                        raise ModelError(f"constraint {c.id}: tuple {t} has wrong arity")
                    for pos, val in enumerate(t):
                        if not 0 <= val < self.variables[c.scope[pos]].domain_size:
                            raise ModelError(
                                f"constraint {c.id}: value {val} outside domain of "
                                f"variable {c.scope[pos]}"
                            )
        self.by_id = {c.id: c for c in self.constraints}

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def e(self) -> int:
        return len(self.constraints)

    def __repr__(self) -> str:
        return f"WCN(name={self.name!r}, n={self.n}, e={self.e}, k={self.k})"


def evaluate_cost(wcn: WCN, values: tuple[int, ...] | list[int]) -> int:
    """Bounded sum of per-constraint costs of a complete instantiation."""
    total = 0
    k = wcn.k
    for c in wcn.constraints:
        total += c.cost_of(tuple(values[x] for x in c.scope))
        if total >= k:
            return k
    return total


def lift_hard(
    cid: int,
    scope: tuple[int, ...] | list[int],
    allowed: set[tuple[int, ...]] | frozenset[tuple[int, ...]],
    domain_sizes: list[int],
    k: int,
) -> SoftConstraint:
    """Encode a hard constraint: allowed tuples cost 0, everything else k.

    Stores whichever explicit table is smaller: the allowed tuples at cost 0
    with default k, or the forbidden complement at cost k with default 0.
    """
    scope = tuple(scope)
    if not allowed:
        raise EmptyRelation(f"constraint {cid}: empty allowed relation")
    sizes = [domain_sizes[x] for x in scope]
    space = 1
    for s in sizes:
        space *= s
    for t in allowed:
        if len(t) != len(scope) or any(not 0 <= v < sizes[i] for i, v in enumerate(t)):
            raise ModelError(f"constraint {cid}: tuple {t} outside the scope's domains")
    if len(allowed) <= space - len(allowed):
        table = {t: 0 for t in allowed}
        default = k
    else:
        table = {t: k for t in product(*(range(s) for s in sizes)) if t not in allowed}
        default = 0
    return SoftConstraint.from_tuples(cid, scope, table, default, k)


def lift_violable(
    cid: int,
    scope: tuple[int, ...] | list[int],
    satisfied: set[tuple[int, ...]] | frozenset[tuple[int, ...]],
    weight: int,
    domain_sizes: list[int],
    k: int,
) -> SoftConstraint:
    """Encode a violable constraint: satisfying tuples cost 0, others weight.

    An empty satisfying set is allowed and yields a constraint that always
    costs its weight.
    """
    scope = tuple(scope)
    if not 0 < weight < k:
        raise BadWeight(f"constraint {cid}: weight {weight} not in (0, {k})")
    sizes = [domain_sizes[x] for x in scope]
    for t in satisfied:
        if len(t) != len(scope) or any(not 0 <= v < sizes[i] for i, v in enumerate(t)):
            raise ModelError(f"constraint {cid}: tuple {t} outside the scope's domains")
    return SoftConstraint.from_tuples(cid, scope, {t: 0 for t in satisfied}, weight, k)
