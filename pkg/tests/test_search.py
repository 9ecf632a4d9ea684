"""Complete and greedy searches over the front lattice, plus the enumeration oracle."""

import pytest

from corelax import (
    Front,
    Outcome,
    RelaxExhausted,
    SearchTrace,
    Status,
    TooLarge,
    Variable,
    WCN,
    SoftConstraint,
    bottom_front,
    brute_force_optimum,
    complete_search,
    complete_search_no_muc,
    evaluate_cost,
    incomplete_search,
    lift_hard,
    relax,
    restrict_wcn,
    solve_mode,
)
from conftest import draw_instance

STRATEGIES = ("deletion", "dichotomic")


def contradictory_pair(k: int = 50) -> WCN:
    """x = y and x != y over two binary variables: every assignment costs k."""
    sizes = [2, 2]
    eq = lift_hard(0, (0, 1), {(0, 0), (1, 1)}, sizes, k)
    ne = lift_hard(1, (0, 1), {(0, 1), (1, 0)}, sizes, k)
    return WCN([Variable(i, 2) for i in range(2)], [eq, ne], k)


def always_top(k: int = 30) -> WCN:
    """One constraint whose every tuple costs k, so even bottom is forbidden."""
    c = SoftConstraint.from_tuples(0, (0,), {}, k, k)
    return WCN([Variable(0, 2)], [c], k)


def free_wcn() -> WCN:
    return WCN([Variable(0, 3), Variable(1, 2)], [], 10)


@pytest.mark.parametrize("strategy", STRATEGIES)
def test_complete_fig3_golden_walk(fig3, strategy):
    trace = SearchTrace()
    out = complete_search(fig3, strategy, trace=trace)
    assert out.status is Status.OPTIMUM
    assert out.cost == 10
    assert out.solution == (0, 1)
    assert trace.popped == [
        Front(0, (0, 0, 0)),
        Front(5, (0, 1, 0)),
        Front(10, (0, 0, 1)),
    ]
    assert [(kind, front, set(core)) for kind, front, core in trace.mucs] == [
        ("eq", Front(0, (0, 0, 0)), {1, 2}),
        ("eq", Front(5, (0, 1, 0)), {0, 1}),
    ]
    assert out.stats.fronts_popped == 3
    assert out.stats.mucs_extracted == 2


def test_complete_no_muc_fig3(fig3):
    trace = SearchTrace()
    out = complete_search_no_muc(fig3, trace=trace)
    assert out.status is Status.OPTIMUM
    assert out.cost == 10
    assert out.solution == (0, 1)
    assert trace.popped == [
        Front(0, (0, 0, 0)),
        Front(5, (0, 1, 0)),
        Front(10, (0, 0, 1)),
    ]
    assert trace.mucs == []
    assert out.stats.mucs_extracted == 0


def test_greedy_fig3_single_path(fig3):
    trace = SearchTrace()
    out = incomplete_search(fig3, trace=trace)
    assert out.status is Status.UPPER_BOUND
    assert out.cost == 10
    assert out.solution == (0, 1)
    outer = [(front, set(core)) for kind, front, core in trace.mucs if kind == "leq"]
    assert outer == [
        (Front(0, (0, 0, 0)), {1, 2}),
        (Front(5, (0, 1, 0)), {0, 1, 2}),
    ]
    # The final accepting network is the outer one, at the relaxed front.
    kind, front, solution, _ = trace.sats[-1]
    assert kind == "leq"
    assert solution == (0, 1)
    assert evaluate_cost(fig3, solution) == out.cost <= front.cost


def test_all_modes_on_unconstrained_network():
    wcn = free_wcn()
    for mode in ("complete", "complete-nomuc", "greedy"):
        out = solve_mode(wcn, mode)
        assert out.cost == 0
        assert out.solution == (0, 0)
        assert out.stats.fronts_popped <= 1


@pytest.mark.parametrize("mode", ["complete", "complete-nomuc", "greedy"])
def test_contradiction_is_infeasible(mode):
    out = solve_mode(contradictory_pair(), mode)
    assert out.status is Status.INFEASIBLE
    assert out.solution is None
    assert out.cost is None


@pytest.mark.parametrize("mode", ["complete", "complete-nomuc", "greedy"])
def test_forbidden_bottom_is_infeasible_without_popping(mode):
    out = solve_mode(always_top(), mode)
    assert out.status is Status.INFEASIBLE
    assert out.stats.fronts_popped == 0
    assert out.stats.cns_solved == 0


def test_node_budget_yields_unknown(fig3):
    out = complete_search(fig3, node_budget=1)
    assert out.status is Status.UNKNOWN
    assert out.solution is None
    assert out.stats.nodes >= 1


def test_time_budget_yields_unknown(fig3):
    out = incomplete_search(fig3, time_limit=0.0)
    assert out.status is Status.UNKNOWN


def test_relax_walks_to_cheapest_repair(fig3):
    sub = restrict_wcn(fig3, {1, 2})
    got = relax(sub, bottom_front(fig3))
    assert got == Front(5, (0, 1, 0))


def test_relax_returns_satisfied_front_unchanged(fig3):
    sub = restrict_wcn(fig3, {1, 2})
    front = Front(5, (0, 1, 0))
    assert relax(sub, front) == front


def test_relax_exhaustion(fig3):
    wcn = contradictory_pair()
    with pytest.raises(RelaxExhausted):
        relax(restrict_wcn(wcn, {0, 1}), bottom_front(wcn))


def test_oracle_fig3(fig3):
    out = brute_force_optimum(fig3)
    assert out.status is Status.OPTIMUM
    assert out.cost == 10
    assert out.solution == (0, 1)


def test_oracle_cap_and_infeasible(fig3):
    with pytest.raises(TooLarge):
        brute_force_optimum(fig3, cap=8)
    out = brute_force_optimum(contradictory_pair())
    assert out.status is Status.INFEASIBLE


def test_oracle_prefers_lex_first_witness():
    wcn = free_wcn()
    out = brute_force_optimum(wcn)
    assert out.solution == (0, 0)


def test_solve_mode_rejects_unknown_mode(fig3):
    with pytest.raises(ValueError):
        solve_mode(fig3, "exhaustive")


def test_modes_agree_with_oracle_on_small_corpus():
    for seed in range(12):
        wcn = draw_instance(seed)
        oracle = brute_force_optimum(wcn)
        with_muc = complete_search(wcn)
        without = complete_search_no_muc(wcn)
        assert with_muc.status is oracle.status
        assert without.status is oracle.status
        if oracle.status is Status.OPTIMUM:
            assert with_muc.cost == oracle.cost == without.cost
            assert evaluate_cost(wcn, with_muc.solution) == with_muc.cost


def test_greedy_bounds_the_optimum_on_small_corpus():
    for seed in range(12):
        wcn = draw_instance(seed)
        oracle = brute_force_optimum(wcn)
        greedy = incomplete_search(wcn)
        if greedy.status is Status.UPPER_BOUND:
            assert oracle.status is Status.OPTIMUM
            assert oracle.cost <= greedy.cost < wcn.k
            assert evaluate_cost(wcn, greedy.solution) == greedy.cost


def test_outcome_is_plain_data(fig3):
    out = complete_search(fig3)
    assert isinstance(out, Outcome)
    assert out.stats.wall_time >= 0.0
    assert out.stats.muc_sizes == [2, 2]
