import itertools
from typing import List

import numpy as np
import pytest

from core_model.feasibility import build_solution, check_solution
from oracle_verify.maxflow_separation import separate_secs_maxflow
from separation.cut_log import render_cut_log
from separation.cuts import make_cut, select_cuts
from separation.enumeration import enumerate_elementary_cycles, enumerate_routes
from separation.logical_cuts import separate_logical_inequalities
from separation.route_cuts import separate_route_inequality, separate_set_inequality
from separation.separator import separate_point
from separation.subpath_cuts import extension_sets, subpath_cuts_for
from separation.subtour_cuts import separate_secs
from separation.support_graph import SeparationContractError, SupportGraph, build_support_graph
from formulations.mixed import build_mixed
from .sample_data.instances import random_base, small_corpus
from .sample_data.points import A, B, C, CHAIN_X, CYCLE_X, TRIANGLE_Y, make_context, point_from, routes_point


# --- support graph ---

def test_support_graph_reproduces_the_point(triangle):
    context, model = make_context(triangle)
    graph = build_support_graph(triangle, context.variable_map, point_from(model, CHAIN_X, TRIANGLE_Y))
    assert graph.arc_weights == pytest.approx(CHAIN_X)
    assert graph.node_weights == pytest.approx(TRIANGLE_Y)


def test_zero_point_and_tolerance_boundary(triangle):
    context, model = make_context(triangle)
    assert build_support_graph(triangle, context.variable_map, np.zeros(model.num_variables)).arc_weights == {}
    point = point_from(model, {(A, B): 1e-6, (B, C): 2e-6}, {})
    assert list(build_support_graph(triangle, context.variable_map, point, tol=1e-6).arc_weights) == [(B, C)]


def test_support_graph_needs_the_compact_model(triangle):
    model = build_mixed(triangle)
    with pytest.raises(SeparationContractError):
        build_support_graph(triangle, model.variable_map, np.zeros(model.num_variables))


# --- enumeration ---

def test_routes_of_small_support_graphs():
    assert enumerate_routes(SupportGraph(5, {(1, 5): 1.0})).routes == [[1, 5]]
    graph = SupportGraph(5, {(1, 2): 1.0, (2, 5): 1.0, (1, 3): 1.0, (3, 5): 1.0})
    assert sorted(enumerate_routes(graph).routes) == [[1, 2, 5], [1, 3, 5]]


def _naive_paths(graph: SupportGraph) -> List[List[int]]:
    n = graph.node_count
    found = []

    def walk(path):
        if path[-1] == n:
            found.append(list(path))
            return
        for j in graph.successors(path[-1]):
            if j not in path:
                walk(path + [j])

    walk([1])
    return sorted(found)


def _random_support(rng, n: int, density: float) -> SupportGraph:
    tails, heads = [1, *range(2, n)], [*range(2, n), n]
    arcs = {(i, j): float(rng.uniform(0.1, 1.0)) for i in tails for j in heads
            if i != j and rng.random() < density}
    return SupportGraph(n, arcs)


def test_route_enumeration_matches_naive_search():
    rng = np.random.default_rng(8)
    for _ in range(20):
        graph = _random_support(rng, 8, 0.35)
        assert sorted(enumerate_routes(graph).routes) == _naive_paths(graph)


def test_route_cap_sets_the_truncation_flag():
    graph = SupportGraph(6, {(i, j): 1.0 for i in range(1, 6) for j in range(2, 7) if i != j})
    capped = enumerate_routes(graph, max_routes=3)
    assert len(capped.routes) == 3 and capped.truncated


def _naive_cycles(graph: SupportGraph) -> List[List[int]]:
    customers = range(2, graph.node_count)
    found = []
    for size in range(2, len(customers) + 1):
        for subset in itertools.combinations(customers, size):
            first, rest = subset[0], subset[1:]
            for order in itertools.permutations(rest):
                cycle = [first, *order]
                if all((a, b) in graph.arc_weights for a, b in zip(cycle, cycle[1:] + cycle[:1])):
                    found.append(cycle)
    return sorted(found)


def test_cycles_of_small_support_graphs(triangle):
    assert enumerate_elementary_cycles(SupportGraph(5, {(2, 3): 1.0, (3, 4): 1.0})).cycles == []
    context, model = make_context(triangle)
    graph = build_support_graph(triangle, context.variable_map, point_from(model, CYCLE_X, TRIANGLE_Y))
    assert enumerate_elementary_cycles(graph).cycles == [[A, B, C]]


def test_cycle_enumeration_matches_exhaustive_search():
    rng = np.random.default_rng(9)
    for _ in range(15):
        graph = _random_support(rng, 9, 0.3)
        assert sorted(enumerate_elementary_cycles(graph).cycles) == _naive_cycles(graph)


# --- subtour cuts ---

def test_closed_cycle_gives_a_subtour_cut_violated_by_half(triangle):
    context, model = make_context(triangle)
    point = point_from(model, CYCLE_X, TRIANGLE_Y)
    graph = build_support_graph(triangle, context.variable_map, point)
    cuts = separate_secs(graph, enumerate_elementary_cycles(graph), context, point)
    assert len(cuts) == 1
    assert set(cuts[0].witness) == {A, B, C}
    assert cuts[0].violation == pytest.approx(0.5)
    # y_a stays on the right-hand side as the anchor
    assert model.variable_map.y(A) not in dict(cuts[0].coefficients)


def test_chain_with_chord_gives_no_subtour_cut(triangle):
    context, model = make_context(triangle)
    point = point_from(model, CHAIN_X, TRIANGLE_Y)
    graph = build_support_graph(triangle, context.variable_map, point)
    assert separate_secs(graph, enumerate_elementary_cycles(graph), context, point) == []
    assert separate_secs_maxflow(context, point) == []


def test_max_flow_finds_the_same_violated_set(triangle):
    context, model = make_context(triangle)
    cuts = separate_secs_maxflow(context, point_from(model, CYCLE_X, TRIANGLE_Y))
    assert [set(c.witness) for c in cuts] == [{A, B, C}]
    assert cuts[0].violation == pytest.approx(0.5)


def _flow_point(rng, model, customers: List[int], n: int) -> np.ndarray:
    """Conserving flow: weighted 1 -> n paths plus weighted customer cycles."""
    x, y = {}, {}

    def add(arcs, nodes, weight):
        for a in arcs:
            x[a] = x.get(a, 0.0) + weight
        for k in nodes:
            y[k] = y.get(k, 0.0) + weight

    for _ in range(int(rng.integers(1, 4))):
        size = int(rng.integers(0, min(4, len(customers)) + 1))
        nodes = [int(k) for k in rng.permutation(customers)[:size]]
        path = [1, *nodes, n]
        add(list(zip(path[:-1], path[1:])), nodes, float(rng.uniform(0.1, 1.0)))
    for _ in range(int(rng.integers(0, 3))):
        size = int(rng.integers(2, 5))
        nodes = [int(k) for k in rng.permutation(customers)[:size]]
        add(list(zip(nodes, nodes[1:] + nodes[:1])), nodes, float(rng.uniform(0.05, 0.8)))

    scale = max([1.0, *y.values()])
    return point_from(model, {a: v / scale for a, v in x.items()}, {k: v / scale for k, v in y.items()})


def test_cycle_separation_agrees_with_max_flow_on_seeded_points():
    rng = np.random.default_rng(31)
    violated = 0
    for index in range(100):
        inst = random_base(index, customers=int(rng.integers(4, 11)), fleet_size=2)
        context, model = make_context(inst)
        point = _flow_point(rng, model, list(inst.customers), inst.node_count)
        graph = build_support_graph(inst, context.variable_map, point)
        by_cycles = separate_secs(graph, enumerate_elementary_cycles(graph), context, point)
        by_flow = separate_secs_maxflow(context, point)
        assert bool(by_cycles) == bool(by_flow)
        violated += bool(by_flow)
    assert violated > 0


# --- route, set, subpath and logical cuts ---

def test_route_cut_on_an_integer_route(triangle):
    context, model = make_context(triangle)
    cut = separate_route_inequality([1, A, B, 5], context, routes_point(model, [[1, A, B, 5]]))
    assert cut.family == "RI"
    assert cut.violation == pytest.approx(1.0)
    assert cut.rhs == 0.0


def test_route_cut_is_skipped_when_not_violated(triangle):
    context, model = make_context(triangle)
    point = point_from(model, {(1, A): 0.5, (A, B): 0.5, (B, 5): 0.5}, {A: 0.75, B: 0.75})
    assert separate_route_inequality([1, A, B, 5], context, point) is None


def test_set_cut_when_the_bound_exceeds_t_max(triangle):
    context, model = make_context(triangle)
    route = [1, A, B, C, 5]
    cut = separate_set_inequality(route, context, routes_point(model, [route]))
    assert cut.family == "SI"
    assert cut.rhs == 1.0
    assert cut.violation == pytest.approx(1.0)


def test_set_cut_gate_falls_back_when_the_bound_fits(triangle):
    inst = triangle.evolve(t_max=12.5)
    context, model = make_context(inst)
    route = [1, A, B, C, 5]
    assert separate_set_inequality(route, context, routes_point(model, [route])) is None
    assert separate_set_inequality([1, A, 5], context, routes_point(model, [[1, A, 5]])) is None


def test_extension_sets_keep_only_feasible_neighbours(triangle):
    context, _ = make_context(triangle)
    assert extension_sets([A, B], context) == ([1], [5])


def test_left_subpath_cut_without_inflow_from_the_left_set(triangle):
    context, model = make_context(triangle)
    point = point_from(model, {(A, B): 1.0, (C, A): 1.0}, {A: 1.0, B: 1.0, C: 1.0})
    left, right = subpath_cuts_for([A, B], context, point)
    assert left.family == "SPI-L" and right.family == "SPI-R"
    # x_ab - x_1a <= 0 for a two-node subpath
    vmap = model.variable_map
    assert dict(left.coefficients) == {vmap.x(A, B): 1.0, vmap.x(1, A): -1.0}
    assert left.violation == pytest.approx(1.0)


def test_logical_cut_on_an_incompatible_pair(triangle):
    inst = triangle.evolve(logical=[(A, B)], variant="PL")
    context, model = make_context(inst)
    cuts = separate_logical_inequalities([1, A, B, 5], context, routes_point(model, [[1, A, B, 5]]), set())
    assert [c.family for c in cuts] == ["LI"]
    assert cuts[0].rhs == 0.0 and cuts[0].violation == pytest.approx(1.0)
    assert separate_logical_inequalities([1, A, C, 5], context, routes_point(model, [[1, A, C, 5]]), set()) == []
    plain, plain_model = make_context(inst.evolve(variant="P"))
    assert separate_logical_inequalities([1, A, B, 5], plain, routes_point(plain_model, [[1, A, B, 5]]), set()) == []


def test_separation_round_on_an_overlong_route(triangle):
    context, model = make_context(triangle)
    round_ = separate_point(context, routes_point(model, [[1, A, B, C, 5]]), limit=50)
    assert round_.routes_seen == 1
    assert round_.infeasible_routes == 1
    assert round_.family_counts()["SI"] == 1
    assert all(cut.violation > context.viol_tol for cut in round_.cuts)
    log = render_cut_log([round_.cuts], model.variable_map)
    assert log.startswith("# round 1:")


def test_disabled_families_are_not_separated(triangle):
    context, model = make_context(triangle, families=frozenset({"RI"}))
    round_ = separate_point(context, routes_point(model, [[1, A, B, C, 5]]), limit=50)
    assert set(round_.family_counts()) == {"RI"}


def test_select_cuts_deduplicates_and_ranks():
    point = [1.0, 1.0, 1.0]
    weak = make_cut("RI", {0: 1.0}, 0.5, [1], point)
    strong = make_cut("SEC", {0: 1.0, 1: 1.0}, 0.0, [2], point)
    again = make_cut("RI", {0: 1.0}, 0.5, [9], point)
    assert select_cuts([weak, strong, again], limit=5) == [strong, weak]
    assert select_cuts([weak, strong], limit=1) == [strong]


# --- validity against feasible integer solutions ---

def _feasible_routes(instance, max_customers: int = 4) -> List[List[int]]:
    n = instance.node_count
    routes = []
    padding = [[1, n]] * (instance.fleet_size - 1)
    relaxed = instance.evolve(mandatory=[])
    for size in range(1, max_customers + 1):
        for order in itertools.permutations(instance.customers, size):
            route = [1, *order, n]
            if check_solution(relaxed, build_solution(relaxed, [route, *padding])).is_feasible:
                routes.append(route)
    return routes


def _random_route_sets(rng, instance, count: int) -> List[List[List[int]]]:
    n = instance.node_count
    sets = []
    for _ in range(count):
        pool = [int(k) for k in rng.permutation(instance.customers)]
        routes = []
        for _ in range(instance.fleet_size):
            size = int(rng.integers(0, len(pool) + 1))
            routes.append([1, *pool[:size], n])
            pool = pool[size:]
        sets.append(routes)
    return sets


def _assert_cuts_keep_feasible_routes(corpus, rng):
    for _, inst in corpus:
        context, model = make_context(inst)
        cuts = []
        route_sets = _random_route_sets(rng, inst, 6)
        points = [routes_point(model, routes) for routes in route_sets]
        points += [(p + q) / 2.0 for p, q in zip(points[:-1], points[1:])]
        for point in points:
            cuts.extend(separate_point(context, point, limit=500).cuts)
        padding = [[1, inst.node_count]] * (inst.fleet_size - 1)
        for route in _feasible_routes(inst):
            feasible = routes_point(model, [route, *padding])
            for cut in cuts:
                lhs = sum(coef * feasible[idx] for idx, coef in cut.coefficients)
                assert lhs <= cut.rhs + 1e-9, (inst.name, cut.family, cut.witness, route)


def test_emitted_cuts_never_cut_off_feasible_routes():
    _assert_cuts_keep_feasible_routes(small_corpus(12, max_customers=5, seed=500), np.random.default_rng(77))


@pytest.mark.slow
def test_emitted_cuts_on_a_larger_corpus():
    _assert_cuts_keep_feasible_routes(small_corpus(120, max_customers=6, seed=9000), np.random.default_rng(78))
