import math

import networkx as nx
import pytest

from core_model.feasibility import check_solution
from oracle_verify.brute_force import OracleGuardError, brute_force_solve, brute_force_tsp_path
from oracle_verify.hpp_reduction import has_hamiltonian_path, hpp_reduce
from .sample_data.instances import line_instance, random_base, small_corpus


def test_both_enumerations_agree():
    for name, inst in small_corpus(24, max_customers=6, seed=77):
        by_subsets = brute_force_solve(inst, "subset-dp")
        by_routes = brute_force_solve(inst, "route-dfs")
        assert by_subsets.status == by_routes.status, name
        if by_subsets.status == "OPT":
            assert by_subsets.profit == pytest.approx(by_routes.profit), name
            assert check_solution(inst, by_subsets.solution).is_feasible, name
            assert check_solution(inst, by_routes.solution).is_feasible, name
            assert len(by_subsets.solution.routes) == inst.fleet_size


@pytest.mark.parametrize("method", ["subset-dp", "route-dfs"])
def test_line_optima(method):
    assert brute_force_solve(line_instance(), method).profit == 12
    # a 4.5 budget fits one customer per route
    assert brute_force_solve(line_instance(t_max=4.5), method).profit == 7
    assert brute_force_solve(line_instance(t_max=4.5, fleet_size=2), method).profit == 12


@pytest.mark.parametrize("method", ["subset-dp", "route-dfs"])
def test_mandatory_customers_that_do_not_fit_together(method):
    result = brute_force_solve(line_instance(t_max=4.5, mandatory=[2, 3]), method)
    assert result.status == "INFS"
    assert result.solution is None


def test_mandatory_customer_lowers_the_optimum():
    inst = line_instance(t_max=4.5, mandatory=[2])
    result = brute_force_solve(inst)
    assert result.profit == 5
    assert [r.nodes for r in result.solution.routes] == [[1, 2, 4]]


def test_oracle_guard():
    with pytest.raises(OracleGuardError):
        brute_force_solve(random_base(0, customers=11, fleet_size=1))
    with pytest.raises(OracleGuardError):
        brute_force_solve(random_base(0, customers=4, fleet_size=4))


def test_tsp_path_over_allowed_arcs():
    assert brute_force_tsp_path(line_instance(), [2, 3]) == 5
    assert brute_force_tsp_path(line_instance(physical=[(2, 3)]), [2, 3]) == 7
    assert math.isinf(brute_force_tsp_path(line_instance(physical=[(2, 3), (3, 2)]), [2, 3]))
    assert brute_force_tsp_path(line_instance(), []) == 3


# --- Hamiltonian path reduction ---

def test_path_graph_reduces_to_a_feasible_instance():
    inst = hpp_reduce(nx.path_graph(4))
    assert inst.t_max == 0.0 and inst.fleet_size == 1
    assert inst.mandatory == [2, 3, 4, 5]
    result = brute_force_solve(inst)
    assert result.status == "OPT"
    assert sorted(result.solution.routes[0].customers) == [2, 3, 4, 5]


def test_star_graph_reduces_to_an_infeasible_instance():
    assert brute_force_solve(hpp_reduce(nx.star_graph(3))).status == "INFS"


def test_reduction_agrees_with_hamiltonian_path_search():
    for seed in range(25):
        graph = nx.gnp_random_graph(5, 0.45, seed=seed)
        feasible = brute_force_solve(hpp_reduce(graph)).status == "OPT"
        assert feasible == has_hamiltonian_path(graph), seed


def test_empty_graph_is_rejected():
    with pytest.raises(ValueError):
        hpp_reduce(nx.Graph())


@pytest.mark.slow
def test_reduction_on_many_random_graphs():
    for seed in range(300):
        graph = nx.gnp_random_graph(3 + seed % 5, 0.3 + 0.1 * (seed % 4), seed=seed)
        feasible = brute_force_solve(hpp_reduce(graph)).status == "OPT"
        assert feasible == has_hamiltonian_path(graph), seed
