import numpy as np
import pytest

from core_model.feasibility import (
    MissingArcError,
    UnknownNodeError,
    build_solution,
    check_solution,
    route_duration,
    shortest_travel_times,
)
from core_model.instance_format import InstanceFormatError, parse_instance, write_instance
from core_model.solution_format import SolutionFormatError, parse_routes, parse_solution, write_solution
from core_model.solution_schema import Route, Solution
from .sample_data.instances import line_instance, matrix_instance, random_base


# --- route_duration ---

def test_empty_route_costs_direct_travel():
    inst = matrix_instance([[0, 1, 5], [1, 0, 4], [5, 4, 0]], [0, 1, 0], [0, 3, 0], t_max=20)
    assert route_duration(inst, [1, 3]) == 5


def test_single_customer_route_sums_travel_and_service():
    # t_1a = 2, s_a = 3, t_an = 4
    inst = matrix_instance([[0, 2, 9], [2, 0, 4], [9, 4, 0]], [0, 1, 0], [0, 3, 0], t_max=20)
    assert route_duration(inst, [1, 2, 3]) == 9


def test_duration_matches_reversed_accumulation():
    inst = random_base(3, customers=6, fleet_size=1).evolve(service_times=[0.0] + [0.5] * 6 + [0.0])
    route = [1, 5, 2, 7, 3, 8]
    expected = 0.0
    for i, j in reversed(list(zip(route[:-1], route[1:]))):
        expected += inst.time(i, j)
    for k in reversed(route):
        expected += inst.service(k)
    assert route_duration(inst, route) == pytest.approx(expected, rel=0, abs=1e-12)


def test_unknown_node_and_missing_arc_are_distinct_errors(line):
    with pytest.raises(UnknownNodeError):
        route_duration(line, [1, 9, 4])
    # (4, 1) leaves the destination, which is never an arc
    with pytest.raises(MissingArcError):
        route_duration(line, [1, 4, 1])


def test_physically_removed_arc_still_has_a_duration(line):
    inst = line.evolve(physical=[(2, 3)])
    assert route_duration(inst, [1, 2, 3, 4]) == pytest.approx(5.0)


# --- check_solution ---

def test_empty_routes_are_feasible_without_mandatory_customers():
    inst = line_instance(fleet_size=2)
    report = check_solution(inst, build_solution(inst, [[1, 4], [1, 4]]))
    assert report.is_feasible


def test_missing_mandatory_customer_is_reported():
    inst = line_instance(mandatory=[3])
    report = check_solution(inst, build_solution(inst, [[1, 2, 4]]))
    assert report.kinds() == ["mandatory-missing"]
    assert report.violations[0].node == 3


def test_logical_pair_only_counts_in_the_pl_variant():
    pl = line_instance(logical=[(2, 3)], variant="PL")
    p = pl.evolve(variant="P")
    assert check_solution(pl, build_solution(pl, [[1, 2, 3, 4]])).kinds() == ["logical-pair"]
    assert check_solution(p, build_solution(p, [[1, 2, 3, 4]])).is_feasible


def test_every_violation_kind_is_detected():
    inst = line_instance(fleet_size=3, t_max=4.0, mandatory=[2], physical=[(3, 2)],
                         logical=[(2, 3)], variant="PL")
    solution = Solution(routes=[Route(nodes=[1, 3, 2, 4]), Route(nodes=[1, 3, 4]), Route(nodes=[2, 4])])
    kinds = check_solution(inst, solution).kinds()
    assert kinds == ["bad-endpoint", "duration-exceeded", "logical-pair", "physical-arc", "revisit"]


def test_duration_tolerance_is_applied(line):
    inst = line.evolve(t_max=5.0 - 1e-7)
    assert check_solution(inst, build_solution(inst, [[1, 2, 3, 4]])).is_feasible
    exact = inst.evolve(exact_feasibility=True)
    assert check_solution(exact, build_solution(exact, [[1, 2, 3, 4]])).kinds() == ["duration-exceeded"]


def test_wrong_route_count_is_an_error(line):
    with pytest.raises(ValueError):
        check_solution(line, Solution(routes=[Route(nodes=[1, 4]), Route(nodes=[1, 4])]))


def test_build_solution_collects_profit_once_per_customer():
    inst = line_instance(fleet_size=2)
    solution = build_solution(inst, [[1, 2, 4], [1, 2, 3, 4]])
    assert solution.profit == 12.0
    assert solution.status == "infeasible"
    assert any("more than once" in reason for reason in solution.reasons)


def test_shortest_travel_times_detour_around_removed_arc(line):
    inst = line.evolve(physical=[(2, 3)])
    d = shortest_travel_times(inst)
    assert np.isinf(d[2, 3])
    assert d[1, 3] == pytest.approx(2.0)
    assert d[1, 4] == pytest.approx(3.0)


# --- instance files ---

MINIMAL = """n 3
m 1
tmax 10
0 0 0
1 0 5
2 0 0
"""


def test_minimal_file_has_one_customer():
    inst = parse_instance(MINIMAL)
    assert inst.customers == (2,)
    assert inst.variant == "P"
    assert inst.mandatory == [] and inst.physical == [] and inst.logical == []
    assert inst.service(2) == 0.0


def test_sections_are_parsed():
    text = MINIMAL.replace("tmax 10\n", "tmax 10\nsymmetric 1\n") + \
        "MANDATORY\n2\nPHYSICAL\n1 2\nVARIANT\nPL\n"
    inst = parse_instance(text, name="sections")
    assert inst.mandatory == [2]
    assert inst.physical == [(1, 2)]
    assert inst.variant == "PL"
    assert inst.symmetric_physical


@pytest.mark.parametrize("text, fragment", [
    ("m 1\ntmax 10\n0 0 0\n", "missing header line 'n"),
    ("n 3\nm 1\ntmax ten\n", "expected a number"),
    (MINIMAL.replace("1 0 5", "1 0"), "line 5"),
    (MINIMAL + "LOGICAL\n2 5\n", "invalid instance"),
    (MINIMAL + "VARIANT\nQ\n", "variant must be P or PL"),
    (MINIMAL + "PHYSICAL\n1\n", "expected a pair"),
    ("n 3\nn 3\nm 1\ntmax 10\n0 0 0\n1 0 5\n2 0 0\n", "duplicate header line 'n'"),
    (MINIMAL + "MANDATORY\n2\nMANDATORY\n2\n", "line 9: duplicate section MANDATORY"),
    (MINIMAL + "VARIANT\nPL\nPHYSICAL\n1 2\nVARIANT\nP\n", "duplicate section VARIANT"),
    (MINIMAL + "VARIANT\nPL\nP\n", "VARIANT takes a single value"),
    (MINIMAL.replace("0 0 0\n1 0 5", "0 0 0 2\n1 0 5"), "depot"),
    (MINIMAL.replace("2 0 0\n", "2 0 3\n"), "depot"),
])
def test_malformed_files_report_the_problem(text, fragment):
    with pytest.raises(InstanceFormatError, match=fragment):
        parse_instance(text)


def test_repeated_section_in_a_written_file_is_rejected():
    text = write_instance(line_instance(mandatory=[2])) + "\nMANDATORY\n3\n"
    with pytest.raises(InstanceFormatError, match="duplicate section MANDATORY"):
        parse_instance(text)


@pytest.mark.parametrize("changes", [
    dict(service_times=[1.0, 1.0, 1.0, 0.0]),
    dict(service_times=[0.0, 1.0, 1.0, 0.5]),
    dict(profits=[2.0, 5.0, 7.0, 0.0]),
    dict(profits=[0.0, 5.0, 7.0, 1.0]),
])
def test_depots_carry_no_profit_or_service(changes):
    with pytest.raises(ValueError, match="depot"):
        line_instance(**changes)


def test_asymmetric_physical_set_is_rejected_when_flagged():
    text = "n 4\nm 1\ntmax 10\nsymmetric 1\n0 0 0\n1 0 1\n2 0 1\n3 0 0\nPHYSICAL\n2 3\n"
    with pytest.raises(InstanceFormatError, match="symmetric"):
        parse_instance(text)


def test_write_then_parse_is_the_identity_on_a_seeded_corpus():
    for seed in range(50):
        inst = random_base(seed, customers=5 + seed % 4, fleet_size=1 + seed % 3, name=f"rt{seed}")
        inst = inst.evolve(mandatory=[2], physical=[(1, 3), (3, 4), (4, 3)], logical=[(2, 4)],
                           variant="PL", service_times=[0.0] + [0.25 * k for k in range(1, inst.node_count - 1)] + [0.0])
        again = parse_instance(write_instance(inst), name=inst.name)
        assert again.model_dump() == inst.model_dump()


# --- solution files ---

def test_solution_file_round_trip(line):
    solution = build_solution(line, [[1, 2, 3, 4]])
    parsed = parse_solution(write_solution(solution), line)
    assert [r.nodes for r in parsed.routes] == [[1, 2, 3, 4]]
    assert parsed.profit == solution.profit
    assert parsed.status == "feasible"


def test_solution_file_errors():
    with pytest.raises(SolutionFormatError):
        parse_routes("1 x 4\n")
    with pytest.raises(SolutionFormatError):
        parse_routes("1\n")
    assert parse_routes("profit 3.0\n# comment\n1 2 4\n") == [[1, 2, 4]]
