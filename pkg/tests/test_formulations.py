import numpy as np
import pytest

from cpa_engine.highs_backend import HighsLpBackend
from formulations.compact import build_compact
from formulations.extraction import ExtractionError, extract_solution
from formulations.linear_model import ModelBuildError
from formulations.lp_writer import write_lp
from formulations.mixed import build_mixed
from oracle_verify.brute_force import brute_force_solve
from .sample_data.instances import generated_instance, line_instance, matrix_instance
from .sample_data.points import routes_point

FEATURE_GROUPS = {"mandatory", "physical", "logical", "route-id", "route-conflict"}


@pytest.fixture
def one_customer():
    return matrix_instance([[0, 2, 5], [2, 0, 2], [5, 2, 0]], profits=[0, 4, 0], services=[0, 1, 0], t_max=10)


def _kinds(model, prefix):
    return [v for v in model.variables if v.tag[0] == prefix]


def test_one_customer_models_have_seven_columns(one_customer):
    for model in (build_compact(one_customer), build_mixed(one_customer)):
        assert model.num_variables == 7
        assert len(_kinds(model, "x")) == 3
        assert len(_kinds(model, "z")) == 3
        assert len(_kinds(model, "y")) == 1


def test_direct_arc_may_carry_the_whole_fleet(one_customer):
    inst = one_customer.evolve(fleet_size=3)
    compact = build_compact(inst)
    direct = compact.variables[compact.variable_map.x(1, 3)]
    assert (direct.kind, direct.lower, direct.upper) == ("integer", 0.0, 3.0)
    mixed = build_mixed(inst)
    assert mixed.num_variables == 21
    per_route = mixed.variables[mixed.variable_map[("x", 1, 3, 2)]]
    assert per_route.upper == 3.0


def test_pl_compact_adds_route_ids_and_conflict_binaries(line):
    inst = line.evolve(logical=[(2, 3)], variant="PL")
    model = build_compact(inst)
    # 7 arcs: x and z each, 2 y, 2 v, 1 u
    assert model.num_variables == 19
    assert len(_kinds(model, "v")) == 2
    assert [v.kind for v in _kinds(model, "u")] == ["binary"]
    groups = model.group_counts()
    assert groups["route-conflict"] == 2
    assert groups["route-id"] == 4 + 2 * 2


def test_pl_mixed_adds_one_logical_row_per_customer_and_route(line):
    inst = line.evolve(logical=[(2, 3)], variant="PL", fleet_size=2)
    assert build_mixed(inst).group_counts()["logical"] == 4


def test_feature_free_instance_is_a_plain_top_model(line):
    for model in (build_compact(line), build_mixed(line)):
        assert not FEATURE_GROUPS & set(model.group_counts())


def test_feature_rows_follow_the_instance(line):
    inst = line.evolve(mandatory=[3], physical=[(2, 3), (3, 2)])
    groups = build_compact(inst).group_counts()
    assert groups["mandatory"] == 1
    assert groups["physical"] == 2
    assert build_mixed(inst.evolve(fleet_size=2)).group_counts()["physical"] == 2


def test_flow_bound_coefficients(line):
    model = build_compact(line)
    rows = {row.name: row for row in model.constraints}
    vmap = model.variable_map
    # T_max - s_3 - t_34 = 10 - 1 - 1
    assert rows["zub_2_3"].coefficients[vmap.x(2, 3)] == pytest.approx(-8.0)
    # t_12 + s_2 + t_23 = 1 + 1 + 1
    assert rows["zlb_2_3"].coefficients[vmap.x(2, 3)] == pytest.approx(-3.0)
    assert rows["zdep_3"].coefficients[vmap.x(1, 3)] == pytest.approx(-2.0)


def test_lp_relaxation_bounds_the_integer_optimum():
    checked = 0
    for seed, scheme in enumerate(["SM-CPI", "CM-DPI", "SM-DPI-FLI", "CM-CPI-NLI"]):
        inst = generated_instance(seed, customers=5, fleet_size=1 + seed % 2, scheme_id=scheme)
        oracle = brute_force_solve(inst)
        if oracle.status != "OPT":
            continue
        for model in (build_compact(inst), build_mixed(inst)):
            backend = HighsLpBackend()
            backend.load(model)
            lp = backend.solve()
            assert lp.status == "optimal"
            assert lp.objective >= oracle.profit - 1e-6
        checked += 1
    assert checked > 0


def test_lp_writer_lists_objective_rows_and_bounds(line):
    text = write_lp(build_compact(line))
    assert "Maximize" in text and "Subject To" in text and "Bounds" in text
    assert "x_1_4" in text
    assert text.rstrip().endswith("End")


# --- extraction ---

def test_whole_fleet_on_the_direct_arc_gives_empty_routes(line):
    inst = line.evolve(fleet_size=3)
    model = build_compact(inst)
    point = np.zeros(model.num_variables)
    point[model.variable_map.x(1, 4)] = 3.0
    solution = extract_solution(inst, model.variable_map, point)
    assert [r.nodes for r in solution.routes] == [[1, 4]] * 3
    assert solution.profit == 0.0


def test_two_single_customer_routes(line):
    inst = line.evolve(fleet_size=2)
    model = build_compact(inst)
    solution = extract_solution(inst, model.variable_map, routes_point(model, [[1, 2, 4], [1, 3, 4]]))
    assert sorted(r.nodes for r in solution.routes) == [[1, 2, 4], [1, 3, 4]]
    assert solution.profit == 12.0
    assert solution.status == "feasible"


def test_mixed_assignment_is_split_per_vehicle(line):
    inst = line.evolve(fleet_size=2)
    model = build_mixed(inst)
    vmap = model.variable_map
    point = np.zeros(model.num_variables)
    for tag in [("x", 1, 2, 1), ("x", 2, 3, 1), ("x", 3, 4, 1), ("y", 2, 1), ("y", 3, 1), ("x", 1, 4, 2)]:
        point[vmap[tag]] = 1.0
    solution = extract_solution(inst, vmap, point)
    assert [r.nodes for r in solution.routes] == [[1, 2, 3, 4], [1, 4]]


def test_subtour_assignment_is_rejected(line):
    model = build_compact(line)
    vmap = model.variable_map
    point = np.zeros(model.num_variables)
    for idx in (vmap.x(1, 4), vmap.x(2, 3), vmap.x(3, 2), vmap.y(2), vmap.y(3)):
        point[idx] = 1.0
    with pytest.raises(ExtractionError):
        extract_solution(line, vmap, point)


def test_unknown_column_in_a_row_is_rejected(line):
    model = build_compact(line)
    with pytest.raises(ModelBuildError):
        model.add_constraint({model.num_variables + 5: 1.0}, "<=", 1.0, "broken")
