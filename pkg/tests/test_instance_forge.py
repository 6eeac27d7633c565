import itertools
import math
from pathlib import Path

import numpy as np
import pytest

from core_model.feasibility import route_duration
from core_model.instance_schema import Instance
from instance_forge.arc_selection import (
    arc_units,
    cpi_objective,
    max_out_degree,
    protected_arcs,
    removal_count,
    select_arcs_cpi,
    select_arcs_dpi,
)
from instance_forge.clustering import ClusterAssignment, cluster_customers, kmeans
from instance_forge.generator import generate, summarize
from instance_forge.logical import logical_pair_target, partners_per_customer, select_logical
from instance_forge.mandatory import mandatory_count, select_mandatory
from instance_forge.manifest import parse_manifest
from instance_forge.repair import UnrepairableInstanceError, ensure_feasible
from instance_forge.schemes import GenScheme, GenerationError, all_schemes
from instance_forge.service_times import assign_service_times
from .sample_data.instances import SMALL_SCHEME_PARAMS, generated_instance, line_instance, random_base


def _points_instance(points, fleet_size=1, t_max=100.0, **changes) -> Instance:
    n = len(points)
    return Instance(name="points", node_count=n, fleet_size=fleet_size, t_max=t_max,
                    coordinates=[tuple(map(float, p)) for p in points],
                    profits=[0.0] + [1.0] * (n - 2) + [0.0], service_times=[0.0] * n, **changes)


def _collinear_customers(count: int) -> Instance:
    # depots off the line so that they do not affect customer distances
    return _points_instance([(0.0, -5.0)] + [(float(x), 0.0) for x in range(count)] + [(0.0, 5.0)])


# --- counts ---

@pytest.mark.parametrize("nodes, removed", [
    (32, 198), (21, 84), (33, 211), (66, 858), (64, 806), (100, 1980), (102, 2060),
])
def test_removal_count_per_set_shape(nodes, removed):
    inst = _points_instance([(float(i), 0.0) for i in range(nodes)])
    assert removal_count(inst, 0.2) == removed


@pytest.mark.parametrize("customers, expected", [(30, 2), (19, 1), (31, 2), (64, 3), (62, 3), (98, 5), (100, 5)])
def test_mandatory_count_per_set_shape(customers, expected):
    assert mandatory_count(customers, 0.05) == expected


def test_partner_count_rounds_up():
    assert partners_per_customer(30, 0.05) == 2
    assert partners_per_customer(19, 0.05) == 1
    assert partners_per_customer(1, 0.05) == 0


def test_set_two_shape_with_default_parameters():
    for seed in range(20):
        base = random_base(seed, customers=19, fleet_size=2)
        try:
            inst = generate(base, GenScheme.from_id("SM-DPI", seed=seed))
        except UnrepairableInstanceError:
            continue
        summary = summarize(inst, GenScheme.from_id("SM-DPI", seed=seed))
        assert (summary.nodes, summary.arcs, summary.mandatory, summary.physical) == (21, 420, 1, 84)
        assert summary.logical == 0
        return
    pytest.fail("no repairable base instance in 20 seeds")


# --- mandatory selection ---

def test_scattered_mandatory_picks_the_endpoints():
    inst = _collinear_customers(6)
    assert select_mandatory(inst, "SM", 1 / 3) == [2, 7]


def test_clustered_mandatory_picks_neighbours():
    inst = _collinear_customers(6)
    a, b = select_mandatory(inst, "CM", 1 / 3)
    assert b - a == 1


def test_mandatory_selection_is_restricted_to_candidates():
    inst = _collinear_customers(6)
    assert select_mandatory(inst, "SM", 1 / 3, candidates=[3, 4, 5]) == [3, 5]
    with pytest.raises(GenerationError):
        select_mandatory(inst, "SM", 1 / 3, candidates=[4])


def test_zero_mandatory_count_is_an_error():
    with pytest.raises(GenerationError, match="rounds to no mandatory"):
        select_mandatory(_collinear_customers(6), "SM", 0.05)


# --- clustering ---

def test_kmeans_separates_distant_groups():
    points = np.array([[0, 0], [0.5, 0], [0, 0.5], [10, 10], [10.5, 10], [10, 10.5]])
    labels, centroids, iterations = kmeans(points, 2, 100)
    assert len(set(labels[:3])) == 1 and len(set(labels[3:])) == 1
    assert labels[0] != labels[3]
    assert iterations >= 1
    assert np.allclose(sorted(centroids.tolist()), [[1 / 6, 1 / 6], [61 / 6, 61 / 6]])


def test_kmeans_on_identical_points_leaves_clusters_empty():
    labels, _, _ = kmeans(np.ones((5, 2)), 3, 50)
    assert set(labels.tolist()) == {0}


def test_cluster_customers_labels_every_customer():
    inst = random_base(2, customers=9, fleet_size=1)
    clusters = cluster_customers(inst, 3, 100)
    assert sorted(clusters.labels) == list(inst.customers)
    assert sum(len(clusters.members(c)) for c in range(clusters.count)) == 9


# --- arc selection ---

def _brute_force_removals(inst, protected, removal):
    units = [u for u in arc_units(inst) if not any(a in protected for a in u.arcs)]
    for size in range(len(units) + 1):
        for combo in itertools.combinations(units, size):
            if sum(u.weight for u in combo) == removal:
                yield [a for u in combo for a in u.arcs]


def test_dpi_matches_exhaustive_search_on_a_small_graph():
    inst = random_base(5, customers=4, fleet_size=1)
    protected = frozenset({(1, 6)})
    selection = select_arcs_dpi(inst, keep=8, protected=protected)
    best = min(max_out_degree(inst, removed) for removed in _brute_force_removals(inst, protected, 13))
    assert selection.kept_count == 8
    assert selection.alpha == best == 2
    assert max_out_degree(inst, selection.removed) == selection.alpha


def _two_clusters():
    labels = {2: 0, 3: 0, 4: 1, 5: 1}
    clusters = ClusterAssignment(labels=labels, centroids=[(0.0, 0.0), (1.0, 1.0)], iterations=1)
    conflict = np.array([[False, True], [True, False]])
    return clusters, conflict


@pytest.mark.parametrize("keep", [15, 8])
def test_cpi_keeps_the_fewest_conflicting_arcs(keep):
    inst = random_base(6, customers=4, fleet_size=1)
    clusters, conflict = _two_clusters()
    protected = frozenset({(1, 6)})
    selection = select_arcs_cpi(inst, clusters, conflict, keep, protected)
    removal = len(inst.arcs) - keep
    best = min(cpi_objective(inst, clusters, conflict, removed)[0]
               for removed in _brute_force_removals(inst, protected, removal))
    assert selection.violations == best
    assert selection.kept_count == keep
    assert (1, 6) not in selection.removed


@pytest.mark.parametrize("scheme_id", ["SM-CPI", "CM-CPI", "SM-DPI", "CM-DPI-FLI"])
def test_generated_arc_removal_is_symmetric_and_exact(scheme_id):
    inst = generated_instance(11, customers=8, fleet_size=2, scheme_id=scheme_id)
    assert len(inst.physical) == removal_count(inst, SMALL_SCHEME_PARAMS["removal_fraction"])
    customers = set(inst.customers)
    for i, j in inst.physical:
        if i in customers and j in customers:
            assert (j, i) in inst.physical_set
    assert not protected_arcs(inst, inst.mandatory) & inst.physical_set


# --- logical incompatibilities ---

def test_two_customers_form_the_only_pair():
    inst = _points_instance([(0, 0), (1, 0), (2, 0), (3, 0)])
    assert select_logical(inst, "FLI", 0.05) == [(2, 3)]
    assert select_logical(inst, "NLI", 0.05) == [(2, 3)]


def test_farthest_pairs_on_a_polygon_with_centre():
    ring = [(math.cos(2 * math.pi * k / 18), math.sin(2 * math.pi * k / 18)) for k in range(18)]
    inst = _points_instance([(0.0, -3.0)] + ring + [(0.0, 0.0)] + [(0.0, 3.0)])
    pairs = select_logical(inst, "FLI", 0.05)
    assert len(pairs) == 10
    # antipodes pair up, the centre joins one ring vertex
    assert all((k, k + 9) in pairs for k in range(2, 11))
    assert sum(1 for pair in pairs if 20 in pair) == 1


def test_nearest_pairs_on_collinear_customers():
    assert select_logical(_collinear_customers(4), "NLI", 0.05) == [(2, 3), (3, 4), (4, 5)]


def test_target_takes_first_partners_in_customer_order():
    ring = [(math.cos(2 * math.pi * k / 18), math.sin(2 * math.pi * k / 18)) for k in range(18)]
    inst = _points_instance([(0.0, -3.0)] + ring + [(0.0, 0.0)] + [(0.0, 3.0)])
    assert select_logical(inst, "FLI", 0.05, target=4) == [(2, 11), (3, 12), (4, 13), (5, 14)]


def test_target_beyond_first_partners_uses_later_ranks():
    pairs = select_logical(_collinear_customers(4), "NLI", 0.05, target=5)
    assert len(pairs) == 5
    assert {(2, 3), (3, 4), (4, 5)} <= set(pairs)
    assert select_logical(_collinear_customers(4), "NLI", 0.05, target=50) == list(itertools.combinations(range(2, 6), 2))


def test_pair_target_only_for_known_shapes_at_default_fraction():
    assert logical_pair_target(21, 0.05) == 10
    assert logical_pair_target(66, 0.05) == 86
    assert logical_pair_target(64, 0.05) == 100
    assert logical_pair_target(21, 0.3) is None
    assert logical_pair_target(25, 0.05) is None


@pytest.mark.parametrize("nodes, pairs", [(32, 30), (21, 10), (33, 30), (66, 86), (64, 100), (100, 230), (102, 240)])
@pytest.mark.parametrize("method", ["FLI", "NLI"])
def test_logical_count_per_set_shape(nodes, pairs, method):
    base = random_base(nodes, customers=nodes - 2, fleet_size=2)
    chosen = select_logical(base, method, 0.05, target=logical_pair_target(nodes, 0.05))
    assert len(chosen) == pairs
    assert len(set(chosen)) == pairs
    assert all(i < j and i in base.customers and j in base.customers for i, j in chosen)


def test_generated_set_two_shape_has_ten_logical_pairs():
    for seed in range(20):
        base = random_base(seed, customers=19, fleet_size=2)
        scheme = GenScheme.from_id("SM-DPI-FLI", seed=seed)
        try:
            inst = generate(base, scheme)
        except UnrepairableInstanceError:
            continue
        summary = summarize(inst, scheme)
        assert (summary.nodes, summary.mandatory, summary.physical, summary.logical) == (21, 1, 84, 10)
        return
    pytest.fail("no repairable base instance in 20 seeds")


# --- service times ---

def test_service_budget_and_stretched_time_limit():
    inst = random_base(1, customers=5, fleet_size=2).evolve(t_max=10.0)
    services, t_max = assign_service_times(inst, np.random.default_rng([7, 1]))
    assert sum(services) == pytest.approx(10.0)
    assert services[0] == services[-1] == 0.0
    assert all(s >= 0 for s in services)
    assert t_max == 15.0


# --- repair ---

def test_repair_restores_depot_arcs_of_mandatory_customers():
    inst = line_instance(mandatory=[2], physical=[(1, 2), (2, 4), (2, 3), (3, 2)])
    repaired, report = ensure_feasible(inst)
    assert report.changed and report.repairable
    assert sorted(report.restored_arcs) == [(1, 2), (2, 4)]
    assert repaired.physical == [(2, 3), (3, 2)]
    assert route_duration(repaired, [1, 2, 4]) <= repaired.t_max


def test_direct_route_arcs_have_no_reverse_to_restore():
    # arcs into the source or out of the destination are not arcs of the graph
    for arc in [(2, 1), (4, 2)]:
        with pytest.raises(ValueError, match="not arcs of the graph"):
            line_instance(mandatory=[2], physical=[arc])
    inst = line_instance(mandatory=[2], physical=[(1, 2), (2, 4)])
    repaired, report = ensure_feasible(inst)
    assert len(inst.physical) - len(repaired.physical) == len(report.restored_arcs) == 2


def test_repair_leaves_reachable_instances_alone():
    inst = line_instance(mandatory=[3])
    repaired, report = ensure_feasible(inst)
    assert not report.changed
    assert repaired is inst


def test_repair_flags_customers_beyond_the_time_limit():
    _, report = ensure_feasible(line_instance(t_max=3.5, mandatory=[2]))
    assert report.unreachable_mandatory == [2]
    assert not report.repairable


def test_repair_warns_about_too_many_conflicting_mandatory_customers():
    inst = line_instance(mandatory=[2, 3], logical=[(2, 3)], variant="PL")
    _, report = ensure_feasible(inst)
    assert len(report.warnings) == 1


def test_generated_instances_admit_direct_mandatory_routes():
    for seed in range(30):
        scheme = all_schemes(seed=seed, **SMALL_SCHEME_PARAMS)[seed % 12]
        try:
            inst = generate(random_base(seed, customers=7, fleet_size=2), scheme)
        except UnrepairableInstanceError:
            continue
        for k in inst.mandatory:
            assert inst.is_allowed(1, k) and inst.is_allowed(k, inst.node_count)
            assert route_duration(inst, [1, k, inst.node_count]) <= inst.t_max + 1e-6


# --- generate ---

def test_generation_is_deterministic():
    first = generated_instance(3, customers=8, fleet_size=2, scheme_id="CM-CPI-NLI")
    second = generated_instance(3, customers=8, fleet_size=2, scheme_id="CM-CPI-NLI")
    assert first.model_dump() == second.model_dump()
    assert first.name.endswith("_CM-CPI-NLI_s3")
    assert first.variant == "PL"


def test_seed_changes_the_service_times():
    for base_seed in range(20):
        base = random_base(base_seed, customers=8, fleet_size=2)
        try:
            a = generate(base, GenScheme.from_id("SM-DPI", seed=1, **SMALL_SCHEME_PARAMS))
            b = generate(base, GenScheme.from_id("SM-DPI", seed=2, **SMALL_SCHEME_PARAMS))
        except UnrepairableInstanceError:
            continue
        assert a.service_times != b.service_times
        assert a.mandatory == b.mandatory
        assert a.physical == b.physical
        return
    pytest.fail("no repairable base instance in 20 seeds")


# --- schemes and manifests ---

def test_scheme_ids():
    scheme = GenScheme.from_id("cm-dpi-nli", seed=5)
    assert scheme.scheme_id == "CM-DPI-NLI"
    assert scheme.variant == "PL"
    assert GenScheme.from_id("SM-CPI").variant == "P"
    ids = [s.scheme_id for s in all_schemes()]
    assert len(ids) == len(set(ids)) == 12


@pytest.mark.parametrize("scheme_id", ["SM", "SM-ABC", "XX-CPI", "SM-CPI-FLI-X"])
def test_unknown_scheme_ids(scheme_id):
    with pytest.raises(GenerationError):
        GenScheme.from_id(scheme_id)


def test_manifest_lines_become_jobs():
    text = "# base scheme seed out\nset1.txt sm-cpi 3 out/a.txt\n\n/abs/b.txt CM-DPI-FLI 0 b.txt  # last\n"
    jobs = parse_manifest(text, base_dir=Path("/data"))
    assert [(j.base_file, j.scheme_id, j.seed, j.out_file) for j in jobs] == [
        (Path("/data/set1.txt"), "SM-CPI", 3, Path("/data/out/a.txt")),
        (Path("/abs/b.txt"), "CM-DPI-FLI", 0, Path("/data/b.txt")),
    ]


@pytest.mark.parametrize("text, message", [
    ("a.txt SM-CPI 1\n", "line 1"),
    ("a.txt SM-CPI x b.txt\n", "not an integer"),
    ("a.txt SM-XYZ 1 b.txt\n", "unknown scheme"),
])
def test_bad_manifest_lines(text, message):
    with pytest.raises(GenerationError, match=message):
        parse_manifest(text)
