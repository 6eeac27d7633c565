"""
Single-commodity compact model: one copy of x, y and z for the whole fleet,
with the fleet size carried by the start and end rows. Route separation in
the PL variant is encoded through continuous route identifiers v_k (the id
of the first customer of k's route) and one binary u per incompatible pair.
"""
import logging

from core_model.instance_schema import Instance
from .linear_model import LinearModel, VariableMap, log_model_summary
from .time_bounds import arrival_lower, arrival_upper, in_arcs, out_arcs

logger = logging.getLogger(__name__)


def build_compact(instance: Instance) -> LinearModel:
    n, m = instance.node_count, instance.fleet_size
    vmap = VariableMap("compact", m)
    model = LinearModel(f"compact_{instance.name}", vmap)

    x = {}
    for i, j in instance.arcs:
        if (i, j) == (1, n):
            x[i, j] = model.add_variable(("x", i, j), f"x_{i}_{j}", "integer", 0.0, float(m))
        else:
            x[i, j] = model.add_variable(("x", i, j), f"x_{i}_{j}", "binary", 0.0, 1.0)
    y = {k: model.add_variable(("y", k), f"y_{k}", "binary", 0.0, 1.0, objective=instance.profit(k))
         for k in instance.customers}
    z = {a: model.add_variable(("z", *a), f"z_{a[0]}_{a[1]}", "continuous", 0.0) for a in instance.arcs}

    # 起点与终点
    model.add_constraint({x[1, j]: 1.0 for j in [*instance.customers, n]}, "==", m, "start", "start")
    model.add_constraint({x[i, n]: 1.0 for i in [1, *instance.customers]}, "==", m, "end", "end")

    for k in instance.customers:
        row = {x[a]: 1.0 for a in in_arcs(instance, k)}
        row[y[k]] = -1.0
        model.add_constraint(row, "==", 0.0, "connectivity", f"in_{k}")
        row = {x[a]: 1.0 for a in out_arcs(instance, k)}
        row[y[k]] = -1.0
        model.add_constraint(row, "==", 0.0, "connectivity", f"out_{k}")

    # 时间流
    for k in instance.customers:
        row = {z[a]: 1.0 for a in out_arcs(instance, k)}
        for a in in_arcs(instance, k):
            row[z[a]] = row.get(z[a], 0.0) - 1.0
        for a in out_arcs(instance, k):
            row[x[a]] = -(instance.time(*a) + instance.service(k))
        model.add_constraint(row, "==", 0.0, "flow", f"flow_{k}")

    for i, j in instance.arcs:
        model.add_constraint({z[i, j]: 1.0, x[i, j]: -arrival_upper(instance, j)}, "<=", 0.0,
                             "flow-upper", f"zub_{i}_{j}")
        if i != 1:
            model.add_constraint({z[i, j]: 1.0, x[i, j]: -arrival_lower(instance, i, j)}, ">=", 0.0,
                                 "flow-lower", f"zlb_{i}_{j}")
    for k in [*instance.customers, n]:
        model.add_constraint({z[1, k]: 1.0, x[1, k]: -instance.time(1, k)}, "==", 0.0, "flow-depot", f"zdep_{k}")

    for k in instance.mandatory:
        model.add_constraint({y[k]: 1.0}, "==", 1.0, "mandatory", f"mand_{k}")
    for i, j in instance.physical:
        model.add_constraint({x[i, j]: 1.0}, "==", 0.0, "physical", f"phys_{i}_{j}")

    if instance.variant == "PL":
        _add_route_identifiers(instance, model, x)

    log_model_summary(model, logger)
    return model


def _add_route_identifiers(instance: Instance, model: LinearModel, x: dict) -> None:
    n = instance.node_count
    big_m = float(n - 2)
    v = {k: model.add_variable(("v", k), f"v_{k}", "continuous", 0.0) for k in instance.customers}

    for k in instance.customers:
        model.add_constraint({v[k]: 1.0, x[1, k]: -float(k)}, ">=", 0.0, "route-id", f"vfirst_lb_{k}")
        model.add_constraint({v[k]: 1.0, x[1, k]: big_m - float(k)}, "<=", big_m, "route-id", f"vfirst_ub_{k}")

    for i, j in instance.arcs:
        if i == 1 or j == n:
            continue
        model.add_constraint({v[j]: 1.0, v[i]: -1.0, x[i, j]: -big_m}, ">=", -big_m, "route-id", f"vprop_lb_{i}_{j}")
        model.add_constraint({v[j]: 1.0, v[i]: -1.0, x[i, j]: big_m}, "<=", big_m, "route-id", f"vprop_ub_{i}_{j}")

    for i, j in instance.logical:
        u = model.add_variable(("u", i, j), f"u_{i}_{j}", "binary", 0.0, 1.0)
        model.add_constraint({v[i]: 1.0, v[j]: -1.0, u: -big_m}, ">=", 1.0 - big_m, "route-conflict", f"vsep_lb_{i}_{j}")
        model.add_constraint({v[i]: 1.0, v[j]: -1.0, u: -big_m}, "<=", -1.0, "route-conflict", f"vsep_ub_{i}_{j}")
