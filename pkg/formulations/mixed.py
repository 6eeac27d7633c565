"""
Route-indexed model: x, y and z carry a vehicle index r = 1..m. Kept as the
reference formulation the compact model is benchmarked against.
"""
import logging

from core_model.instance_schema import Instance
from .linear_model import LinearModel, VariableMap, log_model_summary
from .time_bounds import arrival_lower, arrival_upper, in_arcs, out_arcs

logger = logging.getLogger(__name__)


def build_mixed(instance: Instance) -> LinearModel:
    n, m = instance.node_count, instance.fleet_size
    vehicles = range(1, m + 1)
    vmap = VariableMap("mixed", m)
    model = LinearModel(f"mixed_{instance.name}", vmap)

    x, y, z = {}, {}, {}
    for r in vehicles:
        for i, j in instance.arcs:
            if (i, j) == (1, n):
                x[i, j, r] = model.add_variable(("x", i, j, r), f"x_{i}_{j}_{r}", "integer", 0.0, float(m))
            else:
                x[i, j, r] = model.add_variable(("x", i, j, r), f"x_{i}_{j}_{r}", "binary", 0.0, 1.0)
        for k in instance.customers:
            y[k, r] = model.add_variable(("y", k, r), f"y_{k}_{r}", "binary", 0.0, 1.0, objective=instance.profit(k))
        for i, j in instance.arcs:
            z[i, j, r] = model.add_variable(("z", i, j, r), f"z_{i}_{j}_{r}", "continuous", 0.0)

    model.add_constraint({x[1, j, r]: 1.0 for r in vehicles for j in [*instance.customers, n]},
                         "==", m, "start", "start")
    model.add_constraint({x[i, n, r]: 1.0 for r in vehicles for i in [1, *instance.customers]},
                         "==", m, "end", "end")

    for r in vehicles:
        for k in instance.customers:
            row = {x[(*a, r)]: 1.0 for a in in_arcs(instance, k)}
            row[y[k, r]] = -1.0
            model.add_constraint(row, "==", 0.0, "connectivity", f"in_{k}_{r}")
            row = {x[(*a, r)]: 1.0 for a in out_arcs(instance, k)}
            row[y[k, r]] = -1.0
            model.add_constraint(row, "==", 0.0, "connectivity", f"out_{k}_{r}")

    for k in instance.customers:
        model.add_constraint({y[k, r]: 1.0 for r in vehicles}, "<=", 1.0, "single-visit", f"once_{k}")

    for r in vehicles:
        for k in instance.customers:
            row = {z[(*a, r)]: 1.0 for a in out_arcs(instance, k)}
            for a in in_arcs(instance, k):
                row[z[(*a, r)]] = -1.0
            for a in out_arcs(instance, k):
                row[x[(*a, r)]] = -(instance.time(*a) + instance.service(k))
            model.add_constraint(row, "==", 0.0, "flow", f"flow_{k}_{r}")
        for i, j in instance.arcs:
            model.add_constraint({z[i, j, r]: 1.0, x[i, j, r]: -arrival_upper(instance, j)}, "<=", 0.0,
                                 "flow-upper", f"zub_{i}_{j}_{r}")
            if i != 1:
                model.add_constraint({z[i, j, r]: 1.0, x[i, j, r]: -arrival_lower(instance, i, j)}, ">=", 0.0,
                                     "flow-lower", f"zlb_{i}_{j}_{r}")
        for k in [*instance.customers, n]:
            model.add_constraint({z[1, k, r]: 1.0, x[1, k, r]: -instance.time(1, k)}, "==", 0.0,
                                 "flow-depot", f"zdep_{k}_{r}")

    for k in instance.mandatory:
        model.add_constraint({y[k, r]: 1.0 for r in vehicles}, "==", 1.0, "mandatory", f"mand_{k}")
    for i, j in instance.physical:
        model.add_constraint({x[i, j, r]: 1.0 for r in vehicles}, "==", 0.0, "physical", f"phys_{i}_{j}")

    if instance.variant == "PL":
        partners = instance.logical_partners
        for r in vehicles:
            for k in instance.customers:
                if not partners[k]:
                    continue
                size = float(len(partners[k]))
                row = {y[i, r]: 1.0 for i in partners[k]}
                row[y[k, r]] = size
                model.add_constraint(row, "<=", size, "logical", f"logic_{k}_{r}")

    log_model_summary(model, logger)
    return model
