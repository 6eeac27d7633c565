import logging
from typing import List, Optional

import numpy as np

import config
from core_model.feasibility import duration_limit, shortest_travel_times
from core_model.instance_schema import Instance
from formulations.linear_model import Constraint, VariableMap
from .dto import Fixings

logger = logging.getLogger(__name__)


def preprocess(instance: Instance, closure: Optional[np.ndarray] = None, eps: float = config.EPS_FEAS) -> Fixings:
    """
    Customers no route can reach and back within T_max, and arcs no route
    can use: arcs whose cheapest enclosing route is too long, plus both
    directions of every logically incompatible pair in PL.
    """
    d = shortest_travel_times(instance) if closure is None else closure
    n = instance.node_count
    limit = duration_limit(instance, eps)

    unreachable = [k for k in instance.customers if d[1, k] + instance.service(k) + d[k, n] > limit]
    dead = set(unreachable)
    removed = []
    for i, j in instance.allowed_arcs:
        if i in dead or j in dead:
            removed.append((i, j))
            continue
        s_i = instance.service(i) if i != 1 else 0.0
        s_j = instance.service(j) if j != n else 0.0
        if d[1, i] + s_i + instance.time(i, j) + s_j + d[j, n] > limit:
            removed.append((i, j))
        elif instance.incompatible(i, j):
            removed.append((i, j))

    fixings = Fixings(
        unreachable_nodes=unreachable,
        removed_arcs=removed,
        unreachable_mandatory=[k for k in instance.mandatory if k in dead],
    )
    logger.info(f"Preprocessing {instance.name}: {len(unreachable)} unreachable customers, "
                f"{len(removed)} arcs fixed to zero")
    if fixings.proves_infeasible:
        logger.info(f"Mandatory customers {fixings.unreachable_mandatory} cannot be reached: instance is infeasible")
    return fixings


def fixing_rows(fixings: Fixings, variable_map: VariableMap) -> List[Constraint]:
    """y_k <= 0 and x_ij <= 0 rows for either formulation."""
    rows = []
    vehicles = [()] if variable_map.formulation == "compact" else [(r,) for r in range(1, variable_map.fleet_size + 1)]
    for k in fixings.unreachable_nodes:
        for suffix in vehicles:
            idx = variable_map.get(("y", k, *suffix))
            if idx is not None:
                rows.append(Constraint({idx: 1.0}, "<=", 0.0, "fixing", f"fix_y_{k}"))
    for i, j in fixings.removed_arcs:
        for suffix in vehicles:
            idx = variable_map.get(("x", i, j, *suffix))
            if idx is not None:
                rows.append(Constraint({idx: 1.0}, "<=", 0.0, "fixing", f"fix_x_{i}_{j}"))
    return rows
