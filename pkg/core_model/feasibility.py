import logging
from typing import Iterable, List, Sequence, Union

import numpy as np

import config
from .instance_schema import Instance
from .solution_schema import (
    BadEndpoint,
    DurationExceeded,
    FeasibilityReport,
    LogicalPair,
    MandatoryMissing,
    PhysicalArc,
    Revisit,
    Route,
    Solution,
)

logger = logging.getLogger(__name__)


class UnknownNodeError(ValueError):
    """A route references a node id outside 1..n."""


class MissingArcError(ValueError):
    """A route uses a pair of consecutive nodes that is not an arc of A-hat."""


def duration_limit(instance: Instance, eps: float = config.EPS_FEAS) -> float:
    return instance.t_max if instance.exact_feasibility else instance.t_max + eps


def route_duration(instance: Instance, route: Union[Route, Sequence[int]]) -> float:
    """
    delta_r: travel time along the route plus the service time of every
    node on it (source and destination contribute their own, normally 0).
    """
    nodes = route.nodes if isinstance(route, Route) else list(route)
    for k in nodes:
        if not 1 <= k <= instance.node_count:
            raise UnknownNodeError(f"node {k} is not in 1..{instance.node_count}")
    total = sum(instance.service(k) for k in nodes)
    for i, j in zip(nodes[:-1], nodes[1:]):
        if not instance.is_arc(i, j):
            raise MissingArcError(f"({i},{j}) is not an arc of the instance graph")
        total += instance.time(i, j)
    return total


def shortest_travel_times(instance: Instance) -> np.ndarray:
    """
    All-pairs shortest travel times over the allowed arcs (A-hat minus I),
    indexed by node id. Service times of intermediate nodes are ignored, so
    d[i, j] is a lower bound on the time from leaving i to reaching j.
    Unreachable pairs are +inf.
    """
    n = instance.node_count
    dist = np.full((n + 1, n + 1), np.inf)
    for i, j in instance.allowed_arcs:
        dist[i, j] = instance.time(i, j)
    for k in range(1, n + 1):
        dist[k, k] = 0.0
    for k in range(1, n + 1):
        dist = np.minimum(dist, dist[:, k, None] + dist[None, k, :])
    return dist


def _route_structure_violations(instance: Instance, index: int, nodes: List[int]):
    n = instance.node_count
    if any(not 1 <= k <= n for k in nodes):
        return [BadEndpoint(route_index=index, detail=f"unknown node ids in {nodes}")]
    found = []
    if nodes[0] != 1 or nodes[-1] != n:
        found.append(BadEndpoint(route_index=index, detail=f"must start at 1 and end at {n}, got {nodes[0]}..{nodes[-1]}"))
    inner = nodes[1:-1]
    if 1 in inner or n in inner:
        found.append(BadEndpoint(route_index=index, detail="source or destination visited inside the route"))
    return found


def check_solution(instance: Instance, solution: Solution, eps: float = config.EPS_FEAS) -> FeasibilityReport:
    """
    Checks every constraint of TOP-ST-MIN and returns all violations found.
    Violations are data; only a route count different from m is an error.
    """
    if len(solution.routes) != instance.fleet_size:
        raise ValueError(f"solution has {len(solution.routes)} routes, instance requires {instance.fleet_size}")

    report = FeasibilityReport()
    limit = duration_limit(instance, eps)
    seen: dict[int, int] = {}
    revisited: set[int] = set()

    for index, route in enumerate(solution.routes):
        nodes = list(route.nodes)
        structural = _route_structure_violations(instance, index, nodes)
        report.violations.extend(structural)
        if structural:
            continue

        customers = nodes[1:-1]
        for k in customers:
            seen[k] = seen.get(k, 0) + 1
            if seen[k] > 1:
                revisited.add(k)
        for i, j in zip(nodes[:-1], nodes[1:]):
            if (i, j) in instance.physical_set:
                report.violations.append(PhysicalArc(route_index=index, arc=(i, j)))

        if instance.variant == "PL":
            on_route = sorted(set(customers))
            for a_pos, a in enumerate(on_route):
                for b in on_route[a_pos + 1:]:
                    if (a, b) in instance.logical_set:
                        report.violations.append(LogicalPair(route_index=index, pair=(a, b)))

        if len(set(customers)) == len(customers):
            duration = route_duration(instance, nodes)
            if duration > limit:
                report.violations.append(DurationExceeded(route_index=index, duration=duration, t_max=instance.t_max))

    report.violations.extend(Revisit(node=k) for k in sorted(revisited))
    report.violations.extend(MandatoryMissing(node=k) for k in instance.mandatory if k not in seen)
    return report


def collected_profit(instance: Instance, routes: Iterable[Route]) -> float:
    visited = {k for route in routes for k in route.customers if 2 <= k < instance.node_count}
    return float(sum(instance.profit(k) for k in sorted(visited)))


def build_solution(instance: Instance, node_lists: Iterable[Sequence[int]], eps: float = config.EPS_FEAS) -> Solution:
    """Wraps raw node sequences into a checked Solution with cached durations."""
    routes = []
    for nodes in node_lists:
        nodes = [int(k) for k in nodes]
        try:
            duration = route_duration(instance, nodes)
        except (UnknownNodeError, MissingArcError):
            duration = None
        routes.append(Route(nodes=nodes, duration=duration))
    solution = Solution(routes=routes, profit=collected_profit(instance, routes))
    report = check_solution(instance, solution, eps)
    solution.status = "feasible" if report.is_feasible else "infeasible"
    solution.reasons = [v.describe() for v in report.violations]
    if not report.is_feasible:
        logger.debug(f"Solution for {instance.name} is infeasible: {solution.reasons}")
    return solution
