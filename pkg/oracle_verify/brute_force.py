"""
Exhaustive reference solver for tiny instances. Two independent
enumerations are provided so they can cross-check each other:

* "subset-dp": shortest elementary path per (customer subset, last node),
  then a disjoint-union dynamic program over subsets.
* "route-dfs": depth-first enumeration of every feasible route, then a
  recursive choice of up to m pairwise disjoint routes.
"""
import itertools
import logging
import math
from typing import Dict, List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel

import config
from core_model.feasibility import build_solution, duration_limit, route_duration
from core_model.instance_schema import Instance
from core_model.solution_schema import Solution

logger = logging.getLogger(__name__)

OracleMethod = Literal["subset-dp", "route-dfs"]


class OracleGuardError(ValueError):
    """Instance too large for exhaustive enumeration."""


class OracleResult(BaseModel):
    status: Literal["OPT", "INFS"]
    profit: Optional[float] = None
    solution: Optional[Solution] = None
    enumerated: int = 0


def _guard(instance: Instance) -> None:
    if len(instance.customers) > config.ORACLE_MAX_CUSTOMERS or instance.fleet_size > config.ORACLE_MAX_VEHICLES:
        raise OracleGuardError(f"oracle handles at most {config.ORACLE_MAX_CUSTOMERS} customers and "
                               f"{config.ORACLE_MAX_VEHICLES} vehicles, got {len(instance.customers)} and "
                               f"{instance.fleet_size}")


def _conflict_free(instance: Instance, nodes: Sequence[int]) -> bool:
    return not any(instance.incompatible(a, b) for a, b in itertools.combinations(nodes, 2))


def _best_paths_by_subset(instance: Instance, eps: float) -> Tuple[Dict[int, List[int]], int]:
    """Shortest feasible route per non-empty customer bitmask (bit b is customer b + 2)."""
    customers = instance.customers
    n = instance.node_count
    limit = duration_limit(instance, eps)
    start_service = instance.service(1)
    # best[(mask, last)] = (duration up to and including service at last, predecessor state)
    best: Dict[Tuple[int, int], Tuple[float, Optional[Tuple[int, int]]]] = {}
    for b, k in enumerate(customers):
        if instance.is_allowed(1, k):
            d = start_service + instance.time(1, k) + instance.service(k)
            if d <= limit:
                best[(1 << b, b)] = (d, None)

    for mask in range(1, 1 << len(customers)):
        for last in range(len(customers)):
            state = best.get((mask, last))
            if state is None:
                continue
            for b, k in enumerate(customers):
                if mask & (1 << b) or not instance.is_allowed(customers[last], k):
                    continue
                d = state[0] + instance.time(customers[last], k) + instance.service(k)
                key = (mask | (1 << b), b)
                if d <= limit and (key not in best or d < best[key][0]):
                    best[key] = (d, (mask, last))

    routes: Dict[int, Tuple[float, List[int]]] = {}
    for (mask, last), (d, _) in best.items():
        k = customers[last]
        if not instance.is_allowed(k, n):
            continue
        total = d + instance.time(k, n) + instance.service(n)
        if total > limit or (mask in routes and routes[mask][0] <= total):
            continue
        order, state = [], (mask, last)
        while state is not None:
            order.append(customers[state[1]])
            state = best[state][1]
        routes[mask] = (total, [1, *reversed(order), n])

    feasible = {mask: path for mask, (_, path) in routes.items() if _conflict_free(instance, path[1:-1])}
    return feasible, len(best)


def _feasible_routes_dfs(instance: Instance, eps: float) -> Tuple[Dict[frozenset, List[int]], int]:
    n = instance.node_count
    limit = duration_limit(instance, eps)
    found: Dict[frozenset, Tuple[float, List[int]]] = {}
    visited = 0

    def extend(path: List[int], elapsed: float) -> None:
        nonlocal visited
        visited += 1
        last = path[-1]
        if instance.is_allowed(last, n):
            total = elapsed + instance.time(last, n) + instance.service(n)
            members = frozenset(path[1:])
            if total <= limit and (members not in found or total < found[members][0]):
                found[members] = (total, [*path, n])
        for k in instance.customers:
            if k in path or not instance.is_allowed(last, k):
                continue
            if any(instance.incompatible(k, other) for other in path[1:]):
                continue
            d = elapsed + instance.time(last, k) + instance.service(k)
            if d <= limit:
                extend([*path, k], d)

    extend([1], instance.service(1))
    return {members: path for members, (_, path) in found.items() if members}, visited


def _empty_route_feasible(instance: Instance, eps: float) -> bool:
    n = instance.node_count
    return instance.is_allowed(1, n) and route_duration(instance, [1, n]) <= duration_limit(instance, eps)


def _best_combination(instance: Instance, candidates: List[Tuple[frozenset, List[int]]],
                      empty_ok: bool) -> Optional[List[List[int]]]:
    """Highest-profit choice of at most m disjoint routes covering every mandatory customer."""
    m = instance.fleet_size
    mandatory = instance.mandatory_set
    best_profit, best_choice = -math.inf, None

    def profit_of(chosen: List[Tuple[frozenset, List[int]]]) -> float:
        return sum(instance.profit(k) for members, _ in chosen for k in members)

    def search(start: int, used: frozenset, chosen: List[Tuple[frozenset, List[int]]]) -> None:
        nonlocal best_profit, best_choice
        if (len(chosen) == m or empty_ok) and mandatory <= used:
            value = profit_of(chosen)
            if value > best_profit:
                best_profit, best_choice = value, list(chosen)
        if len(chosen) == m:
            return
        for pos in range(start, len(candidates)):
            members, path = candidates[pos]
            if members & used:
                continue
            chosen.append((members, path))
            search(pos + 1, used | members, chosen)
            chosen.pop()

    search(0, frozenset(), [])
    if best_choice is None:
        return None
    n = instance.node_count
    paths = [path for _, path in best_choice]
    return paths + [[1, n]] * (m - len(paths))


def brute_force_solve(instance: Instance, method: OracleMethod = "subset-dp", eps: float = config.EPS_FEAS) -> OracleResult:
    """Certified optimum (or infeasibility) of a tiny instance by exhaustive enumeration."""
    _guard(instance)
    empty_ok = _empty_route_feasible(instance, eps)

    if method == "route-dfs":
        by_set, enumerated = _feasible_routes_dfs(instance, eps)
        candidates = sorted(by_set.items(), key=lambda item: sorted(item[0]))
        routes = _best_combination(instance, candidates, empty_ok)
    else:
        by_mask, enumerated = _best_paths_by_subset(instance, eps)
        routes = _combine_masks(instance, by_mask, empty_ok)

    if routes is None:
        logger.debug(f"Oracle ({method}) proves {instance.name} infeasible")
        return OracleResult(status="INFS", enumerated=enumerated)
    solution = build_solution(instance, routes, eps)
    return OracleResult(status="OPT", profit=solution.profit, solution=solution, enumerated=enumerated)


def _combine_masks(instance: Instance, by_mask: Dict[int, List[int]], empty_ok: bool) -> Optional[List[List[int]]]:
    customers = instance.customers
    m = instance.fleet_size
    full = (1 << len(customers)) - 1
    mandatory_mask = sum(1 << (k - 2) for k in instance.mandatory)

    # reachable[r][mask] = (previous mask, route mask) for unions of r disjoint routes
    reachable: List[Dict[int, Tuple[int, int]]] = [{0: (0, 0)}]
    for _ in range(m):
        layer: Dict[int, Tuple[int, int]] = {}
        for mask in sorted(reachable[-1]):
            rest = full & ~mask
            sub = rest
            while sub:
                if sub in by_mask and (mask | sub) not in layer:
                    layer[mask | sub] = (mask, sub)
                sub = (sub - 1) & rest
        reachable.append(layer)

    best_profit, best = -math.inf, None
    for r in range(m + 1):
        if r < m and not empty_ok:
            continue
        for mask in sorted(reachable[r]):
            if mask & mandatory_mask != mandatory_mask:
                continue
            value = sum(instance.profit(customers[b]) for b in range(len(customers)) if mask >> b & 1)
            if value > best_profit:
                best_profit, best = value, (r, mask)
    if best is None:
        return None

    r, mask = best
    paths = []
    while r > 0:
        previous, route_mask = reachable[r][mask]
        paths.append(by_mask[route_mask])
        mask, r = previous, r - 1
    return list(reversed(paths)) + [[1, instance.node_count]] * (m - len(paths))


def brute_force_tsp_path(instance: Instance, nodes: Sequence[int]) -> float:
    """Shortest 1 -> n route visiting exactly `nodes` over allowed arcs; +inf if none exists."""
    if len(nodes) > 9:
        raise OracleGuardError("TSP path enumeration is limited to 9 customers")
    n = instance.node_count
    best = math.inf
    for order in itertools.permutations(sorted(nodes)):
        path = [1, *order, n]
        if all(instance.is_allowed(i, j) for i, j in zip(path[:-1], path[1:])):
            best = min(best, route_duration(instance, path))
    return best
