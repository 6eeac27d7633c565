import logging
from typing import Optional, Sequence

from lagrangian_bound.one_tree import helsgaun_lower_bound
from lagrangian_bound.sub_instance import build_route_sub_instance
from .cuts import Cut, SeparationContext, internal_arc_coefficients, make_cut

logger = logging.getLogger(__name__)


def separate_route_inequality(route: Sequence[int], context: SeparationContext,
                              point: Sequence[float]) -> Optional[Cut]:
    """
    Forbids the whole route: its arcs may not all be used together, since
    sum x over the route arcs <= sum y over its customers.
    """
    vmap = context.variable_map
    coefs = {}
    for i, j in zip(route[:-1], route[1:]):
        idx = vmap.x(i, j)
        coefs[idx] = coefs.get(idx, 0.0) + 1.0
    for k in route[1:-1]:
        idx = vmap.y(k)
        coefs[idx] = coefs.get(idx, 0.0) - 1.0
    cut = make_cut("RI", coefs, 0.0, route, point)
    return cut if context.is_violated(cut) else None


def customer_set_bound(customers: Sequence[int], context: SeparationContext) -> float:
    """Lower bound on the duration of any route serving exactly these customers."""
    key = frozenset(customers)
    if key not in context.bound_cache:
        sub = build_route_sub_instance(context.instance, sorted(key), context.closure)
        context.bound_cache[key] = helsgaun_lower_bound(sub)
    return context.bound_cache[key]


def separate_set_inequality(route: Sequence[int], context: SeparationContext,
                            point: Sequence[float]) -> Optional[Cut]:
    """
    When even the relaxation bound over the route's customer set exceeds
    T_max, no route serves that set contiguously: x(A(S)) <= |S| - 2.
    Returns None when the bound does not certify infeasibility.
    """
    customers = list(route[1:-1])
    if len(customers) < 2:
        return None
    bound = customer_set_bound(customers, context)
    if bound <= context.duration_limit:
        return None
    coefs = internal_arc_coefficients(customers, context.variable_map)
    cut = make_cut("SI", coefs, float(len(set(customers)) - 2), route, point)
    return cut if context.is_violated(cut) else None
