import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import List, Sequence

from .cuts import Cut, SeparationContext, select_cuts
from .enumeration import enumerate_elementary_cycles, enumerate_routes
from .logical_cuts import separate_logical_inequalities
from .route_cuts import separate_route_inequality, separate_set_inequality
from .subpath_cuts import separate_subpath_inequalities
from .subtour_cuts import separate_secs
from .support_graph import build_support_graph

logger = logging.getLogger(__name__)


@dataclass
class SeparationRound:
    cuts: List[Cut] = field(default_factory=list)
    routes_seen: int = 0
    infeasible_routes: int = 0
    cycles_seen: int = 0
    truncated: bool = False

    def family_counts(self) -> Counter:
        return Counter(cut.report_family for cut in self.cuts)


def separate_point(context: SeparationContext, point: Sequence[float], limit: int) -> SeparationRound:
    """
    One separation round on an LP point. For every route of the support
    graph that breaks T_max: subpath cuts on its still-feasible subpaths,
    then the set inequality when the relaxation bound proves the customer
    set infeasible, the route inequality otherwise. Logical cuts are read
    from every route, subtour cuts from the elementary cycles.
    """
    inst = context.instance
    graph = build_support_graph(inst, context.variable_map, point, context.support_tol)
    result = SeparationRound()
    found: List[Cut] = []

    route_families = {"RI", "SI", "SPI", "LI"} & context.families
    if route_families:
        routes = enumerate_routes(graph, context.max_routes)
        result.routes_seen = len(routes.routes)
        result.truncated |= routes.truncated
        seen_subpaths, seen_logical = set(), set()
        for route in routes.routes:
            if context.block_time(route) > context.duration_limit:
                result.infeasible_routes += 1
                if context.enabled("SPI"):
                    found.extend(separate_subpath_inequalities(route, context, point, seen_subpaths))
                cut = separate_set_inequality(route, context, point) if context.enabled("SI") else None
                if cut is None and context.enabled("RI"):
                    cut = separate_route_inequality(route, context, point)
                if cut is not None:
                    found.append(cut)
            if context.enabled("LI"):
                found.extend(separate_logical_inequalities(route, context, point, seen_logical))

    if context.enabled("SEC"):
        cycles = enumerate_elementary_cycles(graph, context.max_cycles)
        result.cycles_seen = len(cycles.cycles)
        result.truncated |= cycles.truncated
        found.extend(separate_secs(graph, cycles, context, point))

    if result.truncated:
        logger.warning(f"Enumeration cap reached on {inst.name}; the round may miss violated cuts")
    result.cuts = select_cuts(found, limit)
    logger.debug(f"Separation round: {result.routes_seen} routes ({result.infeasible_routes} infeasible), "
                 f"{result.cycles_seen} cycles, cuts {dict(result.family_counts())}")
    return result
