"""Route (1 -> n path) and elementary cycle enumeration on the support graph."""
from dataclasses import dataclass, field
from itertools import islice
from typing import List, Optional

import networkx as nx

import config
from .support_graph import SupportGraph


@dataclass
class RouteSet:
    routes: List[List[int]] = field(default_factory=list)
    truncated: bool = False


@dataclass
class CycleSet:
    cycles: List[List[int]] = field(default_factory=list)
    truncated: bool = False


def enumerate_routes(graph: SupportGraph, max_routes: int = config.MAX_ROUTES_PER_ROUND,
                     max_depth: Optional[int] = None) -> RouteSet:
    """Every elementary 1 -> n path of the support graph, depth-first, capped."""
    n = graph.node_count
    digraph = graph.to_digraph()
    cutoff = max_depth if max_depth is not None else n
    paths = islice(nx.all_simple_paths(digraph, 1, n, cutoff=cutoff), max_routes + 1)
    routes = [list(p) for p in paths]
    truncated = len(routes) > max_routes
    return RouteSet(routes[:max_routes], truncated)


def _canonical(cycle: List[int]) -> List[int]:
    pivot = cycle.index(min(cycle))
    return cycle[pivot:] + cycle[:pivot]


def enumerate_elementary_cycles(graph: SupportGraph, max_cycles: int = config.MAX_CYCLES_PER_ROUND) -> CycleSet:
    """Elementary cycles among customers, each rotated to start at its smallest id."""
    digraph = graph.to_digraph(customers_only=True)
    found = [_canonical(list(c)) for c in islice(nx.simple_cycles(digraph), max_cycles + 1)]
    truncated = len(found) > max_cycles
    return CycleSet(sorted(found[:max_cycles], key=lambda c: (len(c), c)), truncated)
