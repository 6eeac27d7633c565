from typing import List, Sequence

from .cuts import Cut, SeparationContext, internal_arc_coefficients, make_cut
from .enumeration import CycleSet
from .support_graph import SupportGraph


def subtour_cut(node_set: Sequence[int], graph: SupportGraph, context: SeparationContext,
                point: Sequence[float]) -> Cut:
    """
    x(A(U)) - y(U) + y_k <= 0 with k the node of U carrying the largest
    y-bar (smallest id on ties).
    """
    nodes = sorted(set(node_set))
    anchor = max(nodes, key=lambda k: (graph.node_weights.get(k, 0.0), -k))
    coefs = internal_arc_coefficients(nodes, context.variable_map)
    vmap = context.variable_map
    for k in nodes:
        if k != anchor:
            coefs[vmap.y(k)] = coefs.get(vmap.y(k), 0.0) - 1.0
    return make_cut("SEC", coefs, 0.0, node_set, point)


def separate_secs(graph: SupportGraph, cycles: CycleSet, context: SeparationContext,
                  point: Sequence[float]) -> List[Cut]:
    found: List[Cut] = []
    seen = set()
    for cycle in cycles.cycles:
        key = frozenset(cycle)
        if key in seen:
            continue
        seen.add(key)
        cut = subtour_cut(cycle, graph, context, point)
        if context.is_violated(cut):
            found.append(cut)
    return found
