import logging
from typing import List, Sequence

import networkx as nx

from separation.cuts import Cut, SeparationContext
from separation.subtour_cuts import subtour_cut
from separation.support_graph import build_support_graph

logger = logging.getLogger(__name__)


def separate_secs_maxflow(context: SeparationContext, point: Sequence[float]) -> List[Cut]:
    """
    Exact subtour separation: for every customer k the minimum 1 -> k cut
    gives the customer set U around k with the least inflow. An infinite
    1 -> n arc keeps the destination on the source side. U is violated when
    its inflow is below y_k.
    """
    inst = context.instance
    n = inst.node_count
    graph = build_support_graph(inst, context.variable_map, point, context.support_tol)
    network = nx.DiGraph()
    network.add_nodes_from(range(1, n + 1))
    for (i, j), w in graph.arc_weights.items():
        network.add_edge(i, j, capacity=w)
    network.add_edge(1, n, capacity=float("inf"))

    found, seen = [], set()
    for k in inst.customers:
        y_k = graph.node_weights.get(k, 0.0)
        if y_k <= context.viol_tol:
            continue
        cut_value, (_, sink_side) = nx.minimum_cut(network, 1, k)
        if y_k - cut_value <= context.viol_tol:
            continue
        members = tuple(sorted(sink_side))
        if members in seen:
            continue
        seen.add(members)
        cut = subtour_cut(members, graph, context, point)
        if context.is_violated(cut):
            found.append(cut)
    logger.debug(f"Max-flow separation found {len(found)} violated subtour sets")
    return found
