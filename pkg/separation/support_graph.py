from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import networkx as nx

import config
from core_model.instance_schema import Instance
from formulations.linear_model import VariableMap

Arc = Tuple[int, int]


class SeparationContractError(ValueError):
    """Separation was handed a model it does not understand."""


@dataclass
class SupportGraph:
    """Arcs with positive x-bar, weighted by it; customers weighted by y-bar."""
    node_count: int
    arc_weights: Dict[Arc, float] = field(default_factory=dict)
    node_weights: Dict[int, float] = field(default_factory=dict)

    def successors(self, i: int) -> List[int]:
        return sorted(j for (a, j) in self.arc_weights if a == i)

    def to_digraph(self, customers_only: bool = False) -> nx.DiGraph:
        graph = nx.DiGraph()
        n = self.node_count
        nodes = range(2, n) if customers_only else range(1, n + 1)
        graph.add_nodes_from(nodes)
        for (i, j), w in sorted(self.arc_weights.items()):
            if customers_only and (i in (1, n) or j in (1, n)):
                continue
            graph.add_edge(i, j, weight=w)
        return graph


def build_support_graph(instance: Instance, variable_map: VariableMap, point: Sequence[float],
                        tol: float = config.SUPPORT_TOL) -> SupportGraph:
    if variable_map.formulation != "compact":
        raise SeparationContractError("cut separation works on the compact model only")
    graph = SupportGraph(instance.node_count)
    for tag, idx in variable_map.family("x"):
        if point[idx] > tol:
            graph.arc_weights[(tag[1], tag[2])] = float(point[idx])
    for tag, idx in variable_map.family("y"):
        graph.node_weights[tag[1]] = float(point[idx])
    return graph
