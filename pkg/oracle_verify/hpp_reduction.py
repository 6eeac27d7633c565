import itertools

import networkx as nx

from core_model.instance_schema import Instance


def hpp_reduce(graph: nx.Graph) -> Instance:
    """
    Builds a TOP-ST-MIN instance that is feasible exactly when `graph` has a
    Hamiltonian path: one vehicle, every node mandatory, zero travel and
    service times, T_max = 0, and every non-edge removed in both directions.
    """
    order = sorted(graph.nodes())
    if not order:
        raise ValueError("the graph must have at least one node")
    node_of = {v: pos + 2 for pos, v in enumerate(order)}
    n = len(order) + 2
    physical = []
    for a, b in itertools.permutations(order, 2):
        if not graph.has_edge(a, b):
            physical.append((node_of[a], node_of[b]))
    return Instance(
        name=f"hpp_{len(order)}",
        node_count=n,
        fleet_size=1,
        t_max=0.0,
        coordinates=[(0.0, 0.0)] * n,
        profits=[0.0] + [1.0] * len(order) + [0.0],
        service_times=[0.0] * n,
        mandatory=list(node_of.values()),
        physical=physical,
        variant="P",
        symmetric_physical=True,
        exact_feasibility=True,
    )


def has_hamiltonian_path(graph: nx.Graph) -> bool:
    nodes = sorted(graph.nodes())
    for order in itertools.permutations(nodes):
        if all(graph.has_edge(a, b) for a, b in zip(order[:-1], order[1:])):
            return True
    return False
