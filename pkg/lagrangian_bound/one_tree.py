from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import networkx as nx
import numpy as np

import config
from .sub_instance import SubInstance

logger = logging.getLogger(__name__)


@dataclass
class OneTree:
    value: float
    degrees: np.ndarray
    edges: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def is_tour(self) -> bool:
        return bool(np.all(self.degrees == 2))


def one_tree(sub: SubInstance, penalties: Optional[np.ndarray] = None) -> OneTree:
    """
    Minimum 1-tree under node penalties: a spanning tree on nodes 1..k plus
    the two cheapest depot edges. The value has 2 * sum(penalties) removed,
    so it is a lower bound on every tour for any penalty vector.
    """
    size = sub.size
    if size < 3:
        raise ValueError("a 1-tree needs at least three nodes")
    pi = np.zeros(size) if penalties is None else np.asarray(penalties, dtype=float)
    weights = sub.costs + pi[:, None] + pi[None, :]
    degrees = np.zeros(size, dtype=int)

    graph = nx.Graph()
    graph.add_nodes_from(range(1, size))
    for i in range(1, size):
        for j in range(i + 1, size):
            if np.isfinite(weights[i, j]):
                graph.add_edge(i, j, weight=float(weights[i, j]))
    if not nx.is_connected(graph):
        return OneTree(np.inf, degrees)

    tree = nx.minimum_spanning_tree(graph, weight="weight", algorithm="kruskal")
    edges = [(min(i, j), max(i, j)) for i, j in tree.edges()]
    depot = sorted((float(weights[0, j]), j) for j in range(1, size) if np.isfinite(weights[0, j]))
    if len(depot) < 2:
        return OneTree(np.inf, degrees)
    edges += [(0, depot[0][1]), (0, depot[1][1])]

    value = 0.0
    for i, j in edges:
        value += weights[i, j]
        degrees[i] += 1
        degrees[j] += 1
    return OneTree(float(value - 2.0 * pi.sum()), degrees, sorted(edges))


def nearest_neighbour_tour(sub: SubInstance) -> float:
    """Greedy tour cost from the depot; +inf when the greedy walk gets stuck."""
    size = sub.size
    unvisited = set(range(1, size))
    current, total = 0, 0.0
    while unvisited:
        nxt = min(unvisited, key=lambda j: (sub.costs[current, j], j))
        if not np.isfinite(sub.costs[current, nxt]):
            return np.inf
        total += sub.costs[current, nxt]
        unvisited.remove(nxt)
        current = nxt
    return float(total + sub.costs[current, 0])


def helsgaun_lower_bound(sub: SubInstance,
                         iterations: int = config.SUBGRADIENT_ITERATIONS,
                         stall_halving: int = config.SUBGRADIENT_STALL_HALVING,
                         degree_weight: float = config.SUBGRADIENT_DEGREE_WEIGHT) -> float:
    """
    Held-Karp bound by subgradient ascent on the 1-tree penalties. The step
    starts at (nearest-neighbour tour) / (2 * size) and halves after
    `stall_halving` iterations without improvement; the direction blends the
    current and previous degree excess 0.7 / 0.3.
    """
    if sub.trivial_cost is not None:
        return sub.trivial_cost

    size = sub.size
    pi = np.zeros(size)
    tree = one_tree(sub, pi)
    best = tree.value
    if not np.isfinite(best) or tree.is_tour:
        return best

    reference = nearest_neighbour_tour(sub)
    if not np.isfinite(reference):
        reference = max(abs(best), 1.0)
    step = reference / (2.0 * size)
    previous = tree.degrees - 2
    stall = 0

    for _ in range(iterations):
        current = tree.degrees - 2
        if not current.any():
            break
        pi = pi + step * (degree_weight * current + (1.0 - degree_weight) * previous)
        pi[0] = 0.0
        previous = current
        tree = one_tree(sub, pi)
        if tree.value > best:
            best, stall = tree.value, 0
        else:
            stall += 1
            if stall >= stall_halving:
                step, stall = step / 2.0, 0
        if tree.is_tour:
            best = max(best, tree.value)
            break
    return float(best)
