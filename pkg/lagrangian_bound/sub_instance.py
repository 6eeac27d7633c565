from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from core_model.instance_schema import Instance


@dataclass(frozen=True)
class SubInstance:
    """
    Symmetric tour relaxation of an open path problem. Index 0 is the merged
    source/destination depot, indices 1..k map to `labels`. Half of every
    customer's service time is folded into each of its two tour edges, so a
    tour through the depot never costs more than the open path it closes.
    """
    costs: np.ndarray
    labels: Tuple[int, ...] = ()
    # Exact open-path cost when fewer than two customers are involved.
    trivial_cost: Optional[float] = None

    @property
    def size(self) -> int:
        return int(self.costs.shape[0])


def sub_instance_from_costs(costs: Sequence[Sequence[float]]) -> SubInstance:
    matrix = np.asarray(costs, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError("cost matrix must be square")
    matrix = np.minimum(matrix, matrix.T)
    np.fill_diagonal(matrix, 0.0)
    return SubInstance(costs=matrix, labels=tuple(range(1, matrix.shape[0])))


def build_route_sub_instance(instance: Instance, customers: Sequence[int], closure: np.ndarray) -> SubInstance:
    """
    Relaxation of "visit exactly these customers on one 1 -> n path".
    `closure` holds shortest allowed travel times indexed by node id, so
    removed arcs only fall back to +inf when nothing connects the pair.
    """
    n = instance.node_count
    customers = tuple(customers)
    if not customers:
        return SubInstance(costs=np.zeros((1, 1)), trivial_cost=float(closure[1, n]))
    if len(customers) == 1:
        (a,) = customers
        cost = float(closure[1, a] + instance.service(a) + closure[a, n])
        return SubInstance(costs=np.zeros((2, 2)), labels=customers, trivial_cost=cost)

    k = len(customers)
    service = np.array([instance.service(a) for a in customers])
    ids = np.array(customers)
    costs = np.zeros((k + 1, k + 1))
    depot = np.minimum(closure[1, ids], closure[ids, n]) + service / 2.0
    costs[0, 1:] = depot
    costs[1:, 0] = depot
    inner = closure[np.ix_(ids, ids)]
    costs[1:, 1:] = np.minimum(inner, inner.T) + (service[:, None] + service[None, :]) / 2.0
    np.fill_diagonal(costs, 0.0)
    return SubInstance(costs=costs, labels=customers)
