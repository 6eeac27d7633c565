import math
from typing import List, Literal, Optional

import config
from core_model.instance_schema import Arc, Instance
from .schemes import generation_distances


def partners_per_customer(customer_count: int, fraction: float) -> int:
    return int(math.ceil(fraction * (customer_count - 1) - 1e-9)) if customer_count > 1 else 0


def logical_pair_target(node_count: int, fraction: float) -> Optional[int]:
    """|C| for a known base-set shape at the default fraction, else None."""
    if not math.isclose(fraction, config.LOGICAL_FRACTION):
        return None
    return config.LOGICAL_PAIR_TARGETS.get(node_count)


def select_logical(instance: Instance, method: Literal["FLI", "NLI"], fraction: float,
                   target: Optional[int] = None) -> List[Arc]:
    """
    Pairs customers with their farthest (FLI) or nearest (NLI) customers,
    rank by rank: every customer's first partner, then every customer's
    second partner, and so on, skipping pairs already taken. Equal distances
    are broken by the lower id.

    Without a target the ranks stop at `partners_per_customer`. With one,
    ranks continue until exactly `target` pairs are taken (or every pair is).
    Returns sorted unordered pairs.
    """
    customers = instance.customers
    dist = generation_distances(instance)
    sign = -1.0 if method == "FLI" else 1.0
    ranked = {i: sorted((j for j in customers if j != i), key=lambda j: (sign * dist[i, j], j))
              for i in customers}
    if target is None:
        ranks = partners_per_customer(len(customers), fraction)
    else:
        ranks = len(customers) - 1
        target = min(target, len(customers) * (len(customers) - 1) // 2)

    pairs: List[Arc] = []
    taken = set()
    for rank in range(ranks):
        for i in customers:
            if target is not None and len(pairs) >= target:
                return sorted(pairs)
            pair = (min(i, ranked[i][rank]), max(i, ranked[i][rank]))
            if pair not in taken:
                taken.add(pair)
                pairs.append(pair)
    return sorted(pairs)
