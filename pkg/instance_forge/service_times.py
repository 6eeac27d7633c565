from typing import List, Tuple

import numpy as np

from core_model.instance_schema import Instance


def assign_service_times(instance: Instance, rng: np.random.Generator, share: float = 0.5,
                         stretch: float = 1.5) -> Tuple[List[float], float]:
    """
    Spreads a global service budget of share * m * T_max over the customers
    proportionally to uniform(0, 1) draws, then stretches T_max.
    Returns the full per-node service vector (depots get 0) and the new T_max.
    """
    total = share * instance.fleet_size * instance.t_max
    customers = instance.customers
    services = [0.0] * instance.node_count
    if customers:
        draws = rng.uniform(0.0, 1.0, size=len(customers))
        weights = draws / draws.sum() if draws.sum() > 0 else np.full(len(customers), 1.0 / len(customers))
        values = total * weights
        # pin the sum exactly to the budget
        values[-1] = total - values[:-1].sum()
        for k, value in zip(customers, values):
            services[k - 1] = max(0.0, float(value))
    return services, stretch * instance.t_max
