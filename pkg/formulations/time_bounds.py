from core_model.instance_schema import Instance


def arrival_upper(instance: Instance, j: int) -> float:
    """Latest arrival at j that still leaves time to serve j and reach n directly."""
    n = instance.node_count
    if j == n:
        return instance.t_max
    return instance.t_max - instance.service(j) - instance.time(j, n)


def arrival_lower(instance: Instance, i: int, j: int) -> float:
    """Earliest arrival at j over arc (i, j): go straight to i, serve it, cross."""
    if i == 1:
        return instance.time(1, j)
    return instance.time(1, i) + instance.service(i) + instance.time(i, j)


def in_arcs(instance: Instance, k: int):
    return [(i, k) for i in [1, *instance.customers] if i != k]


def out_arcs(instance: Instance, k: int):
    return [(k, j) for j in [*instance.customers, instance.node_count] if j != k]
