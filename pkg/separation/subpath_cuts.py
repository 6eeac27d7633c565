"""
Subpath inequalities: if a subpath p is traversed contiguously, the node
entering p1 must come from L(p) and the node leaving p_l must go to R(p),
the sets of neighbours that still fit into some feasible route with p.
"""
from typing import List, Sequence, Set, Tuple

from .cuts import Cut, SeparationContext, make_cut


def extension_sets(subpath: Sequence[int], context: SeparationContext) -> Tuple[List[int], List[int]]:
    inst = context.instance
    n = inst.node_count
    d = context.closure
    limit = context.duration_limit
    members = set(subpath)
    first, last = subpath[0], subpath[-1]
    block = context.block_time(subpath)

    def compatible(v: int) -> bool:
        return not any(inst.incompatible(v, k) for k in members)

    left = []
    for v in [1, *inst.customers]:
        if v in members or not inst.is_allowed(v, first) or (v != 1 and not compatible(v)):
            continue
        head = d[1, v] + inst.service(v) + inst.time(v, first)
        if head + block + d[last, n] <= limit:
            left.append(v)

    right = []
    for w in [*inst.customers, n]:
        if w in members or not inst.is_allowed(last, w) or (w != n and not compatible(w)):
            continue
        tail = inst.time(last, w) + inst.service(w) + d[w, n]
        if d[1, first] + block + tail <= limit:
            right.append(w)
    return left, right


def _subpath_body(subpath: Sequence[int], context: SeparationContext) -> dict:
    vmap = context.variable_map
    coefs = {}
    for i, j in zip(subpath[:-1], subpath[1:]):
        coefs[vmap.x(i, j)] = coefs.get(vmap.x(i, j), 0.0) + 1.0
    for k in subpath[1:-1]:
        coefs[vmap.y(k)] = coefs.get(vmap.y(k), 0.0) - 1.0
    return coefs


def subpath_cuts_for(subpath: Sequence[int], context: SeparationContext, point: Sequence[float]) -> List[Cut]:
    """Both the left and the right inequality of one subpath, violated or not."""
    vmap = context.variable_map
    left, right = extension_sets(subpath, context)

    coefs = _subpath_body(subpath, context)
    for v in left:
        idx = vmap.x(v, subpath[0])
        coefs[idx] = coefs.get(idx, 0.0) - 1.0
    left_cut = make_cut("SPI-L", coefs, 0.0, subpath, point)

    coefs = _subpath_body(subpath, context)
    for w in right:
        idx = vmap.x(subpath[-1], w)
        coefs[idx] = coefs.get(idx, 0.0) - 1.0
    right_cut = make_cut("SPI-R", coefs, 0.0, subpath, point)
    return [left_cut, right_cut]


def separate_subpath_inequalities(route: Sequence[int], context: SeparationContext, point: Sequence[float],
                                  seen: Set[Tuple[int, ...]]) -> List[Cut]:
    """
    Scans the customer subpaths of an infeasible route by increasing start
    and length; only subpaths that still fit into some route between 1 and
    n are used. `seen` deduplicates subpaths across routes of one round.
    """
    customers = list(route[1:-1])
    found: List[Cut] = []
    for start in range(len(customers)):
        for length in range(2, len(customers) - start + 1):
            subpath = tuple(customers[start:start + length])
            if context.closure_duration(subpath) > context.duration_limit:
                break
            if subpath in seen:
                continue
            seen.add(subpath)
            found.extend(c for c in subpath_cuts_for(subpath, context, point) if context.is_violated(c))
    return found
