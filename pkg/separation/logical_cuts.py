from typing import List, Sequence, Set, Tuple

from .cuts import Cut, SeparationContext, internal_arc_coefficients, make_cut


def separate_logical_inequalities(route: Sequence[int], context: SeparationContext, point: Sequence[float],
                                  seen: Set[Tuple[int, ...]]) -> List[Cut]:
    """
    A customer subpath whose two ends are logically incompatible can never
    be traversed as a block: x(A(S)) <= |S| - 2 over its node set.
    """
    inst = context.instance
    if inst.variant != "PL":
        return []
    customers = list(route[1:-1])
    found: List[Cut] = []
    for start in range(len(customers)):
        for end in range(start + 1, len(customers)):
            if not inst.incompatible(customers[start], customers[end]):
                continue
            subpath = tuple(customers[start:end + 1])
            key = tuple(sorted(subpath))
            if key in seen:
                continue
            seen.add(key)
            coefs = internal_arc_coefficients(subpath, context.variable_map)
            cut = make_cut("LI", coefs, float(len(subpath) - 2), subpath, point)
            if context.is_violated(cut):
                found.append(cut)
    return found
