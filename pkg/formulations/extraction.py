from collections import defaultdict
from typing import Dict, List, Sequence, Tuple

from core_model.feasibility import build_solution
from core_model.instance_schema import Instance
from core_model.solution_schema import Solution
from .linear_model import VariableMap


class ExtractionError(ValueError):
    """The assignment does not decompose into m elementary 1 -> n routes."""


def _decompose(instance: Instance, arc_counts: Dict[Tuple[int, int], int], active: set) -> List[List[int]]:
    n = instance.node_count
    successors: Dict[int, List[int]] = defaultdict(list)
    for (i, j), count in sorted(arc_counts.items()):
        if i != 1 and count > 1:
            raise ExtractionError(f"arc ({i},{j}) used {count} times")
        successors[i].extend([j] * count)
    for i, heads in successors.items():
        if i != 1 and len(heads) > 1:
            raise ExtractionError(f"customer {i} has {len(heads)} outgoing arcs")

    paths, covered = [], set()
    for first in successors.get(1, []):
        path, node = [1], first
        while node != n:
            if node in covered or node in path:
                raise ExtractionError(f"node {node} reached twice while walking from the source")
            path.append(node)
            covered.add(node)
            if not successors.get(node):
                raise ExtractionError(f"route stops at customer {node} before the destination")
            node = successors[node][0]
        path.append(n)
        paths.append(path)

    stray = sorted((active | {i for i in successors if i != 1}) - covered)
    if stray:
        raise ExtractionError(f"customers {stray} lie on subtours disconnected from the source")
    return paths


def extract_solution(instance: Instance, variable_map: VariableMap, assignment: Sequence[float]) -> Solution:
    """Turns an integral assignment of a compact or mixed model into a checked Solution."""
    paths: List[List[int]] = []
    if variable_map.formulation == "compact":
        counts = {(tag[1], tag[2]): int(round(assignment[idx]))
                  for tag, idx in variable_map.family("x") if assignment[idx] > 0.5}
        active = {tag[1] for tag, idx in variable_map.family("y") if assignment[idx] > 0.5}
        paths = _decompose(instance, counts, active)
    else:
        for r in range(1, variable_map.fleet_size + 1):
            counts = {(tag[1], tag[2]): int(round(assignment[idx]))
                      for tag, idx in variable_map.family("x") if tag[3] == r and assignment[idx] > 0.5}
            active = {tag[1] for tag, idx in variable_map.family("y") if tag[2] == r and assignment[idx] > 0.5}
            paths.extend(_decompose(instance, counts, active))

    if len(paths) != instance.fleet_size:
        raise ExtractionError(f"assignment yields {len(paths)} routes, expected {instance.fleet_size}")
    return build_solution(instance, paths)
