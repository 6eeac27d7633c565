"""
Physical incompatibilities: choose which arcs of A-hat disappear.

Arcs are removed in units so that the kept set stays symmetric: a customer
pair {i, j} removes (i, j) and (j, i) together, while source arcs (1, k),
destination arcs (k, n) and (1, n) have no reverse in A-hat and go alone.

Both selection models are solved by deterministic greedy construction
followed by exchange moves; the objectives are exposed so that tests can
compare against exhaustive search on tiny graphs.
"""
import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from core_model.instance_schema import Arc, Instance
from .clustering import ClusterAssignment
from .schemes import GenerationError

logger = logging.getLogger(__name__)

MAX_EXCHANGE_ROUNDS = 10_000

ClassKey = Tuple[int, int]


@dataclass(frozen=True, order=True)
class ArcUnit:
    arcs: Tuple[Arc, ...]

    @property
    def weight(self) -> int:
        return len(self.arcs)

    @property
    def is_pair(self) -> bool:
        return len(self.arcs) == 2


class ArcSelection(BaseModel):
    model_config = ConfigDict(frozen=True)

    method: str
    removed: List[Arc]
    kept_count: int
    violations: int = 0
    sigma: int = 0
    alpha: int = 0
    objective: float = 0.0


def arc_units(instance: Instance) -> List[ArcUnit]:
    n = instance.node_count
    customers = instance.customers
    units = [ArcUnit(((i, j), (j, i))) for pos, i in enumerate(customers) for j in customers[pos + 1:]]
    units += [ArcUnit(((1, k),)) for k in customers]
    units += [ArcUnit(((k, n),)) for k in customers]
    units.append(ArcUnit(((1, n),)))
    return units


def removal_count(instance: Instance, fraction: float) -> int:
    """floor(fraction * n(n-1)), the size of I for a removal fraction."""
    n = instance.node_count
    return int(math.floor(fraction * n * (n - 1) + 1e-9))


def target_arc_count(instance: Instance, fraction: float) -> int:
    """gamma: arcs kept in A-hat after removing the given fraction."""
    return len(instance.arcs) - removal_count(instance, fraction)


def protected_arcs(instance: Instance, mandatory: Iterable[int]) -> FrozenSet[Arc]:
    n = instance.node_count
    arcs = {(1, n)}
    for k in mandatory:
        arcs.add((1, k))
        arcs.add((k, n))
    return frozenset(arcs)


def _removable_units(instance: Instance, protected: FrozenSet[Arc]) -> List[ArcUnit]:
    return [u for u in arc_units(instance) if not any(a in protected for a in u.arcs)]


def _removal_budget(instance: Instance, keep: int, units: Sequence[ArcUnit]) -> int:
    total = len(instance.arcs)
    if keep > total or keep < 0:
        raise GenerationError(f"cannot keep {keep} of {total} arcs")
    removal = total - keep
    if removal > sum(u.weight for u in units):
        raise GenerationError(f"removing {removal} arcs would touch protected depot arcs")
    return removal


# ==============================================================================
#  CPI: cluster-based removal
# ==============================================================================

def _class_key(clusters: ClusterAssignment, i: int, j: int) -> ClassKey:
    a, b = clusters.labels[i], clusters.labels[j]
    return (a, b) if a <= b else (b, a)


def arc_counters(instance: Instance, clusters: ClusterAssignment, removed: Iterable[Arc]) -> Tuple[List[int], List[int]]:
    """Kept directed customer arcs per cluster: (intra, inter-outgoing)."""
    gone = set(removed)
    intra = [0] * clusters.count
    inter = [0] * clusters.count
    for i in instance.customers:
        for j in instance.customers:
            if i == j or (i, j) in gone:
                continue
            a, b = clusters.labels[i], clusters.labels[j]
            if a == b:
                intra[a] += 1
            else:
                inter[a] += 1
    return intra, inter


def cpi_objective(instance: Instance, clusters: ClusterAssignment, conflict: np.ndarray,
                  removed: Iterable[Arc]) -> Tuple[int, int, float]:
    """(violations, sigma, (gamma+1)*violations + sigma) of a removal set."""
    gone = set(removed)
    keep = len(instance.arcs) - len(gone & instance.arc_set)
    violations = sum(
        1 for i in instance.customers for j in instance.customers
        if i != j and (i, j) not in gone and conflict[clusters.labels[i], clusters.labels[j]]
    )
    intra, inter = arc_counters(instance, clusters, gone)
    sigma = max(intra + inter) if clusters.count else 0
    return violations, sigma, float((keep + 1) * violations + sigma)


def _apply_class(intra: List[int], inter: List[int], key: ClassKey, delta: int) -> None:
    a, b = key
    if a == b:
        intra[a] += 2 * delta
    else:
        inter[a] += delta
        inter[b] += delta


def _score(intra: List[int], inter: List[int]) -> Tuple[int, ...]:
    return tuple(sorted(intra + inter, reverse=True))


def _greedy_classes(available: Dict[ClassKey, int], take: int,
                    intra: List[int], inter: List[int]) -> Dict[ClassKey, int]:
    """
    Removes `take` pairs one at a time, always from the class whose removal
    gives the lexicographically smallest descending counter vector, then
    moves single removals between classes while that still improves it.
    Mutates the counters.
    """
    chosen: Dict[ClassKey, int] = defaultdict(int)
    for _ in range(take):
        best_key, best_score = None, None
        for key in sorted(available):
            if available[key] - chosen[key] <= 0:
                continue
            _apply_class(intra, inter, key, -1)
            score = _score(intra, inter)
            _apply_class(intra, inter, key, +1)
            if best_score is None or score < best_score:
                best_key, best_score = key, score
        if best_key is None:
            raise GenerationError("ran out of removable customer pairs")
        chosen[best_key] += 1
        _apply_class(intra, inter, best_key, -1)

    for _ in range(MAX_EXCHANGE_ROUNDS):
        current = _score(intra, inter)
        move = None
        for src in sorted(k for k, v in chosen.items() if v > 0):
            for dst in sorted(available):
                if dst == src or available[dst] - chosen[dst] <= 0:
                    continue
                _apply_class(intra, inter, src, +1)
                _apply_class(intra, inter, dst, -1)
                score = _score(intra, inter)
                _apply_class(intra, inter, dst, +1)
                _apply_class(intra, inter, src, -1)
                if score < current:
                    move = (src, dst)
                    break
            if move:
                break
        if move is None:
            break
        src, dst = move
        chosen[src] -= 1
        chosen[dst] += 1
        _apply_class(intra, inter, src, +1)
        _apply_class(intra, inter, dst, -1)
    return chosen


def _split_pairs_and_singles(units: Sequence[ArcUnit], removal: int) -> Tuple[int, int]:
    pair_count = sum(1 for u in units if u.is_pair)
    single_count = len(units) - pair_count
    pairs = min(pair_count, removal // 2)
    singles = removal - 2 * pairs
    if singles > single_count:
        raise GenerationError(f"cannot remove {removal} arcs with {pair_count} pairs and {single_count} single arcs")
    return pairs, singles


def _longest_singles(instance: Instance, units: Sequence[ArcUnit], count: int) -> List[Arc]:
    singles = [u.arcs[0] for u in units if not u.is_pair]
    singles.sort(key=lambda a: (-instance.time(*a), a))
    return singles[:count]


def select_arcs_cpi(instance: Instance, clusters: ClusterAssignment, conflict: np.ndarray, keep: int,
                    protected: FrozenSet[Arc] = frozenset()) -> ArcSelection:
    """
    Keeps `keep` arcs of A-hat. Pairs between conflicting clusters go first,
    the remaining pair budget balances the intra/inter counters, and single
    depot arcs (longest first) only fill an odd or leftover budget.
    """
    units = _removable_units(instance, protected)
    removal = _removal_budget(instance, keep, units)
    pair_budget, single_budget = _split_pairs_and_singles(units, removal)

    by_class: Dict[ClassKey, List[Tuple[int, int]]] = defaultdict(list)
    for u in units:
        if u.is_pair:
            i, j = u.arcs[0]
            by_class[_class_key(clusters, i, j)].append((i, j))
    for pairs in by_class.values():
        pairs.sort()

    conflicting = {k: len(v) for k, v in by_class.items() if conflict[k[0], k[1]]}
    compatible = {k: len(v) for k, v in by_class.items() if not conflict[k[0], k[1]]}
    intra, inter = arc_counters(instance, clusters, ())

    take_conflicting = min(pair_budget, sum(conflicting.values()))
    chosen = dict(_greedy_classes(conflicting, take_conflicting, intra, inter))
    for key, count in _greedy_classes(compatible, pair_budget - take_conflicting, intra, inter).items():
        chosen[key] = chosen.get(key, 0) + count

    removed: List[Arc] = []
    for key in sorted(chosen):
        for i, j in by_class[key][:chosen[key]]:
            removed += [(i, j), (j, i)]
    removed += _longest_singles(instance, units, single_budget)

    violations, sigma, objective = cpi_objective(instance, clusters, conflict, removed)
    logger.debug(f"CPI removed {len(removed)} arcs: {violations} conflicting arcs kept, sigma={sigma}")
    return ArcSelection(method="CPI", removed=sorted(removed), kept_count=len(instance.arcs) - len(removed),
                        violations=violations, sigma=sigma, objective=objective)


# ==============================================================================
#  DPI: degree-based removal
# ==============================================================================

def out_degrees(instance: Instance, removed: Iterable[Arc]) -> Dict[int, int]:
    gone = set(removed)
    degrees = {k: 0 for k in [1] + list(instance.customers)}
    for i, j in instance.arcs:
        if (i, j) not in gone:
            degrees[i] += 1
    return degrees


def max_out_degree(instance: Instance, removed: Iterable[Arc]) -> int:
    return max(out_degrees(instance, removed).values())


def _tails(unit: ArcUnit) -> Tuple[int, ...]:
    return tuple(i for i, _ in unit.arcs)


def _degree_key(degrees: Dict[int, int]) -> Tuple[int, int]:
    top = max(degrees.values())
    return top, sum(1 for d in degrees.values() if d == top)


def _pick_unit(u: int, candidates: Sequence[ArcUnit], degrees: Dict[int, int], remaining: int) -> Optional[ArcUnit]:
    pairs = [c for c in candidates if c.is_pair and remaining >= 2]
    if pairs:
        def partner(c: ArcUnit) -> int:
            return c.arcs[0][1] if c.arcs[0][0] == u else c.arcs[0][0]
        return min(pairs, key=lambda c: (-degrees[partner(c)], partner(c)))
    singles = [c for c in candidates if not c.is_pair]
    return min(singles) if singles else None


def select_arcs_dpi(instance: Instance, keep: int, protected: FrozenSet[Arc] = frozenset()) -> ArcSelection:
    """
    Keeps `keep` arcs while flattening out-degrees: repeatedly strip a unit
    from the highest-degree node (lowest id on ties), preferring the pair
    whose partner also has the highest degree, then exchange removed and
    kept units of equal weight while the maximum degree or its multiplicity
    drops.
    """
    units = _removable_units(instance, protected)
    remaining = _removal_budget(instance, keep, units)
    degrees = out_degrees(instance, ())
    incident: Dict[int, List[ArcUnit]] = defaultdict(list)
    for unit in units:
        for tail in _tails(unit):
            incident[tail].append(unit)
    removed_units: Set[ArcUnit] = set()

    while remaining > 0:
        picked = None
        for u in sorted(degrees, key=lambda k: (-degrees[k], k)):
            candidates = [c for c in incident[u] if c not in removed_units and c.weight <= remaining]
            picked = _pick_unit(u, candidates, degrees, remaining)
            if picked is not None:
                break
        if picked is None:
            raise GenerationError(f"no removable arc unit fits the remaining budget of {remaining}")
        removed_units.add(picked)
        remaining -= picked.weight
        for tail in _tails(picked):
            degrees[tail] -= 1

    kept_units = [u for u in units if u not in removed_units]
    for _ in range(MAX_EXCHANGE_ROUNDS):
        current = _degree_key(degrees)
        move = None
        top = current[0]
        for drop in sorted(u for u in kept_units if any(degrees[t] == top for t in _tails(u))):
            for restore in sorted(removed_units):
                if restore.weight != drop.weight:
                    continue
                trial = dict(degrees)
                for t in _tails(drop):
                    trial[t] -= 1
                for t in _tails(restore):
                    trial[t] += 1
                if _degree_key(trial) < current:
                    move = (drop, restore, trial)
                    break
            if move:
                break
        if move is None:
            break
        drop, restore, degrees = move
        kept_units.remove(drop)
        kept_units.append(restore)
        removed_units.discard(restore)
        removed_units.add(drop)

    removed = sorted(a for unit in removed_units for a in unit.arcs)
    alpha = max(degrees.values())
    logger.debug(f"DPI removed {len(removed)} arcs, max out-degree {alpha}")
    return ArcSelection(method="DPI", removed=removed, kept_count=len(instance.arcs) - len(removed),
                        alpha=alpha, objective=float(alpha))
