"""
Mandatory customer selection as a diversity problem: SM spreads the
mandatory customers apart (maximum total pairwise distance), CM packs them
together (minimum). Greedy construction followed by first-improvement swaps.
"""
import math
from typing import List, Optional, Sequence

import numpy as np

from core_model.instance_schema import Instance
from .schemes import GenerationError, MandatoryMethod, generation_distances

MAX_SWAP_PASSES = 1000


def mandatory_count(customer_count: int, fraction: float) -> int:
    """Round-half-up of fraction * |N-hat|."""
    return int(math.floor(fraction * customer_count + 0.5))


def diversity_value(dist: np.ndarray, chosen: Sequence[int]) -> float:
    chosen = list(chosen)
    return float(sum(dist[a, b] for pos, a in enumerate(chosen) for b in chosen[pos + 1:]))


def diverse_subset(dist: np.ndarray, candidates: Sequence[int], count: int, maximize: bool) -> List[int]:
    """
    Greedy + swap for the max (or min) diversity problem over `candidates`.
    Ties always go to the lowest id, so the result is deterministic.
    """
    candidates = sorted(candidates)
    if count > len(candidates):
        raise GenerationError(f"cannot choose {count} of {len(candidates)} candidates")
    if count <= 0:
        return []
    sign = 1.0 if maximize else -1.0

    if count == 1:
        totals = [(sign * sum(dist[k, o] for o in candidates if o != k), -k) for k in candidates]
        return [-max(totals)[1]]

    best_pair, best_score = None, -math.inf
    for pos, a in enumerate(candidates):
        for b in candidates[pos + 1:]:
            score = sign * dist[a, b]
            if score > best_score:
                best_pair, best_score = (a, b), score
    chosen = list(best_pair)

    while len(chosen) < count:
        pick, pick_score = None, -math.inf
        for k in candidates:
            if k in chosen:
                continue
            score = sign * sum(dist[k, c] for c in chosen)
            if score > pick_score:
                pick, pick_score = k, score
        chosen.append(pick)

    for _ in range(MAX_SWAP_PASSES):
        swapped = False
        for out in sorted(chosen):
            rest = [c for c in chosen if c != out]
            current = sign * sum(dist[out, c] for c in rest)
            for k in candidates:
                if k in chosen:
                    continue
                if sign * sum(dist[k, c] for c in rest) > current + 1e-12:
                    chosen = rest + [k]
                    swapped = True
                    break
            if swapped:
                break
        if not swapped:
            break
    return sorted(chosen)


def select_mandatory(instance: Instance, method: MandatoryMethod, fraction: float,
                     candidates: Optional[Sequence[int]] = None) -> List[int]:
    """
    |M| follows from all customers; `candidates` narrows where they may be
    placed (the generator passes customers a direct route can reach).
    """
    count = mandatory_count(len(instance.customers), fraction)
    if count < 1:
        raise GenerationError(f"{fraction} of {len(instance.customers)} customers rounds to no mandatory customer")
    dist = generation_distances(instance)
    pool = instance.customers if candidates is None else candidates
    return diverse_subset(dist, pool, count, maximize=(method == "SM"))
