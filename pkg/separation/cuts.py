from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Literal, Optional, Sequence, Tuple

import numpy as np

import config
from core_model.instance_schema import Instance
from formulations.linear_model import Constraint, VariableMap

CutFamily = Literal["RI", "SI", "SPI-L", "SPI-R", "SEC", "LI"]


@dataclass(frozen=True)
class Cut:
    """A violated `coefficients . x <= rhs` row and the node sequence it came from."""
    family: CutFamily
    coefficients: Tuple[Tuple[int, float], ...]
    rhs: float
    witness: Tuple[int, ...]
    violation: float

    @property
    def report_family(self) -> str:
        return "SPI" if self.family.startswith("SPI") else self.family

    @property
    def key(self) -> tuple:
        return self.family, self.coefficients, self.rhs

    def to_constraint(self) -> Constraint:
        name = f"{self.family}_" + "_".join(str(k) for k in self.witness)
        return Constraint(dict(self.coefficients), "<=", self.rhs, f"cut:{self.report_family}", name)


def make_cut(family: CutFamily, coefficients: Dict[int, float], rhs: float, witness: Iterable[int],
             point: Sequence[float]) -> Cut:
    coefs = tuple(sorted((idx, float(c)) for idx, c in coefficients.items() if c != 0.0))
    lhs = sum(c * point[idx] for idx, c in coefs)
    return Cut(family, coefs, float(rhs), tuple(witness), float(lhs - rhs))


def internal_arc_coefficients(node_set: Iterable[int], variable_map: VariableMap) -> Dict[int, float]:
    """+1 on x_ij for every arc with both ends in the set."""
    nodes = sorted(set(node_set))
    coefs: Dict[int, float] = {}
    for i in nodes:
        for j in nodes:
            idx = variable_map.x(i, j) if i != j else None
            if idx is not None:
                coefs[idx] = coefs.get(idx, 0.0) + 1.0
    return coefs


@dataclass
class SeparationContext:
    """Per-solve state shared by the separation routines."""
    instance: Instance
    variable_map: VariableMap
    closure: np.ndarray
    families: FrozenSet[str] = frozenset(config.CUT_FAMILIES)
    viol_tol: float = config.VIOL_TOL
    support_tol: float = config.SUPPORT_TOL
    eps_feas: float = config.EPS_FEAS
    max_routes: int = config.MAX_ROUTES_PER_ROUND
    max_cycles: int = config.MAX_CYCLES_PER_ROUND
    bound_cache: Dict[FrozenSet[int], float] = field(default_factory=dict)

    @property
    def duration_limit(self) -> float:
        if self.instance.exact_feasibility:
            return self.instance.t_max
        return self.instance.t_max + self.eps_feas

    def block_time(self, path: Sequence[int]) -> float:
        """Service of every node on the path plus travel along it."""
        inst = self.instance
        total = sum(inst.service(k) for k in path)
        total += sum(inst.time(i, j) for i, j in zip(path[:-1], path[1:]))
        return total

    def closure_duration(self, path: Sequence[int]) -> float:
        """Cheapest duration of any route that traverses `path` as a contiguous block."""
        n = self.instance.node_count
        return float(self.closure[1, path[0]] + self.block_time(path) + self.closure[path[-1], n])

    def is_violated(self, cut: Optional[Cut]) -> bool:
        return cut is not None and cut.violation > self.viol_tol

    def enabled(self, family: str) -> bool:
        return family in self.families


def select_cuts(cuts: List[Cut], limit: int) -> List[Cut]:
    """Deduplicates and keeps the `limit` most violated cuts, stable on ties."""
    unique: Dict[tuple, Cut] = {}
    for cut in cuts:
        if cut.key not in unique:
            unique[cut.key] = cut
    ranked = sorted(enumerate(unique.values()), key=lambda item: (-item[1].violation, item[0]))
    return [cut for _, cut in ranked[:limit]]
