from __future__ import annotations

import math
from functools import cached_property
from typing import Any, Dict, FrozenSet, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

# ==============================================================================
#  实例模型 (Instance Model)
#  Node ids are 1-based: node 1 is the source, node n the destination and
#  2..n-1 are the customers.
# ==============================================================================

Arc = Tuple[int, int]


def euclidean_travel_times(coordinates: List[Tuple[float, float]]) -> List[List[float]]:
    """Full-precision Euclidean distance matrix, 0-based."""
    points = np.asarray(coordinates, dtype=float).reshape(-1, 2)
    diff = points[:, None, :] - points[None, :, :]
    return np.sqrt((diff ** 2).sum(axis=2)).tolist()


class Instance(BaseModel):
    """
    A TOP-ST-MIN instance: a complete directed travel-time matrix plus
    mandatory customers, physically removed arcs and logically incompatible
    customer pairs. Immutable once built; use `evolve` to derive variants.
    """
    model_config = ConfigDict(frozen=True)

    name: str = "instance"
    node_count: int = Field(..., ge=2)
    fleet_size: int = Field(..., ge=1)
    t_max: float = Field(..., ge=0.0)
    profits: List[float]
    service_times: List[float]
    coordinates: Optional[List[Tuple[float, float]]] = None
    travel_times: List[List[float]] = Field(default_factory=list)
    mandatory: List[int] = Field(default_factory=list)
    physical: List[Arc] = Field(default_factory=list)
    logical: List[Arc] = Field(default_factory=list)
    variant: Literal["P", "PL"] = "P"
    symmetric_physical: bool = False
    # Reduction instances compare durations against T_max without slack.
    exact_feasibility: bool = False

    @model_validator(mode="before")
    @classmethod
    def _normalize(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        data = dict(data)
        if not data.get("travel_times") and data.get("coordinates") is not None:
            data["travel_times"] = euclidean_travel_times(data["coordinates"])
        if "mandatory" in data:
            data["mandatory"] = sorted(set(int(k) for k in data["mandatory"]))
        if "physical" in data:
            data["physical"] = sorted(set((int(i), int(j)) for i, j in data["physical"]))
        if "logical" in data:
            data["logical"] = sorted(set((min(int(i), int(j)), max(int(i), int(j))) for i, j in data["logical"]))
        return data

    @model_validator(mode="after")
    def _check_invariants(self) -> "Instance":
        n = self.node_count
        if len(self.profits) != n or len(self.service_times) != n:
            raise ValueError(f"profits and service_times must have {n} entries")
        if self.coordinates is not None and len(self.coordinates) != n:
            raise ValueError(f"coordinates must have {n} entries")
        if len(self.travel_times) != n or any(len(row) != n for row in self.travel_times):
            raise ValueError(f"travel_times must be a {n}x{n} matrix")
        for label, values in (("profit", self.profits), ("service time", self.service_times)):
            if any(v < 0 or math.isnan(v) for v in values):
                raise ValueError(f"every {label} must be non-negative")
        if any(t < 0 or math.isnan(t) for row in self.travel_times for t in row):
            raise ValueError("travel times must be non-negative")
        for depot in (0, n - 1):
            if self.profits[depot] != 0 or self.service_times[depot] != 0:
                raise ValueError(f"node {depot + 1} is a depot and must have zero profit and service time")

        customers = set(self.customers)
        unknown = [k for k in self.mandatory if k not in customers]
        if unknown:
            raise ValueError(f"mandatory nodes {unknown} are not customers")
        stray = [a for a in self.physical if a not in self.arc_set]
        if stray:
            raise ValueError(f"physically incompatible arcs {stray[:5]} are not arcs of the graph")
        bad_pairs = [p for p in self.logical if p[0] == p[1] or p[0] not in customers or p[1] not in customers]
        if bad_pairs:
            raise ValueError(f"logical pairs {bad_pairs[:5]} must join two distinct customers")
        if self.symmetric_physical:
            asym = [(i, j) for i, j in self.physical if (j, i) in self.arc_set and (j, i) not in self.physical_set]
            if asym:
                raise ValueError(f"physical incompatibilities are flagged symmetric but {asym[:5]} lack their reverse")
        return self

    # --- 结构访问 ---

    @property
    def source(self) -> int:
        return 1

    @property
    def destination(self) -> int:
        return self.node_count

    @cached_property
    def customers(self) -> Tuple[int, ...]:
        return tuple(range(2, self.node_count))

    @cached_property
    def arcs(self) -> Tuple[Arc, ...]:
        """The arc set A-hat in lexicographic order."""
        n = self.node_count
        tails = [1] + list(self.customers)
        heads = list(self.customers) + [n]
        return tuple((i, j) for i in tails for j in heads if i != j)

    @cached_property
    def arc_set(self) -> FrozenSet[Arc]:
        return frozenset(self.arcs)

    @cached_property
    def physical_set(self) -> FrozenSet[Arc]:
        return frozenset(self.physical)

    @cached_property
    def logical_set(self) -> FrozenSet[Arc]:
        return frozenset(self.logical)

    @cached_property
    def mandatory_set(self) -> FrozenSet[int]:
        return frozenset(self.mandatory)

    @cached_property
    def allowed_arcs(self) -> Tuple[Arc, ...]:
        return tuple(a for a in self.arcs if a not in self.physical_set)

    @cached_property
    def logical_partners(self) -> Dict[int, FrozenSet[int]]:
        partners: Dict[int, set] = {k: set() for k in self.customers}
        for i, j in self.logical:
            partners[i].add(j)
            partners[j].add(i)
        return {k: frozenset(v) for k, v in partners.items()}

    def time(self, i: int, j: int) -> float:
        return self.travel_times[i - 1][j - 1]

    def service(self, k: int) -> float:
        return self.service_times[k - 1]

    def profit(self, k: int) -> float:
        return self.profits[k - 1]

    def is_arc(self, i: int, j: int) -> bool:
        return (i, j) in self.arc_set

    def is_allowed(self, i: int, j: int) -> bool:
        return (i, j) in self.arc_set and (i, j) not in self.physical_set

    def incompatible(self, i: int, j: int) -> bool:
        if self.variant != "PL":
            return False
        return (min(i, j), max(i, j)) in self.logical_set

    def travel_matrix(self) -> np.ndarray:
        """(n+1)x(n+1) matrix indexed by node id; row and column 0 unused."""
        matrix = np.zeros((self.node_count + 1, self.node_count + 1))
        matrix[1:, 1:] = np.asarray(self.travel_times, dtype=float)
        return matrix

    def evolve(self, **changes: Any) -> "Instance":
        """Returns a re-validated copy with the given fields replaced."""
        data = self.model_dump()
        data.update(changes)
        if "coordinates" in changes and "travel_times" not in changes:
            data["travel_times"] = []
        return type(self).model_validate(data)
