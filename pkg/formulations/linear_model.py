from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterator, List, Literal, Optional, Sequence, Tuple

import numpy as np

VarKind = Literal["binary", "integer", "continuous"]
Sense = Literal["<=", ">=", "=="]
Tag = Tuple[Hashable, ...]


class ModelBuildError(ValueError):
    """Raised when a model is assembled from an inconsistent description."""


@dataclass(frozen=True)
class Variable:
    index: int
    name: str
    kind: VarKind
    lower: float
    upper: float
    tag: Tag


@dataclass
class Constraint:
    """sum(coef * var) <sense> rhs. `group` records provenance."""
    coefficients: Dict[int, float]
    sense: Sense
    rhs: float
    group: str
    name: str = ""

    def activity(self, point: Sequence[float]) -> float:
        return float(sum(coef * point[idx] for idx, coef in self.coefficients.items()))

    def violation(self, point: Sequence[float]) -> float:
        """How far the point is from satisfying the row (0 when satisfied)."""
        lhs = self.activity(point)
        if self.sense == "<=":
            return max(0.0, lhs - self.rhs)
        if self.sense == ">=":
            return max(0.0, self.rhs - lhs)
        return abs(lhs - self.rhs)


class VariableMap:
    """Bidirectional map between column indices and structured tags such as ("x", i, j)."""

    def __init__(self, formulation: str, fleet_size: int):
        self.formulation = formulation
        self.fleet_size = fleet_size
        self._index_of: Dict[Tag, int] = {}
        self._tags: List[Tag] = []

    def register(self, tag: Tag) -> int:
        if tag in self._index_of:
            raise ModelBuildError(f"variable {tag} registered twice")
        self._index_of[tag] = len(self._tags)
        self._tags.append(tag)
        return self._index_of[tag]

    def get(self, tag: Tag) -> Optional[int]:
        return self._index_of.get(tag)

    def __getitem__(self, tag: Tag) -> int:
        return self._index_of[tag]

    def __contains__(self, tag: Tag) -> bool:
        return tag in self._index_of

    def __len__(self) -> int:
        return len(self._tags)

    def tag(self, index: int) -> Tag:
        return self._tags[index]

    def items(self) -> Iterator[Tuple[Tag, int]]:
        return iter(self._index_of.items())

    def family(self, prefix: str) -> List[Tuple[Tag, int]]:
        return [(tag, idx) for tag, idx in self._index_of.items() if tag[0] == prefix]

    # compact-model shortcuts
    def x(self, i: int, j: int) -> Optional[int]:
        return self._index_of.get(("x", i, j))

    def y(self, k: int) -> Optional[int]:
        return self._index_of.get(("y", k))


@dataclass
class LinearModel:
    """A maximisation MILP: columns with bounds and kinds, linear rows, linear objective."""
    name: str
    variable_map: VariableMap
    variables: List[Variable] = field(default_factory=list)
    objective: Dict[int, float] = field(default_factory=dict)
    constraints: List[Constraint] = field(default_factory=list)

    def add_variable(self, tag: Tag, name: str, kind: VarKind, lower: float = 0.0,
                     upper: float = np.inf, objective: float = 0.0) -> int:
        if lower > upper:
            raise ModelBuildError(f"variable {name} has empty domain [{lower}, {upper}]")
        index = self.variable_map.register(tag)
        self.variables.append(Variable(index, name, kind, float(lower), float(upper), tag))
        if objective:
            self.objective[index] = float(objective)
        return index

    def add_constraint(self, coefficients: Dict[int, float], sense: Sense, rhs: float,
                       group: str, name: str = "") -> Constraint:
        coefficients = {idx: float(c) for idx, c in coefficients.items() if c != 0.0}
        for idx in coefficients:
            if not 0 <= idx < len(self.variables):
                raise ModelBuildError(f"row {name or group} references unknown column {idx}")
        row = Constraint(coefficients, sense, float(rhs), group, name or f"{group}_{len(self.constraints)}")
        self.constraints.append(row)
        return row

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    def integer_indices(self) -> List[int]:
        return [v.index for v in self.variables if v.kind != "continuous"]

    def group_counts(self) -> Counter:
        return Counter(row.group for row in self.constraints)

    def objective_value(self, point: Sequence[float]) -> float:
        return float(sum(c * point[idx] for idx, c in self.objective.items()))

    def max_violation(self, point: Sequence[float]) -> float:
        worst = max((row.violation(point) for row in self.constraints), default=0.0)
        for v in self.variables:
            worst = max(worst, v.lower - point[v.index], point[v.index] - v.upper)
        return worst


def log_model_summary(model: LinearModel, logger: logging.Logger) -> None:
    groups = ", ".join(f"{g}={c}" for g, c in sorted(model.group_counts().items()))
    logger.debug(f"Model '{model.name}': {model.num_variables} columns, {len(model.constraints)} rows ({groups})")
