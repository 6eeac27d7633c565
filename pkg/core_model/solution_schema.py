from __future__ import annotations

from typing import Annotated, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field

# ==============================================================================
#  路线与解 (Routes and Solutions)
# ==============================================================================


class Route(BaseModel):
    """A 1 -> n node sequence with its cached duration."""
    nodes: List[int] = Field(..., min_length=2)
    duration: Optional[float] = None

    @property
    def customers(self) -> List[int]:
        return self.nodes[1:-1]

    @property
    def arcs(self) -> List[Tuple[int, int]]:
        return list(zip(self.nodes[:-1], self.nodes[1:]))


# ==============================================================================
#  可行性违规 (Feasibility violations)
# ==============================================================================

class DurationExceeded(BaseModel):
    type: Literal["duration-exceeded"] = "duration-exceeded"
    route_index: int
    duration: float
    t_max: float

    def describe(self) -> str:
        return f"route {self.route_index}: duration {self.duration:.6f} exceeds T_max {self.t_max:.6f}"


class MandatoryMissing(BaseModel):
    type: Literal["mandatory-missing"] = "mandatory-missing"
    node: int

    def describe(self) -> str:
        return f"mandatory customer {self.node} is not visited"


class Revisit(BaseModel):
    type: Literal["revisit"] = "revisit"
    node: int

    def describe(self) -> str:
        return f"customer {self.node} is visited more than once"


class PhysicalArc(BaseModel):
    type: Literal["physical-arc"] = "physical-arc"
    route_index: int
    arc: Tuple[int, int]

    def describe(self) -> str:
        return f"route {self.route_index}: uses physically incompatible arc {self.arc}"


class LogicalPair(BaseModel):
    type: Literal["logical-pair"] = "logical-pair"
    route_index: int
    pair: Tuple[int, int]

    def describe(self) -> str:
        return f"route {self.route_index}: serves logically incompatible pair {self.pair}"


class BadEndpoint(BaseModel):
    type: Literal["bad-endpoint"] = "bad-endpoint"
    route_index: int
    detail: str

    def describe(self) -> str:
        return f"route {self.route_index}: {self.detail}"


Violation = Annotated[
    Union[DurationExceeded, MandatoryMissing, Revisit, PhysicalArc, LogicalPair, BadEndpoint],
    Field(discriminator="type"),
]


class FeasibilityReport(BaseModel):
    violations: List[Violation] = Field(default_factory=list)

    @property
    def is_feasible(self) -> bool:
        return not self.violations

    def kinds(self) -> List[str]:
        return sorted({v.type for v in self.violations})


class Solution(BaseModel):
    """
    A multiset of exactly m routes with its collected profit. `status` is
    filled by feasibility checking; `reasons` carries the violation texts.
    """
    routes: List[Route] = Field(default_factory=list)
    profit: float = 0.0
    status: Literal["feasible", "infeasible", "unchecked"] = "unchecked"
    reasons: List[str] = Field(default_factory=list)

    def visited_customers(self) -> List[int]:
        return sorted({k for route in self.routes for k in route.customers})
