# 求解器的数据契约
from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, field_validator

import config
from core_model.solution_schema import Solution

SolveStatus = Literal["OPT", "NO-OPT", "INFS", "NO-SOLS"]


def empty_cut_counts() -> Dict[str, int]:
    return {family: 0 for family in config.CUT_FAMILIES}


class SolverConfig(BaseModel):
    """Every knob of the branch-and-cut engine; defaults come from config.py."""
    formulation: Literal["compact", "mixed"] = "compact"
    cut_families: List[str] = Field(default_factory=lambda: list(config.CUT_FAMILIES))
    time_limit: float = Field(config.DEFAULT_TIME_LIMIT_SECONDS, gt=0)
    node_limit: int = Field(config.DEFAULT_NODE_LIMIT, ge=1)
    eps_feas: float = Field(config.EPS_FEAS, ge=0)
    support_tol: float = Field(config.SUPPORT_TOL, ge=0)
    viol_tol: float = Field(config.VIOL_TOL, ge=0)
    integrality_tol: float = Field(config.INTEGRALITY_TOL, ge=0)
    prune_tol: float = Field(config.PRUNE_TOL, ge=0)
    max_cut_rounds: int = Field(config.MAX_CUT_ROUNDS_PER_NODE, ge=0)
    max_cuts_per_round: int = Field(config.MAX_CUTS_PER_ROUND, ge=1)
    max_routes: int = Field(config.MAX_ROUTES_PER_ROUND, ge=1)
    max_cycles: int = Field(config.MAX_CYCLES_PER_ROUND, ge=1)
    branching_rule: Literal["most-fractional"] = config.DEFAULT_BRANCHING_RULE
    lp_method: Literal["highs-ds", "highs-ipm", "highs"] = config.DEFAULT_LP_METHOD
    preprocessing: bool = True
    deterministic: bool = False
    keep_cut_log: bool = False

    @field_validator("cut_families")
    @classmethod
    def _known_families(cls, families: List[str]) -> List[str]:
        unknown = [f for f in families if f not in config.CUT_FAMILIES]
        if unknown:
            raise ValueError(f"unknown cut families {unknown}; choose from {config.CUT_FAMILIES}")
        return [f for f in config.CUT_FAMILIES if f in families]


class Fixings(BaseModel):
    """Variables preprocessing proves to be zero in every feasible solution."""
    unreachable_nodes: List[int] = Field(default_factory=list)
    removed_arcs: List[Tuple[int, int]] = Field(default_factory=list)
    unreachable_mandatory: List[int] = Field(default_factory=list)

    @property
    def proves_infeasible(self) -> bool:
        return bool(self.unreachable_mandatory)


class ProgressPoint(BaseModel):
    nodes: int
    incumbent: Optional[float] = None
    bound: Optional[float] = None


class SolveResult(BaseModel):
    instance: str
    variant: Literal["P", "PL"]
    formulation: Literal["compact", "mixed"]
    status: SolveStatus
    solution: Optional[Solution] = None
    profit: Optional[float] = None
    bound: Optional[float] = None
    gap: Optional[float] = None
    root_bound: Optional[float] = None
    nodes: int = 0
    time_seconds: float = 0.0
    cut_counts: Dict[str, int] = Field(default_factory=empty_cut_counts)
    fixings: Fixings = Field(default_factory=Fixings)
    progress: List[ProgressPoint] = Field(default_factory=list)
    cut_log: Optional[str] = None

    @property
    def limit_hit(self) -> bool:
        return self.status in ("NO-OPT", "NO-SOLS")
