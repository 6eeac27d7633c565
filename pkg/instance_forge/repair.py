import logging
from typing import List, Optional, Tuple

import networkx as nx
from pydantic import BaseModel, Field

import config
from core_model.feasibility import duration_limit
from core_model.instance_schema import Arc, Instance


class UnrepairableInstanceError(RuntimeError):
    """A generated instance cannot visit some mandatory customer on its own route."""

    def __init__(self, message: str, report: "RepairReport"):
        super().__init__(message)
        self.report = report


class RepairReport(BaseModel):
    restored_arcs: List[Arc] = Field(default_factory=list)
    unreachable_mandatory: List[int] = Field(default_factory=list)
    warnings: List[str] = Field(default_factory=list)

    @property
    def changed(self) -> bool:
        return bool(self.restored_arcs)

    @property
    def repairable(self) -> bool:
        return not self.unreachable_mandatory


def ensure_feasible(instance: Instance, eps: float = config.EPS_FEAS,
                    logger: Optional[logging.Logger] = None) -> Tuple[Instance, RepairReport]:
    """
    Makes sure each mandatory customer k can be served by the direct route
    1 -> k -> n: restores (1, k) and (k, n) when they were removed and flags
    k when even the direct route is too long. Also warns when mutually
    incompatible mandatory customers need more routes than the fleet has.

    Only the two arcs of the direct route are restored: (k, 1) and (n, k)
    are not arcs of the graph, so there is no reverse to put back and a
    restoring repair shrinks |I| by at most 2 per mandatory customer. The
    generator never removes these arcs, so its instances come out unchanged.
    """
    logger = logger or logging.getLogger(__name__)
    n = instance.node_count
    report = RepairReport()
    removed = set(instance.physical)

    for k in instance.mandatory:
        for arc in ((1, k), (k, n)):
            if arc in removed:
                removed.discard(arc)
                report.restored_arcs.append(arc)
    limit = duration_limit(instance, eps)
    for k in instance.mandatory:
        if instance.time(1, k) + instance.service(k) + instance.time(k, n) > limit:
            report.unreachable_mandatory.append(k)

    if instance.variant == "PL" and instance.mandatory:
        conflicts = nx.Graph()
        conflicts.add_nodes_from(instance.mandatory)
        conflicts.add_edges_from((i, j) for i, j in instance.logical
                                 if i in instance.mandatory_set and j in instance.mandatory_set)
        largest = max(len(c) for c in nx.find_cliques(conflicts))
        if largest > instance.fleet_size:
            report.warnings.append(
                f"{largest} mutually incompatible mandatory customers need more than {instance.fleet_size} routes")

    repaired = instance
    if report.restored_arcs:
        logger.info(f"Restored depot arcs {report.restored_arcs} for mandatory customers")
        repaired = instance.evolve(physical=sorted(removed))
    for warning in report.warnings:
        logger.warning(warning)
    if report.unreachable_mandatory:
        logger.warning(f"Mandatory customers {report.unreachable_mandatory} exceed T_max even on a direct route")
    return repaired, report
