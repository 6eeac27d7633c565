import logging
from typing import Optional

from pydantic import BaseModel

import config
from core_model.instance_schema import Instance
from .arc_selection import protected_arcs, removal_count, select_arcs_cpi, select_arcs_dpi, target_arc_count
from .clustering import cluster_customers, draw_cluster_incompatibility
from .logical import logical_pair_target, select_logical
from .mandatory import select_mandatory
from .repair import UnrepairableInstanceError, ensure_feasible
from .schemes import GenScheme, GenerationError
from .service_times import assign_service_times

CLUSTER_STREAM = 0
SERVICE_STREAM = 1


class GenerationSummary(BaseModel):
    instance: str
    scheme: str
    seed: int
    nodes: int
    arcs: int
    mandatory: int
    physical: int
    logical: int
    status: str = "ok"


def generated_name(base: Instance, scheme: GenScheme) -> str:
    return f"{base.name}_{scheme.scheme_id}_s{scheme.seed}"


def generate(base: Instance, scheme: GenScheme, logger: Optional[logging.Logger] = None) -> Instance:
    """
    Builds a TOP-ST-MIN instance from a TOP instance: mandatory customers,
    removed arcs, logical pairs (PL only), service times, then the repair
    pass. A pure function of (base, scheme).
    """
    logger = logger or logging.getLogger(__name__)
    base = base.evolve(mandatory=[], physical=[], logical=[], variant="P", symmetric_physical=False)
    n = base.node_count

    # 1. 必选节点
    reachable = [k for k in base.customers if base.time(1, k) + base.time(k, n) <= base.t_max]
    mandatory = select_mandatory(base, scheme.mandatory, scheme.mandatory_fraction, candidates=reachable)

    # 2. 物理不兼容弧
    keep = target_arc_count(base, scheme.removal_fraction)
    protected = protected_arcs(base, mandatory)
    if scheme.physical == "CPI":
        if base.coordinates is None:
            raise GenerationError("cluster-based arc removal needs node coordinates")
        clusters = cluster_customers(base, scheme.cluster_count, config.KMEANS_MAX_ITERATIONS)
        conflict = draw_cluster_incompatibility(clusters.count, scheme.incompatibility_probability,
                                                scheme.rng(CLUSTER_STREAM))
        selection = select_arcs_cpi(base, clusters, conflict, keep, protected)
    else:
        selection = select_arcs_dpi(base, keep, protected)

    # 3. 逻辑不兼容
    logical = []
    if scheme.logical != "NONE":
        logical = select_logical(base, scheme.logical, scheme.logical_fraction,
                                 target=logical_pair_target(base.node_count, scheme.logical_fraction))

    # 4. 服务时间
    services, t_max = assign_service_times(base, scheme.rng(SERVICE_STREAM), scheme.service_share, scheme.tmax_stretch)

    instance = base.evolve(
        name=generated_name(base, scheme),
        mandatory=mandatory,
        physical=selection.removed,
        logical=logical,
        variant=scheme.variant,
        symmetric_physical=True,
        service_times=services,
        t_max=t_max,
    )
    instance, report = ensure_feasible(instance, logger=logger)
    if not report.repairable:
        raise UnrepairableInstanceError(
            f"{instance.name}: mandatory customers {report.unreachable_mandatory} cannot be served", report)
    logger.info(f"Generated {instance.name}: |M|={len(mandatory)} |I|={len(instance.physical)} "
                f"|C|={len(logical)} (target |I|={removal_count(base, scheme.removal_fraction)})")
    return instance


def summarize(instance: Instance, scheme: GenScheme, status: str = "ok") -> GenerationSummary:
    return GenerationSummary(
        instance=instance.name,
        scheme=scheme.scheme_id,
        seed=scheme.seed,
        nodes=instance.node_count,
        arcs=instance.node_count * (instance.node_count - 1),
        mandatory=len(instance.mandatory),
        physical=len(instance.physical),
        logical=len(instance.logical),
        status=status,
    )
