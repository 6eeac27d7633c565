from .schemes import GenScheme, GenerationError, all_schemes
from .mandatory import mandatory_count, select_mandatory
from .clustering import ClusterAssignment, cluster_customers, draw_cluster_incompatibility, kmeans
from .arc_selection import ArcSelection, removal_count, select_arcs_cpi, select_arcs_dpi, target_arc_count
from .logical import select_logical
from .service_times import assign_service_times
from .repair import RepairReport, UnrepairableInstanceError, ensure_feasible
from .generator import GenerationSummary, generate, summarize
from .manifest import ForgeJob, load_manifest, parse_manifest
