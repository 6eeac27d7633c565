from .support_graph import SeparationContractError, SupportGraph, build_support_graph
from .enumeration import CycleSet, RouteSet, enumerate_elementary_cycles, enumerate_routes
from .cuts import Cut, SeparationContext, make_cut, select_cuts
from .route_cuts import separate_route_inequality, separate_set_inequality
from .subpath_cuts import extension_sets, separate_subpath_inequalities
from .logical_cuts import separate_logical_inequalities
from .subtour_cuts import separate_secs, subtour_cut
from .separator import SeparationRound, separate_point
from .cut_log import render_cut_log
