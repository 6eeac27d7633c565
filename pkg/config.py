# config.py
"""
Configuration settings for the TOP-ST-MIN toolkit.
"""

# --- Numerical tolerances ---
# Feasibility slack on route durations (delta_r <= T_max + EPS_FEAS).
EPS_FEAS = 1e-6
# Arcs of the support graph carry x-bar > SUPPORT_TOL.
SUPPORT_TOL = 1e-6
# A cut is reported only when lhs - rhs > VIOL_TOL.
VIOL_TOL = 1e-6
# A variable counts as integral when within INTEGRALITY_TOL of an integer.
INTEGRALITY_TOL = 1e-6
# Fractions below this are treated as exact when a point within INTEGRALITY_TOL is rejected.
RESIDUAL_FRACTION_TOL = 1e-12
# Relative gap under which a node is pruned against the incumbent.
PRUNE_TOL = 1e-6

# --- Branch-and-cut limits ---
DEFAULT_TIME_LIMIT_SECONDS = 7200.0
DEFAULT_NODE_LIMIT = 1_000_000
MAX_CUT_ROUNDS_PER_NODE = 20
MAX_CUTS_PER_ROUND = 200
# Options: "most-fractional"
DEFAULT_BRANCHING_RULE = "most-fractional"
# Options: "highs-ds", "highs-ipm", "highs"
DEFAULT_LP_METHOD = "highs-ds"

# --- Separation caps ---
MAX_ROUTES_PER_ROUND = 5000
MAX_CYCLES_PER_ROUND = 5000

# --- 1-tree subgradient bound ---
SUBGRADIENT_ITERATIONS = 50
SUBGRADIENT_STALL_HALVING = 10
SUBGRADIENT_DEGREE_WEIGHT = 0.7

# Cut family identifiers, in the order they are reported.
CUT_FAMILIES = ["RI", "SI", "SPI", "SEC", "LI"]

# --- Instance generation ---
MANDATORY_FRACTION = 0.05
PHYSICAL_REMOVAL_FRACTION = 0.2
LOGICAL_FRACTION = 0.05
# Number of logical pairs per base-set shape (node count -> |C|) at the default fraction.
# Other shapes keep every pair produced by the per-customer partner count.
LOGICAL_PAIR_TARGETS = {21: 10, 32: 30, 33: 30, 64: 100, 66: 86, 100: 230, 102: 240}
CLUSTER_COUNT = 3
KMEANS_MAX_ITERATIONS = 100
CLUSTER_INCOMPATIBILITY_PROBABILITY = 0.5
# Total service time is SERVICE_SHARE * m * T_max before the stretch.
SERVICE_SHARE = 0.5
TMAX_STRETCH = 1.5

# --- Oracle guard ---
ORACLE_MAX_CUSTOMERS = 10
ORACLE_MAX_VEHICLES = 3

# --- Benchmark grouping by node count ---
SMALL_GROUP_MAX_NODES = 33
MEDIUM_GROUP_MAX_NODES = 66

# --- CLI / output ---
CONFIG_ENV_VAR = "TOPSTMIN_CONFIG"
DEFAULT_OUTPUT_DIR = "BenchOutputs"
DEFAULT_BENCH_WORKERS = 1
INSTANCE_FILE_SUFFIXES = [".txt", ".top", ".topstmin"]
PROFIT_DECIMALS = 2

# Directory for log files
LOGS_DIR = "logs"
