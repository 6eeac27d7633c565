from .dto import Fixings, ProgressPoint, SolveResult, SolverConfig
from .base_backend import BackendError, BaseLpBackend, LpResult
from .highs_backend import HighsLpBackend
from .preprocessing import fixing_rows, preprocess
from .branch_and_cut import BranchAndCutSolver, solve, solve_mixed
from .config_loader import ConfigError, load_solver_config
