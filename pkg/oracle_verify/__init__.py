from .brute_force import OracleGuardError, OracleResult, brute_force_solve, brute_force_tsp_path
from .maxflow_separation import separate_secs_maxflow
from .hpp_reduction import has_hamiltonian_path, hpp_reduce
