from .linear_model import Constraint, LinearModel, ModelBuildError, Variable, VariableMap
from .compact import build_compact
from .mixed import build_mixed
from .extraction import ExtractionError, extract_solution
from .lp_writer import write_lp
