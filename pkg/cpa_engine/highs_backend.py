import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse
from scipy.optimize import linprog

import config
from formulations.linear_model import Constraint, LinearModel
from .base_backend import BackendError, BaseLpBackend, LpResult

# scipy.optimize.linprog status codes
_STATUS = {0: "optimal", 2: "infeasible", 3: "unbounded"}


class HighsLpBackend(BaseLpBackend):
    """
    LP backend on scipy's HiGHS bindings. Every solve goes through
    `linprog` from scratch; matrices are rebuilt only after rows change.
    """

    def __init__(self, logger: Optional[logging.Logger] = None, method: str = config.DEFAULT_LP_METHOD):
        super().__init__(logger)
        self.method = method
        self._cost: Optional[np.ndarray] = None
        self._lower = np.zeros(0)
        self._upper = np.zeros(0)
        self._overrides: Dict[int, Tuple[float, float]] = {}
        self._ub_rows: List[Tuple[List[int], List[float], float]] = []
        self._eq_rows: List[Tuple[List[int], List[float], float]] = []
        self._matrices = None

    def load(self, model: LinearModel) -> None:
        size = model.num_variables
        self._cost = np.zeros(size)
        for idx, coef in model.objective.items():
            self._cost[idx] = -coef
        self._lower = np.array([v.lower for v in model.variables], dtype=float)
        self._upper = np.array([v.upper for v in model.variables], dtype=float)
        self._overrides = {}
        self._ub_rows, self._eq_rows = [], []
        self.add_rows(model.constraints)
        self.logger.debug(f"Loaded '{model.name}' into HiGHS ({size} columns, {self.num_rows} rows)")

    def add_rows(self, rows: Sequence[Constraint]) -> None:
        for row in rows:
            cols = list(row.coefficients.keys())
            vals = list(row.coefficients.values())
            if row.sense == "<=":
                self._ub_rows.append((cols, vals, row.rhs))
            elif row.sense == ">=":
                self._ub_rows.append((cols, [-v for v in vals], -row.rhs))
            else:
                self._eq_rows.append((cols, vals, row.rhs))
        if rows:
            self._matrices = None

    def set_bounds(self, bounds: Dict[int, Tuple[float, float]]) -> None:
        self._overrides = dict(bounds)

    @property
    def num_rows(self) -> int:
        return len(self._ub_rows) + len(self._eq_rows)

    def _assemble(self, rows, size):
        if not rows:
            return None, None
        data, row_ids, col_ids, rhs = [], [], [], []
        for r, (cols, vals, b) in enumerate(rows):
            row_ids.extend([r] * len(cols))
            col_ids.extend(cols)
            data.extend(vals)
            rhs.append(b)
        matrix = sparse.csr_matrix((data, (row_ids, col_ids)), shape=(len(rows), size))
        return matrix, np.array(rhs, dtype=float)

    def solve(self) -> LpResult:
        if self._cost is None:
            raise BackendError("no model loaded")
        size = self._cost.shape[0]
        if self._matrices is None:
            self._matrices = (*self._assemble(self._ub_rows, size), *self._assemble(self._eq_rows, size))
        a_ub, b_ub, a_eq, b_eq = self._matrices

        lower, upper = self._lower.copy(), self._upper.copy()
        for idx, (lo, hi) in self._overrides.items():
            lower[idx], upper[idx] = max(lower[idx], lo), min(upper[idx], hi)
        if np.any(lower > upper):
            return LpResult("infeasible", message="empty variable domain")

        try:
            res = linprog(self._cost, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq,
                          bounds=np.column_stack([lower, upper]), method=self.method)
        except ValueError as e:
            raise BackendError(f"HiGHS rejected the model: {e}") from e

        status = _STATUS.get(res.status, "error")
        if status != "optimal":
            return LpResult(status, message=res.message)
        return LpResult("optimal", objective=float(-res.fun), point=np.asarray(res.x, dtype=float), message=res.message)
