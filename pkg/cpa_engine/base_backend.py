import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, Literal, Optional, Sequence, Tuple

import numpy as np

from formulations.linear_model import Constraint, LinearModel

LpStatus = Literal["optimal", "infeasible", "unbounded", "error"]


class BackendError(RuntimeError):
    """The LP backend failed for a reason other than infeasibility."""


@dataclass
class LpResult:
    status: LpStatus
    objective: Optional[float] = None
    point: Optional[np.ndarray] = None
    message: str = ""


class BaseLpBackend(ABC):
    """
    LP relaxation oracle used by the branch-and-cut engine. Rows appended
    with `add_rows` stay for the rest of the solve; `set_bounds` replaces
    the node-local bound overrides of the previous call.
    """

    def __init__(self, logger: Optional[logging.Logger] = None):
        self.logger = logger or logging.getLogger(self.__class__.__name__)

    @abstractmethod
    def load(self, model: LinearModel) -> None:
        pass

    @abstractmethod
    def add_rows(self, rows: Sequence[Constraint]) -> None:
        pass

    @abstractmethod
    def set_bounds(self, bounds: Dict[int, Tuple[float, float]]) -> None:
        pass

    @abstractmethod
    def solve(self) -> LpResult:
        """Solves the maximisation relaxation with the current rows and bounds."""
        pass

    @property
    @abstractmethod
    def num_rows(self) -> int:
        pass
