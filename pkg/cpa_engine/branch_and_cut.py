"""
LP-based branch-and-cut on the TOP-ST-MIN formulations.

Nodes are explored best-bound first with depth-first plunging: after a
branching the up-child is processed next and its sibling waits in the
heap. At each node the relaxation is re-solved after every separation
round until the point is integral, no violated cut is found, the node is
dominated by the incumbent, or the round cap is reached.
"""
import heapq
import itertools
import logging
import math
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

import config
from core_model.feasibility import shortest_travel_times
from core_model.instance_schema import Instance
from core_model.solution_schema import Solution
from formulations.compact import build_compact
from formulations.extraction import ExtractionError, extract_solution
from formulations.linear_model import LinearModel
from formulations.mixed import build_mixed
from separation.cut_log import render_cut_log
from separation.cuts import Cut, SeparationContext
from separation.separator import separate_point
from .base_backend import BackendError, BaseLpBackend
from .dto import Fixings, ProgressPoint, SolveResult, SolverConfig, empty_cut_counts
from .highs_backend import HighsLpBackend
from .preprocessing import fixing_rows, preprocess


@dataclass
class _Node:
    bound: float
    depth: int
    bounds: Dict[int, Tuple[float, float]] = field(default_factory=dict)


class BranchAndCutSolver:
    def __init__(self, solver_config: Optional[SolverConfig] = None, logger: Optional[logging.Logger] = None,
                 backend_factory: Optional[Callable[[], BaseLpBackend]] = None):
        self.config = solver_config or SolverConfig()
        self.logger = logger or logging.getLogger(__name__)
        self._backend_factory = backend_factory or (lambda: HighsLpBackend(self.logger, self.config.lp_method))

    # --- 入口 ---

    def solve(self, instance: Instance) -> SolveResult:
        """Compact model with the enabled cut families separated at every node."""
        return self._solve(instance, "compact", with_cuts=True)

    def solve_mixed(self, instance: Instance) -> SolveResult:
        """Route-indexed model, plain branch-and-bound."""
        return self._solve(instance, "mixed", with_cuts=False)

    def _solve(self, instance: Instance, formulation: str, with_cuts: bool) -> SolveResult:
        cfg = self.config
        started = time.perf_counter()
        self.logger.info(f"Solving {instance.name} ({instance.variant}, n={instance.node_count}, "
                         f"m={instance.fleet_size}) with the {formulation} model")

        closure = shortest_travel_times(instance)
        fixings = preprocess(instance, closure, cfg.eps_feas) if cfg.preprocessing else Fixings()
        if fixings.proves_infeasible:
            return SolveResult(instance=instance.name, variant=instance.variant, formulation=formulation,
                               status="INFS", fixings=fixings, time_seconds=time.perf_counter() - started)

        model = build_compact(instance) if formulation == "compact" else build_mixed(instance)
        for row in fixing_rows(fixings, model.variable_map):
            model.add_constraint(row.coefficients, row.sense, row.rhs, row.group, row.name)

        context = None
        if with_cuts and cfg.cut_families and cfg.max_cut_rounds > 0:
            context = SeparationContext(
                instance=instance, variable_map=model.variable_map, closure=closure,
                families=frozenset(cfg.cut_families), viol_tol=cfg.viol_tol, support_tol=cfg.support_tol,
                eps_feas=cfg.eps_feas, max_routes=cfg.max_routes, max_cycles=cfg.max_cycles,
            )

        result = _TreeSearch(instance, model, context, cfg, self._backend_factory(), self.logger, started).run()
        result.formulation = formulation
        result.fixings = fixings
        self.logger.info(f"{instance.name}: {result.status} profit={result.profit} bound={result.bound} "
                         f"nodes={result.nodes} time={result.time_seconds:.2f}s cuts={result.cut_counts}")
        return result


class _TreeSearch:
    def __init__(self, instance: Instance, model: LinearModel, context: Optional[SeparationContext],
                 cfg: SolverConfig, backend: BaseLpBackend, logger: logging.Logger, started: float):
        self.instance = instance
        self.model = model
        self.context = context
        self.cfg = cfg
        self.backend = backend
        self.logger = logger
        self.started = started
        self.deadline = started + cfg.time_limit

        vmap = model.variable_map
        self.integer_indices = np.array(model.integer_indices(), dtype=int)
        self.branch_order = [
            [idx for tag, idx in vmap.items() if tag[0] == "y"],
            [idx for tag, idx in vmap.items() if tag[0] == "x"],
            [idx for tag, idx in vmap.items() if tag[0] not in ("x", "y")
             and model.variables[idx].kind != "continuous"],
        ]

        self.incumbent: Optional[Solution] = None
        self.incumbent_value = -math.inf
        self.cut_counts: Counter = Counter()
        self.cut_rounds: List[List[Cut]] = []
        self.progress: List[ProgressPoint] = []
        self.nodes = 0
        self.root_bound: Optional[float] = None

    # --- 辅助 ---

    def _dominated(self, bound: float) -> bool:
        if self.incumbent is None:
            return False
        return bound <= self.incumbent_value + self.cfg.prune_tol * max(1.0, abs(self.incumbent_value))

    def _is_integral(self, point: np.ndarray) -> bool:
        values = point[self.integer_indices]
        return bool(np.all(np.abs(values - np.round(values)) <= self.cfg.integrality_tol))

    def _branching_variable(self, point: np.ndarray, tol: Optional[float] = None) -> Optional[int]:
        """Most fractional y, then x, then other integer variable above `tol`; None if there is none."""
        tol = self.cfg.integrality_tol if tol is None else tol
        for group in self.branch_order:
            best, best_score = None, tol
            for idx in group:
                frac = point[idx] - math.floor(point[idx])
                score = min(frac, 1.0 - frac)
                if score > best_score:
                    best, best_score = idx, score
            if best is not None:
                return best
        return None

    def _domain(self, node: _Node, idx: int) -> Tuple[float, float]:
        var = self.model.variables[idx]
        lo, hi = node.bounds.get(idx, (var.lower, var.upper))
        return max(lo, var.lower), min(hi, var.upper)

    def _record(self, heap: list, pending: Optional[_Node]) -> None:
        open_bounds = [-heap[0][0]] if heap else []
        if pending is not None:
            open_bounds.append(pending.bound)
        bound = max(open_bounds + ([self.incumbent_value] if self.incumbent else []), default=None)
        incumbent = self.incumbent_value if self.incumbent else None
        last = self.progress[-1] if self.progress else None
        if last is None or last.incumbent != incumbent or last.bound != bound:
            self.progress.append(ProgressPoint(nodes=self.nodes, incumbent=incumbent, bound=bound))

    def _accept(self, point: np.ndarray) -> bool:
        """Turns an integral point into an incumbent candidate; False when it does not map to a feasible solution."""
        try:
            solution = extract_solution(self.instance, self.model.variable_map, point)
        except ExtractionError as e:
            self.logger.error(f"Integral LP point could not be decomposed into routes: {e}", exc_info=True)
            return False
        if solution.status != "feasible":
            self.logger.warning(f"Integral LP point maps to an infeasible solution: {solution.reasons}")
            return False
        if self.incumbent is None or solution.profit > self.incumbent_value:
            self.incumbent, self.incumbent_value = solution, solution.profit
            self.logger.info(f"New incumbent with profit {solution.profit:g} at node {self.nodes}")
        return True

    # --- 节点处理 ---

    def _process(self, node: _Node):
        """Returns the node's LP bound and point, or None when the node is closed."""
        self.backend.set_bounds(node.bounds)
        lp = self.backend.solve()
        rounds = 0
        while (self.context is not None and lp.status == "optimal" and rounds < self.cfg.max_cut_rounds
               and not self._dominated(lp.objective) and not self._is_integral(lp.point)
               and time.perf_counter() < self.deadline):
            found = separate_point(self.context, lp.point, self.cfg.max_cuts_per_round)
            if not found.cuts:
                break
            self.backend.add_rows([cut.to_constraint() for cut in found.cuts])
            self.cut_counts.update(found.family_counts())
            if self.cfg.keep_cut_log:
                self.cut_rounds.append(found.cuts)
            rounds += 1
            lp = self.backend.solve()

        if lp.status == "infeasible":
            return None
        if lp.status != "optimal":
            raise BackendError(f"LP relaxation ended with status '{lp.status}': {lp.message}")
        return min(lp.objective, node.bound), lp.point

    def run(self) -> SolveResult:
        heap: list = []
        sequence = itertools.count()
        pending: Optional[_Node] = _Node(bound=math.inf, depth=0)
        limit_hit = False

        while pending is not None or heap:
            if time.perf_counter() >= self.deadline or self.nodes >= self.cfg.node_limit:
                limit_hit = True
                break
            node = pending if pending is not None else heapq.heappop(heap)[2]
            pending = None
            if self._dominated(node.bound):
                continue

            self.nodes += 1
            outcome = self._process(node)
            if outcome is not None:
                bound, point = outcome
                if self.nodes == 1:
                    self.root_bound = bound
                    self.logger.info(f"Root bound {bound:g}")
                accepted = self._is_integral(point) and self._accept(point)
                idx = None
                if not accepted and not self._dominated(bound):
                    idx = self._branching_variable(point)
                    if idx is None:
                        # integral within tolerance but rejected: split on the residual fractions
                        idx = self._branching_variable(point, tol=config.RESIDUAL_FRACTION_TOL)
                    if idx is None:
                        self.logger.error(f"Node {self.nodes}: rejected LP point is exactly integral, node closed")
                if idx is not None:
                    lo, hi = self._domain(node, idx)
                    value = point[idx]
                    down = _Node(bound, node.depth + 1, {**node.bounds, idx: (lo, float(math.floor(value)))})
                    up = _Node(bound, node.depth + 1, {**node.bounds, idx: (float(math.ceil(value)), hi)})
                    # a residual fraction can leave one side with an empty domain
                    if down.bounds[idx][0] <= down.bounds[idx][1]:
                        heapq.heappush(heap, (-down.bound, next(sequence), down))
                    if up.bounds[idx][0] <= up.bounds[idx][1]:
                        pending = up
            self._record(heap, pending)

        return self._result(heap, pending, limit_hit)

    def _result(self, heap: list, pending: Optional[_Node], limit_hit: bool) -> SolveResult:
        open_bounds = [entry[2].bound for entry in heap] + ([pending.bound] if pending else [])
        open_bounds = [b for b in open_bounds if not self._dominated(b)]
        has_incumbent = self.incumbent is not None
        if has_incumbent:
            bound = max([self.incumbent_value, *open_bounds]) if limit_hit else self.incumbent_value
        else:
            bound = max(open_bounds) if (limit_hit and open_bounds) else None

        if has_incumbent:
            gap = _gap(self.incumbent_value, bound)
            status = "OPT" if (not limit_hit or not open_bounds) else "NO-OPT"
        else:
            gap = None
            status = "NO-SOLS" if (limit_hit and open_bounds) else "INFS"
        if status == "OPT":
            bound, gap = self.incumbent_value, 0.0

        counts = empty_cut_counts()
        counts.update(self.cut_counts)
        cut_log = None
        if self.cfg.keep_cut_log and self.context is not None:
            cut_log = render_cut_log(self.cut_rounds, self.model.variable_map)
        return SolveResult(
            instance=self.instance.name, variant=self.instance.variant, formulation="compact", status=status,
            solution=self.incumbent, profit=self.incumbent_value if has_incumbent else None,
            bound=None if (bound is None or math.isinf(bound)) else float(bound), gap=gap,
            root_bound=self.root_bound, nodes=self.nodes, time_seconds=time.perf_counter() - self.started,
            cut_counts=counts, progress=self.progress, cut_log=cut_log,
        )


def _gap(lower: float, upper: Optional[float]) -> Optional[float]:
    if upper is None or math.isinf(upper):
        return None
    if abs(upper) <= 1e-12:
        return 0.0
    return max(0.0, (upper - lower) / abs(upper) * 100.0)


def solve(instance: Instance, solver_config: Optional[SolverConfig] = None,
          logger: Optional[logging.Logger] = None) -> SolveResult:
    solver = BranchAndCutSolver(solver_config, logger)
    if solver.config.formulation == "mixed":
        return solver.solve_mixed(instance)
    return solver.solve(instance)


def solve_mixed(instance: Instance, solver_config: Optional[SolverConfig] = None,
                logger: Optional[logging.Logger] = None) -> SolveResult:
    return BranchAndCutSolver(solver_config, logger).solve_mixed(instance)
