"""
Solution files: one route per line as whitespace-separated node ids, with
an optional leading `profit <value>` line. `#` starts a comment.
"""
from pathlib import Path
from typing import List, Union

from .feasibility import build_solution
from .instance_schema import Instance
from .solution_schema import Solution


class SolutionFormatError(ValueError):
    """Malformed solution file."""


def parse_routes(text: str) -> List[List[int]]:
    routes = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line or line.lower().startswith("profit"):
            continue
        try:
            routes.append([int(token) for token in line.split()])
        except ValueError:
            raise SolutionFormatError(f"line {no}: expected node ids, got '{line}'") from None
        if len(routes[-1]) < 2:
            raise SolutionFormatError(f"line {no}: a route needs at least two nodes")
    return routes


def parse_solution(text: str, instance: Instance) -> Solution:
    return build_solution(instance, parse_routes(text))


def load_solution(path: Union[str, Path], instance: Instance) -> Solution:
    return parse_solution(Path(path).read_text(encoding="utf-8"), instance)


def write_solution(solution: Solution) -> str:
    lines = [f"profit {solution.profit!r}"]
    lines.extend(" ".join(str(k) for k in route.nodes) for route in solution.routes)
    return "\n".join(lines) + "\n"
