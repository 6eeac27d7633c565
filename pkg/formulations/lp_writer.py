"""Dumps a LinearModel in CPLEX LP text format for inspection with external solvers."""
import math
from typing import Dict, List

from .linear_model import LinearModel

_SENSE = {"<=": "<=", ">=": ">=", "==": "="}


def _expression(coefficients: Dict[int, float], names: List[str]) -> str:
    if not coefficients:
        return "0"
    parts = []
    for idx, coef in sorted(coefficients.items()):
        sign = "-" if coef < 0 else "+"
        parts.append(f"{sign} {abs(coef):.12g} {names[idx]}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else text


def write_lp(model: LinearModel) -> str:
    names = [v.name for v in model.variables]
    lines = ["\\ " + model.name, "Maximize", f" obj: {_expression(model.objective, names)}", "Subject To"]
    for row in model.constraints:
        lines.append(f" {row.name}: {_expression(row.coefficients, names)} {_SENSE[row.sense]} {row.rhs:.12g}")

    lines.append("Bounds")
    for v in model.variables:
        upper = "+inf" if math.isinf(v.upper) else f"{v.upper:.12g}"
        lines.append(f" {v.lower:.12g} <= {v.name} <= {upper}")

    generals = [v.name for v in model.variables if v.kind == "integer"]
    binaries = [v.name for v in model.variables if v.kind == "binary"]
    if generals:
        lines.append("Generals")
        lines.extend(f" {name}" for name in generals)
    if binaries:
        lines.append("Binaries")
        lines.extend(f" {name}" for name in binaries)
    lines.append("End")
    return "\n".join(lines) + "\n"
