from typing import Iterable, List

from formulations.linear_model import VariableMap
from .cuts import Cut


def format_cut(cut: Cut, variable_map: VariableMap) -> str:
    terms = []
    for idx, coef in cut.coefficients:
        name = "_".join(str(part) for part in variable_map.tag(idx))
        terms.append(f"{coef:+g}*{name}")
    witness = "-".join(str(k) for k in cut.witness)
    return f"{cut.family}\t{witness}\tviol={cut.violation:.6f}\t{' '.join(terms)} <= {cut.rhs:g}"


def render_cut_log(rounds: Iterable[List[Cut]], variable_map: VariableMap) -> str:
    """One line per cut, grouped by separation round."""
    lines = []
    for number, cuts in enumerate(rounds, start=1):
        lines.append(f"# round {number}: {len(cuts)} cuts")
        lines.extend(format_cut(cut, variable_map) for cut in cuts)
    return "\n".join(lines) + "\n"
