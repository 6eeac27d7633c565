"""
Aggregate tables computed purely from per-instance records: the
group-by-scheme table, the mixed-versus-compact comparison by fleet size,
and the per-family cut impact table.
"""
from collections import defaultdict
from statistics import mean
from typing import Dict, List, Optional, Sequence

from .records import (
    BenchRecord,
    LOGICAL_TAGS,
    MANDATORY_TAGS,
    PHYSICAL_TAGS,
    format_number,
    render_table,
)

GROUP_ORDER = ("SMALL", "MEDIUM", "LARGE")
AGGREGATE_COLUMNS = ["group", "tag", "#", "OPT", "CPU", "NODES", "GAP"]
COMPARISON_COLUMNS = ["m", "#", "OPT_mixed", "CPU_mixed", "NODES_mixed",
                      "OPT_compact", "CPU_compact", "NODES_compact", "gap_CPU%", "gap_NODES%"]
IMPACT_COLUMNS = ["cuts", "#", "OPT", "CPU", "NODES", "GAP"]


def _mean(values: Sequence[float]) -> Optional[float]:
    return mean(values) if values else None


def _summary(records: Sequence[BenchRecord]) -> Dict[str, Optional[float]]:
    unsolved_gaps = [r.gap for r in records if r.status == "NO-OPT" and r.gap is not None]
    return {
        "count": len(records),
        "opt": sum(1 for r in records if r.status == "OPT"),
        "cpu": _mean([r.time_seconds for r in records]),
        "nodes": _mean([float(r.nodes) for r in records]),
        "gap": _mean(unsolved_gaps),
    }


def aggregate_rows(records: Sequence[BenchRecord], deterministic: bool = False) -> List[List[str]]:
    """
    One row per (size group, tag): an ALL row per group, then one row per
    mandatory, physical and logical tag present. The tag rows of one family
    partition the group's tagged instances.
    """
    by_group: Dict[str, List[BenchRecord]] = defaultdict(list)
    for record in records:
        by_group[record.group].append(record)

    rows = []
    for group in GROUP_ORDER:
        members = by_group.get(group)
        if not members:
            continue
        selections = [("ALL", members)]
        for tag in MANDATORY_TAGS + PHYSICAL_TAGS + LOGICAL_TAGS:
            tagged = [r for r in members if tag in r.tags]
            if tagged:
                selections.append((tag, tagged))
        for tag, chosen in selections:
            s = _summary(chosen)
            rows.append([
                group, tag, str(s["count"]), str(s["opt"]),
                "-" if deterministic else format_number(s["cpu"]),
                format_number(s["nodes"]), format_number(s["gap"]),
            ])
    return rows


def render_aggregate(records: Sequence[BenchRecord], deterministic: bool = False) -> str:
    return render_table(AGGREGATE_COLUMNS, aggregate_rows(records, deterministic))


def _relative_gap(reference: Optional[float], value: Optional[float]) -> Optional[float]:
    if reference is None or value is None or abs(reference) <= 1e-12:
        return None
    return (reference - value) / reference * 100.0


def compare_formulations(mixed: Sequence[BenchRecord], compact: Sequence[BenchRecord],
                         deterministic: bool = False) -> str:
    """Mixed against compact per fleet size; gaps are relative to the mixed model."""
    fleets = sorted({r.fleet_size for r in list(mixed) + list(compact)})
    rows = []
    for m in fleets:
        left = _summary([r for r in mixed if r.fleet_size == m])
        right = _summary([r for r in compact if r.fleet_size == m])
        cpu_gap = None if deterministic else _relative_gap(left["cpu"], right["cpu"])
        rows.append([
            str(m), str(max(left["count"], right["count"])),
            str(left["opt"]), "-" if deterministic else format_number(left["cpu"]), format_number(left["nodes"]),
            str(right["opt"]), "-" if deterministic else format_number(right["cpu"]), format_number(right["nodes"]),
            format_number(cpu_gap), format_number(_relative_gap(left["nodes"], right["nodes"])),
        ])
    return render_table(COMPARISON_COLUMNS, rows)


def cut_impact(records_by_setting: Dict[str, Sequence[BenchRecord]], deterministic: bool = False) -> str:
    rows = []
    for label, records in records_by_setting.items():
        s = _summary(records)
        rows.append([
            label, str(s["count"]), str(s["opt"]),
            "-" if deterministic else format_number(s["cpu"]),
            format_number(s["nodes"]), format_number(s["gap"]),
        ])
    return render_table(IMPACT_COLUMNS, rows)


def total_nodes(records: Sequence[BenchRecord]) -> int:
    return sum(r.nodes for r in records)
