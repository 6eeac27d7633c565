# 基准记录与 CSV 输出
import csv
import io
import re
from typing import Dict, Iterable, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field

import config
from core_model.instance_schema import Instance
from cpa_engine.dto import SolveResult, SolveStatus, empty_cut_counts

SizeGroup = Literal["SMALL", "MEDIUM", "LARGE"]

RESULT_COLUMNS = ["instance", "variant", "status", "profit", "bound", "gap%", "nodes", "time_s"] + \
                 [f"cuts_{family}" for family in config.CUT_FAMILIES]

MANDATORY_TAGS = ("CM", "SM")
PHYSICAL_TAGS = ("CPI", "DPI")
LOGICAL_TAGS = ("FLI", "NLI")


def size_group(node_count: int) -> SizeGroup:
    if node_count <= config.SMALL_GROUP_MAX_NODES:
        return "SMALL"
    if node_count <= config.MEDIUM_GROUP_MAX_NODES:
        return "MEDIUM"
    return "LARGE"


def scheme_tags(name: str) -> Tuple[Optional[str], Optional[str], Optional[str]]:
    """Reads the generation tags (mandatory, physical, logical) out of an instance name."""
    tokens = set(re.split(r"[_\-.\s]+", name.upper()))

    def first(options):
        return next((t for t in options if t in tokens), None)

    return first(MANDATORY_TAGS), first(PHYSICAL_TAGS), first(LOGICAL_TAGS)


class BenchRecord(BaseModel):
    instance: str
    group: SizeGroup
    mandatory_tag: Optional[str] = None
    physical_tag: Optional[str] = None
    logical_tag: Optional[str] = None
    variant: Literal["P", "PL"]
    fleet_size: int
    formulation: str = "compact"
    status: SolveStatus
    profit: Optional[float] = None
    bound: Optional[float] = None
    gap: Optional[float] = None
    nodes: int = 0
    time_seconds: float = 0.0
    cut_counts: Dict[str, int] = Field(default_factory=empty_cut_counts)

    @property
    def tags(self) -> List[str]:
        return [t for t in (self.mandatory_tag, self.physical_tag, self.logical_tag) if t]

    @property
    def solved(self) -> bool:
        return self.status in ("OPT", "INFS")

    @classmethod
    def from_result(cls, instance: Instance, result: SolveResult) -> "BenchRecord":
        mandatory, physical, logical = scheme_tags(instance.name)
        return cls(
            instance=result.instance,
            group=size_group(instance.node_count),
            mandatory_tag=mandatory,
            physical_tag=physical,
            logical_tag=logical,
            variant=result.variant,
            fleet_size=instance.fleet_size,
            formulation=result.formulation,
            status=result.status,
            profit=result.profit,
            bound=result.bound,
            gap=result.gap,
            nodes=result.nodes,
            time_seconds=result.time_seconds,
            cut_counts=dict(result.cut_counts),
        )


def format_number(value: Optional[float], decimals: int = config.PROFIT_DECIMALS) -> str:
    if value is None:
        return "-"
    return f"{value:.{decimals}f}"


def format_time(seconds: float, deterministic: bool) -> str:
    return "-" if deterministic else f"{seconds:.2f}"


def record_row(record: BenchRecord, deterministic: bool = False) -> List[str]:
    row = [
        record.instance,
        record.variant,
        record.status,
        format_number(record.profit),
        format_number(record.bound),
        format_number(record.gap),
        str(record.nodes),
        format_time(record.time_seconds, deterministic),
    ]
    row += [str(record.cut_counts.get(family, 0)) for family in config.CUT_FAMILIES]
    return row


def render_table(header: List[str], rows: Iterable[List[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def render_records(records: Iterable[BenchRecord], deterministic: bool = False, header: bool = True) -> str:
    rows = [record_row(r, deterministic) for r in sorted(records, key=lambda r: r.instance)]
    if header:
        return render_table(RESULT_COLUMNS, rows)
    buffer = io.StringIO()
    csv.writer(buffer, lineterminator="\n").writerows(rows)
    return buffer.getvalue()
