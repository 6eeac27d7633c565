# 数据传输对象（契约）
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from cli_bench.records import BenchRecord
from core_model.instance_schema import Instance
from cpa_engine.dto import SolveResult, SolverConfig
from instance_forge.generator import GenerationSummary
from instance_forge.manifest import ForgeJob


class BenchRun(BaseModel):
    """One solver setting applied to every instance of the batch."""
    label: str
    solver_config: SolverConfig


class BenchContext(BaseModel):
    """
    在基准测试管道中流转的上下文对象：
    实例、求解设置、逐实例记录以及汇总表。
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    # --- 输入 ---
    source_input: str
    output_dir: str
    runs: List[BenchRun]
    workers: int = 1
    deterministic: bool = False
    variant_override: Optional[str] = None
    compare_formulations: bool = False
    cut_impact: bool = False

    # --- 数据 ---
    source_metadata: Optional[Dict[str, object]] = None
    instances: List[Instance] = Field(default_factory=list)
    load_errors: Dict[str, str] = Field(default_factory=dict)
    results: Dict[str, List[SolveResult]] = Field(default_factory=dict)
    records: Dict[str, List[BenchRecord]] = Field(default_factory=dict)
    solve_errors: Dict[str, str] = Field(default_factory=dict)

    # --- 输出 ---
    tables: Dict[str, str] = Field(default_factory=dict)
    written_files: List[str] = Field(default_factory=list)

    # --- 流程控制 ---
    is_successful: bool = True
    error_message: Optional[str] = None

    @property
    def primary_run(self) -> str:
        return self.runs[0].label

    @property
    def partially_failed(self) -> bool:
        return bool(self.load_errors or self.solve_errors)


class ForgeOutcome(BaseModel):
    job: ForgeJob
    instance: Optional[Instance] = None
    summary: Optional[GenerationSummary] = None
    status: str = "ok"
    error: Optional[str] = None


class ForgeContext(BaseModel):
    """在实例生成管道中流转的上下文对象。"""
    manifest_path: Optional[str] = None
    output_dir: str
    workers: int = 1
    jobs: List[ForgeJob] = Field(default_factory=list)
    outcomes: List[ForgeOutcome] = Field(default_factory=list)
    summary_csv: Optional[str] = None
    written_files: List[str] = Field(default_factory=list)

    is_successful: bool = True
    error_message: Optional[str] = None

    @property
    def failed_jobs(self) -> List[ForgeOutcome]:
        return [o for o in self.outcomes if o.error is not None]
