from .records import BenchRecord, RESULT_COLUMNS, render_records, scheme_tags, size_group
from .aggregate import aggregate_rows, compare_formulations, cut_impact, render_aggregate
