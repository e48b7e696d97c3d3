from decoding.helpers import (
    sign, hard_decision, combine_exact, combine_minsum, project_exact, project_minsum,
    aggregate_rpa, aggregate_cpa, early_stop,
)
from decoding.projection_aggregation import (
    Algorithm, ProjectionRule, DecoderConfig, DecodeOutcome, BranchContext,
    ProjectionAggregationDecoder, default_max_iters, rpa_decode, rupa_decode, cpa_decode, iupa_decode,
)
from subspaces.schedule import duplicate_count

__all__ = [
    'sign', 'hard_decision', 'combine_exact', 'combine_minsum', 'project_exact', 'project_minsum',
    'aggregate_rpa', 'aggregate_cpa', 'early_stop',
    'Algorithm', 'ProjectionRule', 'DecoderConfig', 'DecodeOutcome', 'BranchContext',
    'ProjectionAggregationDecoder', 'default_max_iters',
    'rpa_decode', 'rupa_decode', 'cpa_decode', 'iupa_decode', 'duplicate_count',
]
