from subspaces.subspaces import (
    Subspace, QuotientMap, q_binomial, enumerate_one_dim, enumerate_subspaces,
    subspace_from_vectors, quotient_map, lift, lift_through, induced_subspace,
    one_dim_coset_tables,
)
from subspaces.schedule import (
    projection_indices, schedule_paths, verify_unique_schedule, level_projection_counts,
    duplicate_count, schedule_tree, level_counts,
)

__all__ = [
    'Subspace', 'QuotientMap', 'q_binomial', 'enumerate_one_dim', 'enumerate_subspaces',
    'subspace_from_vectors', 'quotient_map', 'lift', 'lift_through', 'induced_subspace',
    'one_dim_coset_tables', 'projection_indices', 'schedule_paths', 'verify_unique_schedule',
    'level_projection_counts', 'duplicate_count', 'schedule_tree', 'level_counts',
]
