"""Zero-discrepancy toroidal matrices: decide, construct, verify,
approximate, and apply as halftoning threshold arrays."""

from .grid import (  # noqa: F401
    Board,
    Dims,
    DiscrepancyReport,
    RegionSumTable,
    discrepancy_report,
    is_zero_discrepancy,
    new_board,
    read_matrix,
    region_sum_table,
    target_sum_x2,
    write_matrix,
)
from .feasibility import (  # noqa: F401
    Reason,
    ReducedDims,
    Verdict,
    constraint_rank,
    decide,
    reduce_dims,
    solution_space_dimension,
)

__version__ = "0.1.0"
