"""Sub-community discovery and pivot identification over participation matrices.

Pipeline: load an actor-by-event matrix, derive a decision variable (eigen
model or column means), compare each actor against it to get energy sets and
energies, link actor pairs whose co-energy clears a threshold, then convert
energies to probabilities and to possibility degrees to flag the pivots.
"""

from .community import (
    Link,
    SubCommunity,
    dense_subgroups,
    discover,
    pivot_centered_groups,
    rank_subcommunities,
    to_dot,
)
from .energy import (
    CoEnergyMatrix,
    EnergyProfile,
    OverlapRecord,
    co_energy,
    co_energy_matrix,
    energy,
    energy_profiles,
    energy_set,
    pair_overlap_table,
    write_overlap_tsv,
)
from .errors import (
    ConvergenceError,
    DegenerateCommunityError,
    DegenerateMatrixError,
    DuplicateActorIdError,
    DuplicateEventIdError,
    EmptySubsetError,
    IndexOutOfRangeError,
    InputError,
    LengthMismatchError,
    MissingFileError,
    NegativeCellError,
    NonNumericCellError,
    PivotnetError,
    RaggedRowError,
)
from .ingest import ParticipationMatrix, load_csv, loads_csv, row_sums, save_csv
from .klt import (
    DecisionVariable,
    KltModel,
    decision_variable,
    fit,
    jacobi_eigh,
    reconstruct,
    select_components,
    write_eigen_tsv,
)
from .pivot import (
    PivotReport,
    PivotRow,
    PossibilityDistribution,
    ProbabilityDistribution,
    detect_pivots,
    dominance_check,
    energy_to_probability,
    order_preservation_check,
    pivot_report,
    probability_to_possibility,
)

__version__ = "0.1.0"

__all__ = [
    "CoEnergyMatrix",
    "ConvergenceError",
    "DecisionVariable",
    "DegenerateCommunityError",
    "DegenerateMatrixError",
    "DuplicateActorIdError",
    "DuplicateEventIdError",
    "EmptySubsetError",
    "EnergyProfile",
    "IndexOutOfRangeError",
    "InputError",
    "KltModel",
    "LengthMismatchError",
    "Link",
    "MissingFileError",
    "NegativeCellError",
    "NonNumericCellError",
    "OverlapRecord",
    "ParticipationMatrix",
    "PivotReport",
    "PivotRow",
    "PivotnetError",
    "PossibilityDistribution",
    "ProbabilityDistribution",
    "RaggedRowError",
    "SubCommunity",
    "co_energy",
    "co_energy_matrix",
    "decision_variable",
    "dense_subgroups",
    "detect_pivots",
    "discover",
    "dominance_check",
    "energy",
    "energy_profiles",
    "energy_set",
    "energy_to_probability",
    "fit",
    "jacobi_eigh",
    "load_csv",
    "loads_csv",
    "order_preservation_check",
    "pair_overlap_table",
    "pivot_centered_groups",
    "pivot_report",
    "probability_to_possibility",
    "rank_subcommunities",
    "reconstruct",
    "row_sums",
    "save_csv",
    "select_components",
    "to_dot",
    "write_eigen_tsv",
    "write_overlap_tsv",
]
