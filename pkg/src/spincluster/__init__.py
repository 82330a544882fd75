"""Exact thermal pairwise entanglement in uniformly coupled spin-1/2 clusters.

The model: N spins on a complete graph, Heisenberg exchange J/(N-1) with
z-axis anisotropy Delta and field B.  Total-spin algebra gives the exact
spectrum for any N, the Gibbs two-site state follows from three thermal
moments, and Wootters' formula turns it into concurrence, rescaled
concurrence (N-1)C, and entanglement of formation.  A brute-force
diagonalization oracle (n <= 12) cross-checks everything.
"""
from .entanglement import (
    CONCURRENCE_ZERO_TOL,
    EntanglementPoint,
    PairDensity,
    concurrence,
    concurrence_batch,
    concurrence_xxx_zero_field,
    eof,
    pair_density,
    pair_matrix,
    rescaled_concurrence,
    thermal_entanglement,
    wootters,
)
from .errors import (
    CapacityError,
    ConsistencyError,
    DomainError,
    InvalidClusterError,
    NumericalError,
    SpinClusterError,
)
from .oracle import (
    ORACLE_N_MAX,
    OracleReport,
    comparison_report,
    oracle_concurrence,
    thermal_pair_state,
)
from .scans import (
    Axis,
    Boundary,
    GridSpec,
    ScanRecord,
    boundary,
    limit_curve,
    max_rescaled,
    point_record,
    scan,
    threshold_temperature,
)
from .sectors import (
    ClusterSpec,
    EnergyLevel,
    SpinSector,
    degeneracy,
    enumerate_levels,
    sector_spins,
    spectrum,
    spin_sectors,
)
from .thermo import (
    ENERGY_DEGENERACY_TOL,
    Correlations,
    Moments,
    Temperature,
    correlations,
    log_partition,
    moments,
)

__version__ = "0.1.0"

__all__ = [
    "CONCURRENCE_ZERO_TOL",
    "ENERGY_DEGENERACY_TOL",
    "ORACLE_N_MAX",
    "Axis",
    "Boundary",
    "CapacityError",
    "ClusterSpec",
    "ConsistencyError",
    "Correlations",
    "DomainError",
    "EnergyLevel",
    "EntanglementPoint",
    "GridSpec",
    "InvalidClusterError",
    "Moments",
    "NumericalError",
    "OracleReport",
    "PairDensity",
    "ScanRecord",
    "SpinClusterError",
    "SpinSector",
    "Temperature",
    "boundary",
    "comparison_report",
    "concurrence",
    "concurrence_batch",
    "concurrence_xxx_zero_field",
    "correlations",
    "degeneracy",
    "enumerate_levels",
    "eof",
    "limit_curve",
    "log_partition",
    "max_rescaled",
    "moments",
    "oracle_concurrence",
    "pair_density",
    "pair_matrix",
    "point_record",
    "rescaled_concurrence",
    "scan",
    "sector_spins",
    "spectrum",
    "spin_sectors",
    "thermal_entanglement",
    "thermal_pair_state",
    "threshold_temperature",
    "wootters",
    "__version__",
]
