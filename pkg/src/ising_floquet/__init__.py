"""Infinite-range kicked Ising Floquet dynamics in the permutation-symmetric subspace."""

from .exceptions import ConfigError, NumericalStabilityError
from .symspace import (
    DickeIndex,
    ParityBasis,
    SymmetricState,
    coherent_state,
    collective_sy_matrix,
    collective_sz_eigenvalues,
    parity_basis,
    parity_operator,
    random_symmetric_state,
)
from .floquet import (
    DeviationSeries,
    FloquetOperator,
    ModelParams,
    build_floquet,
    deviation,
    deviation_series,
    evolve,
    evolve_series,
    find_period,
    operator_power,
)
from .entangle import (
    EntanglementRecord,
    concurrence,
    concurrence_eigenvalues,
    entanglement_series,
    linear_entropy,
    rdm1,
    rdm2,
    von_neumann_entropy,
)
from .spectral import (
    Cluster,
    RationalFit,
    SpectrumReport,
    angle_histogram,
    degeneracy_clusters,
    eigenangles,
    rational_classify,
    spectrum_report,
)

__version__ = "0.1.0"
