"""Distance to normality for dense complex matrices.

Measures how far a matrix is from the normal matrices (commutator lower
bounds, certified witness upper bounds), builds normal approximants with
finite spectrum or controlled norm, performs spectrum surgery on normal
inputs, and runs the truncation / pseudospectrum / scatter experiments.
"""

from __future__ import annotations

from .core import (
    CLUSTER_TOL,
    HERMITIAN_TOL,
    NORMAL_TOL,
    NormReport,
    PolarDecomp,
    RECONSTRUCT_TOL,
    SpectralDecomp,
    UNITARY_TOL,
    adjoint,
    as_cmatrix,
    commutator,
    hermitian_eig,
    hermitian_part,
    norm_report,
    normal_spectral_decomp,
    normality_defect,
    operator_norm,
    polar_decomp,
    schatten_norm,
    self_commutator,
    svd_factor,
)
from .errors import (
    DomainError,
    EmptyTruncation,
    NotNormal,
    SpectrumOffContour,
    UncoveredSpectrum,
)
from .experiments import (
    CountingReport,
    GridSpec,
    PseudospectrumReport,
    SCALING_COLUMNS,
    SCATTER_COLUMNS,
    TruncationCheck,
    TruncationModel,
    counting_functions,
    f_scatter,
    laurent_truncation_model,
    pseudospectrum,
    truncate,
    truncation_model,
    truncation_scaling,
    verify_truncation_bounds,
)
from .fileio import (
    ARTIFACT_VERSION,
    load_matrix,
    read_csv,
    save_matrix,
    write_csv,
    write_report,
)
from .gallery import (
    EnsembleSpec,
    almost_commuting_pair,
    laurent_multiplication,
    materialize,
    perturbed_normal,
    shift_example,
)
from .nearest import (
    DistanceReport,
    commutator_lower_bound,
    maximize_diagonal,
    nearest_normal,
)
from .partition import (
    Cover,
    FiniteSpectrumApprox,
    OpenDisc,
    OpenSquare,
    ResolutionOfIdentity,
    finite_spectrum_approx,
    finite_spectrum_approx_for,
    resolution_of_identity,
    spectral_projection,
    square_cover,
)
from .surgery import (
    Affine,
    BoundaryPush,
    ChordSnap,
    GraphReport,
    Oscillator,
    RadialCollapse,
    SurgeryResult,
    check_oscillator,
    graph_normal_approx,
    oscillator,
    remove_arc,
    remove_region,
    transport,
)

__version__ = "0.1.0"
