"""Quasi-eigenvalues of real matrices over self-dual cones.

Library layout:

* ``matcore``  - matrix validation, norms, predicates, eigenvalue oracle
* ``cones``    - orthant / rotated-orthant cones, membership, cone metric
* ``lp``       - dense max-margin simplex kernel
* ``quasi``    - minimax quasi-eigenvalues via LP bisection + grid oracle
* ``analysis`` - theorem-level checkers and experiments
* ``cli``      - command-line interface and JSON reports
"""

from .analysis import (
    NormalCanonicalForm,
    PerturbationBound,
    TheoremReport,
    assemble_canonical,
    bounds_check,
    cone_continuity_experiment,
    invariance_check,
    isc_check,
    max_re_check,
    normal_canonical_form,
    perron_check,
    perturbation_bound_check,
    perturbation_constants,
    rotation_block,
    theorem4_classify,
)
from .cones import (
    Cone,
    ConeMembership,
    cone_metric,
    contains,
    extreme_rays,
    givens_rotation,
    random_orthogonal,
    span_meets_interior,
)
from .errors import (
    ConvergenceFailure,
    DegenerateBasis,
    DegeneratePairing,
    DimensionMismatch,
    NonFinite,
    NonSquare,
    NotInCone,
    NotInterior,
    NotNormal,
    NotOrthogonal,
    NumericalBreakdown,
    ParseError,
    QuasiEigError,
    UnsupportedDimension,
)
from .lp import LpSolution, MaxEpsProblem, solve_max_eps
from .matcore import (
    ClassificationReport,
    as_matrix,
    as_vector,
    classify,
    eig_oracle,
    is_irreducible,
    max_re,
    operator_norm,
    spectral_radius,
    symmetric_part_eigs,
)
from .quasi import (
    QuasiEigenResult,
    brute_minimax,
    inner_inf,
    inner_sup,
    lower_quasi_eigenvalue,
    quasi_pair,
    quasilinearity_probe,
    rayleigh,
    upper_quasi_eigenvalue,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
