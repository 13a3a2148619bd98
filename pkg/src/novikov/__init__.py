"""Exact-arithmetic toolkit for Novikov and left-symmetric structures on
finite-dimensional Lie algebras over the rationals.

The library constructs such structures (half-bracket, classical r-matrices,
extension lifts, cohomological reduction), verifies them (all axioms checked
by exact equality on basis tuples), and refutes their existence with
independently re-checkable elimination certificates.
"""

from .certificate import (
    Certificate,
    DEFAULT_EFFORT,
    EXISTS,
    NOT_EXISTS,
    UNDETERMINED,
    algebra_hash,
    build_system,
    decide_novikov,
    verify_certificate,
)
from .extensions import (
    ExtensionData,
    LiftData,
    assemble,
    check_lift_lsa,
    check_lift_novikov,
    iso_lift,
    jordan_lift,
    lift_product,
    novikov_ideal_quotient,
    scheuneman_lift,
    semidirect_lift,
    two_gen_lift,
    two_step_solvable_from,
)
from .fixtures import fixture, product_fixture
from .lie import (
    LieAlgebra,
    StructureTensor,
    derived_series,
    lower_central_series,
    quotient,
    validate_lie,
)
from .linalg import (
    Matrix,
    Q,
    Subspace,
    jordan_block,
    nilpotent_regular_basis,
    nullspace,
    solve_linear,
    word_image_space,
)
from .products import (
    AlgebraProduct,
    commutator_lie,
    derived_identities_hold,
    half_bracket_product,
    is_compatible,
    is_complete,
    is_left_symmetric,
    is_novikov,
)
from .reduction import (
    Decomposition,
    ModuleAction,
    combination,
    fitting_decompose,
    h0,
    induced_nilpotent_extension,
    prop57_construct,
    reduction_lift,
    solve_coboundary_1,
)
from .rmatrix import (
    RMatrix,
    basis_rmatrix,
    check_cybe,
    check_novbed,
    class_bounds_report,
    deformed_bracket,
    induced_product,
)

__version__ = "0.1.0"
