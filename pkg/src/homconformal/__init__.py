"""Exact lambda-bracket calculus for delta-twisted Lie conformal superalgebras.

Everything is computed over the rationals with exact sparse polynomials, so
axioms, closure conditions, and differentials are decided symbolically; a
seeded random-evaluation oracle can re-verify every verdict numerically.
"""

from .exactmath import (
    D,
    InconsistentSystemError,
    L1,
    L2,
    L3,
    MissingVariableError,
    Poly,
    Rational,
    T,
    kernel_of,
    solve_linear,
)
from .algebra import (
    AlgebraError,
    ConformalEndo,
    Element,
    LambdaValue,
    Superalgebra,
    Vector,
    bracket_left,
    bracket_nested_left,
    check_grading,
    check_hom_jacobi,
    check_multiplicative,
    check_regular,
    check_skew_symmetry,
    endo_apply,
    extend_bracket,
    format_vector,
    run_suite,
)
from .cohomology import (
    Cochain,
    CoefficientTwist,
    cochain_apply,
    d0,
    d1,
    d2,
    d_s,
    is_two_cocycle,
    spanning_one_cochains,
    spanning_two_cochains,
    verify_d2d1_zero,
    zero_cochain,
)
from .constructions import (
    HomAssocConformal,
    JordanLieSuperalgebra,
    check_hom_associative,
    commutator_bracket,
    current_algebra,
    direct_sum,
    extend_by_derivation,
    from_hom_associative,
    yau_twist,
)
from .deformation import (
    check_deformation_conditions,
    deform,
    is_nijenhuis,
    nijenhuis_bracket,
    nijenhuis_two_cochain,
    psi_diagonal,
    verify_trivial_deformation,
)
from .derivation import (
    DerivationCandidate,
    check_alpha_k_derivation,
    commutator,
    derivation_space_dimension_oracle,
    inner_derivation,
    solve_derivation_space,
)
from .reporting import CheckItem, Report, evaluation_agrees
from .representation import (
    ConstructionError,
    Representation,
    adjoint_rep,
    check_coadjoint_condition,
    check_dual_condition,
    check_representation,
    semidirect_sum,
)

__version__ = "0.1.0"
