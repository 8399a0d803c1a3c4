"""Finite-dimensional fermions on Spin(2n+1).

Fock space and ladder operators, Clifford generators, the half-spin
representation of so(2n+1), an exact normal-ordering engine for its
enveloping algebra, Haar sampling with spin lifts, a geometric Stratonovich
integrator for the associated left-invariant diffusions, and Monte Carlo
verification of the resulting Feynman-Kac semigroup identity.
"""

from .clifford import (
    CliffordGenerators,
    bilinear_form,
    gamma,
    gamma_of_vector,
    hermitian_form,
    make_clifford_generators,
)
from .errors import (
    DomainError,
    IndexRangeError,
    NonWeightVectorError,
    NumericError,
    SizeError,
)
from .feynman_kac import FKEstimate, FKRow, fk_lhs_exact, fk_report, fk_rhs_mc
from .fock import (
    FockBasis,
    FockVector,
    LadderOperator,
    annihilation,
    basis_vector,
    creation,
    fock_dim,
    fock_inner,
    ladder,
    make_fock_space,
    number_operator,
    vacuum,
)
from .hamiltonian import (
    HamiltonianParts,
    HamiltonianSpec,
    build_parts,
    car_on_subspace_check,
    exact_semigroup,
    subset_sums,
)
from .sde import (
    GeneratorCheck,
    PathState,
    SDEConfig,
    decay_curve,
    fit_decay_rate,
    generator_check,
    sde_step,
    simulate_path,
)
from .so_algebra import (
    AlgebraElement,
    Representation,
    basis_element,
    bracket,
    cartan_element,
    defining_basis_matrix,
    defining_rep,
    defining_representation,
    ladder_element,
    spin_rep,
    spin_representation,
    weight_of,
)
from .spin_group import (
    GroupPoint,
    MatrixCoefficient,
    MCEstimate,
    evaluate_coefficient,
    group_exp,
    haar_sample,
    identity_point,
    l2_inner_mc,
    principal_so_log,
)
from .uea import (
    GaussianRational,
    UEAPolynomial,
    commutator_LU,
    pbw_normalize,
    uea_commuting_pair_check,
    uea_multiply,
)
from .checks import CheckResult, run_verify

__version__ = "0.1.0"
