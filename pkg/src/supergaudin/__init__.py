"""Exact Gaudin Hamiltonians for general linear Lie superalgebras.

Builds weight modules with exact rational action matrices, assembles
quadratic and cubic Gaudin Hamiltonians, verifies their algebra exactly,
matches spectra across the super-duality weight correspondence and
integrates the (super) KZ equations numerically.
"""

import os

from .indices import HalfIndex, IndexSet, idx
from .partitions import GeneralizedPartition, Partition, all_partitions, frobenius_theta
from .weights import (
    Weight,
    eps,
    hook_correspondence,
    in_lattice,
    unitarizable_weight,
    weight_classical,
    weight_super,
    weight_wide,
)
from .algebra import (
    AlgebraElement,
    BasisElement,
    E,
    RootDatum,
    iota,
    simple_raising_ops,
    star_omega,
    supercommutator,
    supertrace,
    supertrace_matrix,
)
from .modules import (
    NaturalModule,
    SingularSpace,
    TensorModule,
    WeightModule,
    irreducible_truncated,
    polynomial_module,
    singular_space,
    tensor_product,
    truncate_module,
    verma_truncated,
)
from .gaudin import (
    CasimirTensor,
    HamiltonianFamily,
    apply_pair_op,
    casimir,
    central_shift,
    commutator_residual,
    cubic_family,
    cyclic_vector_test,
    joint_diagonalize,
    quadratic_family,
    restrict_to_basis,
)
from .laxmatrix import DiffOpPoly, RationalFunctionPF, lax_str_expansion, s22_closed, s33_closed
from .duality import DualitySetup, build_setup, cubic_spectrum_match, spectrum_match, truncation_check
from .kz import (
    KZSystem,
    PathSolution,
    flatness_residual,
    gauge_transform,
    integrate_path,
    monodromy,
    singular_preservation,
)

__version__ = "0.1.0"


def schemas_path():
    """Directory holding the shipped JSON schema documents."""
    return os.path.join(os.path.dirname(__file__), "schemas")
