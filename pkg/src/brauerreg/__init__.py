"""brauerreg: Brauer relations, regulator constants and class-number checks
for finite groups, in exact arithmetic."""

from .exactlinalg import (
    IntMatrix,
    RationalMatrix,
    SmithDecomposition,
    cokernel_invariants,
    kernel_basis,
    rational_det,
    smith,
)
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    SubgroupLattice,
    double_cosets,
    from_generators,
    preset,
    preset_names,
    quotient,
    subgroup_lattice,
)
from .relations import (
    BrauerRelation,
    fixed_point_count,
    induce,
    inflate,
    is_relation,
    relation_lattice,
    restrict,
)
from .gmodules import (
    GMap,
    GModule,
    augmentation_ideal,
    dual_lattice,
    fixed_submodule,
    hom_fixed,
    induced_module,
    kernel_and_cokernel,
    permutation_module,
    regular_module,
    torsion_and_free,
    trivial_module,
)
from .cohomology import cohomology, h1_kernel_order, kani_defect

__version__ = "0.1.0"
