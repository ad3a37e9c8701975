"""Subgroup-lattice EL-labelings for finite solvable groups."""

from .catalog import GroupSpec, parse_group_spec, resolve_catalog
from .labeling import (
    LabeledLattice,
    ProductNotSubgroupError,
    SeparationError,
    SkeletonChain,
    canonical_modular_chain,
    label_lattice,
    label_lattice_dual,
    liu_label,
    phi,
    rho,
    skeleton_chain,
    weak_separation_index,
)
from .lattice import (
    Interval,
    LatticeView,
    SubgroupLattice,
    Sublattice,
    enumerate_subgroups,
    normalized_section,
)
from .permgroup import (
    CapExceededError,
    ChiefSeries,
    Group,
    NotSolvableError,
    ParseError,
    Permutation,
    SeriesError,
    Subgroup,
    chief_series,
    generate_group,
    is_normal,
    is_solvable,
    normal_subgroups,
    parse_permutation,
    product_set,
    subgroup_closure,
    validate_series,
)
from .verify import (
    ComplementChain,
    ELReport,
    chains_of_complements,
    check_descending_equals_complements,
    check_el,
    check_liu_equivalence,
    check_projection_isomorphisms,
    check_skeleton_extensions,
    check_thevenaz,
    descending_chains,
    run_checks,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
