"""Nonnesting supercharacter theories of pattern groups and their Hopf monoid."""

from .algebra import CycNumber, Field, FieldElement, cyc_arith, ff_arith, field_make, theta, trace
from .arcs import (
    ArcDiagram,
    NN,
    atomic_factorization,
    big_partition,
    count_polynomial,
    crossing_set,
    disjoint_union,
    enumerate_diagrams,
    is_atomic,
    is_nonnesting,
    nst,
    proj,
    restrict,
    sml_partition,
    validate,
)
from . import errors
from .errors import *  # noqa: F401,F403
from .hopf import (
    ScfVector,
    Tensor,
    check_hopf_axioms,
    coproduct_combinatorial,
    coproduct_functional,
    free_structure,
    product_combinatorial,
    product_functional,
    transport,
)
from .pattern_group import (
    AlgebraElement,
    Functional,
    GroupElement,
    big_of_functional,
    dual_orbit,
    embed_sigma,
    enumerate_group,
    f_inv,
    f_map,
    group_inv,
    group_mul,
    project_pi,
    sml_of_element,
    superclass_members,
    superclass_of,
    two_sided_orbit,
    u_eta_subgroup,
)
from .posets import (
    Poset,
    all_posets,
    antichain,
    linear_extensions,
    linear_order,
    poset_concat,
    poset_from_covers,
    poset_restrict,
    poset_splits,
)
from .supercharacters import (
    ClassFunction,
    SupercharacterTable,
    algebra_dim_linear,
    algebra_supercharacter_linear,
    coarsen_from_algebra,
    coarsen_superclass,
    ind_res_character,
    inner_product,
    supercharacter_dim,
    supercharacter_table,
    supercharacter_value,
    verify_sct,
)

__version__ = "0.1.0"

__all__ = [
    "algebra_dim_linear", "algebra_supercharacter_linear", "AlgebraElement", "all_posets",
    "antichain", "ArcDiagram", "atomic_factorization", "big_of_functional", "big_partition",
    "check_hopf_axioms", "ClassFunction", "coarsen_from_algebra", "coarsen_superclass",
    "coproduct_combinatorial", "coproduct_functional", "count_polynomial", "crossing_set",
    "cyc_arith", "CycNumber", "disjoint_union", "dual_orbit", "embed_sigma", "enumerate_diagrams",
    "enumerate_group", "f_inv", "f_map", "ff_arith", "Field", "field_make", "FieldElement",
    "free_structure", "Functional", "group_inv", "group_mul", "GroupElement", "ind_res_character",
    "inner_product", "is_atomic", "is_nonnesting", "linear_extensions", "linear_order", "NN", "nst",
    "Poset", "poset_concat", "poset_from_covers", "poset_restrict", "poset_splits",
    "product_combinatorial", "product_functional", "proj", "project_pi", "restrict", "ScfVector",
    "sml_of_element", "sml_partition", "supercharacter_dim", "supercharacter_table",
    "supercharacter_value", "SupercharacterTable", "superclass_members", "superclass_of", "Tensor",
    "theta", "trace", "transport", "two_sided_orbit", "u_eta_subgroup", "validate", "verify_sct",
] + errors.__all__

