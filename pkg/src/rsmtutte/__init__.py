"""Exact arithmetic for ranked sets with multiplicity: multivariate
Tutte polynomials, derived invariants, and closed-form expectations of
those invariants over random restrictions and contractions."""

from .construct import (
    CIRCLE,
    REAL_LINE,
    TRIVIAL_GROUP,
    AbelianGroupSpec,
    GraphSpec,
    GroupProvenance,
    LieGroupSpec,
    MultiplicitySpec,
    VectorListSpec,
    VectorProvenance,
    enumerate_homs,
    euler_char,
    finite_group_elements,
    hom_image,
    hom_count,
    incidence_vectors,
    lie_multiplicity,
    rsm_explicit,
    rsm_from_abelian,
    rsm_from_graph,
    rsm_from_vectors,
    uniform_matroid,
)
from .exactlinalg import (
    InputError,
    QuotientStructure,
    SmithForm,
    fourier_motzkin_eliminate,
    quotient_structure,
    rational_rank,
    snf,
    solve_exact,
)
from .expect import (
    REGISTRY,
    IdentityRecord,
    InapplicableIdentity,
    SampleReport,
    UnknownIdentity,
    brute_force_expectation,
    closed_form,
    expectation_value,
    monte_carlo,
    verify_corpus,
    verify_identity,
)
from .geometry import (
    ScaleExceeded,
    Zonotope,
    arrangement_flat_identities,
    ehrhart_closed,
    flats_sum_applicable,
    lattice_points_half_open,
    lattice_points_zonotope,
    layer_count,
)
from .instances import (
    instance_from_dict,
    load_corpus,
    load_corpus_instance,
    load_instance,
    parse_rational,
)
from .invariants import (
    characteristic,
    characteristic_num,
    chromatic,
    chromatic_num,
    ehrhart_multivariate,
    ehrhart_multivariate_num,
    flow,
    flow_num,
    multivariate_tutte,
    potts,
    potts_direct,
    rank_monomial,
    rank_nullity,
    set_monomial,
    subset_corank,
    tutte,
    tutte_num,
    tutte_shifted,
    w_num,
    z_num,
)
from .poly import Poly, PoleError, VarRegistry
from .rsm import MissingMetadata, NotAMatroid, Rsm

__all__ = [name for name in dir() if not name.startswith("_")]
