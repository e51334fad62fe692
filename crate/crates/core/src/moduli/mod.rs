//! Stability, Jordan–Hölder factors and S-equivalence for quiver
//! representations. Exact decisions use exhaustive enumeration over finite
//! fields; over infinite fields the searches report whether they are complete.

mod classes;
mod locus;
mod semistable;
mod stability;
mod subrep;

pub use classes::{
    enumerate_representations, representation_count, s_equivalence_classes, wallcross_compare, walls_between,
    EnumerationOrder, SClass, SEquivalenceReport, WallCrossReport,
};
pub use locus::{hom_dimension, hom_space, is_nilpotent, nilpotency_index, satisfies_relations};
pub use semistable::{
    find_destabilizer, find_destabilizer_with_limit, graded_factors, group_isomorphic, is_semistable, is_stable,
    jh_filtration, jh_filtration_with_limit, same_factors, semisimplify, semisimplify_with_limit, DestabilizerSearch,
    JHFiltration, StabilityVerdict,
};
pub use stability::{wall_equation, StabilityParameter};
pub use subrep::{
    canonical_span, candidate_subreps, enumerate_subreps, subspace_count, subspaces, Quotient, SubRepresentation,
    DEFAULT_SEARCH_LIMIT,
};
