//! Finite-dimensional dg-algebras and homotopy transfer to a minimal
//! A∞-model on cohomology.

mod ainf;
mod algebra;
mod hodge;
mod transfer;
mod tree;

pub use ainf::{check_stasheff, stasheff_value, AInfinityStructure, GradedBasis, MultilinearMap, StasheffFailure, StasheffReport};
pub use algebra::{DgAlgebra, DgaBuilder, DgaViolation};
pub use hodge::{compute_hodge, HodgeCheck, HodgeData};
pub use transfer::{
    check_morphism, cohomology_basis, transfer, transfer_i, transfer_m, transfer_m_by_trees, tree_term, AInfinityMorphism,
    MorphismReport, Transfer, TreeRoot,
};
pub use tree::{enumerate_trees, BinaryTree};

pub(crate) use ainf::for_each_tuple;
