//! Ext-quiver presentations, cyclic pairings, relations read off from the
//! A∞-products, superpotentials and the trace potential on representations.

mod presentation;
mod relations;
mod superpotential;
mod trace;

pub use presentation::{CyclicPairing, ExtQuiverPresentation};
pub use relations::{relations_from_products, DualBasis, Provenance, Relation, RelationSet};
pub use superpotential::{
    build_potential, check_cyclic, cyclic_derivative, jacobian_relations, verify_jacobian_identity, CyclicReport,
    JacobianMismatch, JacobianReport, SuperPotential,
};
pub use trace::{
    crit_equals_mc, finite_difference_gradient, mc_defect, trace_gradient, trace_polynomial, trace_potential, CritReport,
    McBlock, McDefect, Polynomial, Var,
};
