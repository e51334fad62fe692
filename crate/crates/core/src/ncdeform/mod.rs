//! Non-commutative deformation towers over truncated quotient path algebras.

mod algebra;
mod ext;
mod functor;
mod hom;
mod hull;
mod resolution;
mod tower;

pub use algebra::{FdModule, QuotientAlgebra, StructureTable};
pub use ext::{ext_space, extension_module, is_coboundary, pullback, universal_extension, ExtData, UniversalExtension};
pub use resolution::{ext_dimension_by_resolution, projective_resolution, ProjectiveResolution, ProjectiveTerm};
pub use hom::{module_homs, HomSpace};
pub use tower::{build_tower, EndAlgebra, NcTower, TowerLevel};
pub use hull::{hull_compare, HullLevelReport, HullReport};
pub use functor::{
    check_equivalence, counit, functor_phi, functor_psi, nilpotent_modules, phi_morphism, psi_morphism, unit, EquivalenceReport, PhiModule,
    PsiModule, RModule,
};
