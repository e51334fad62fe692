//! Exact-arithmetic toolkit for quivers with convergent relations.
//!
//! The crate is organised along the pipeline it implements:
//!
//! * [`quiver`]: quivers, truncated path series, representations, gauge action.
//! * [`dg`]: finite-dimensional dg-algebras, splitting data and the transferred
//!   minimal A∞-structure together with the A∞-quasi-isomorphism components.
//! * [`potential`]: Ext-quiver presentations, relations from A∞-products,
//!   cyclic superpotentials, the Maurer–Cartan defect and the trace potential.
//! * [`moduli`]: relation membership, nilpotency, semi-simplification, slope
//!   stability, S-equivalence and wall-crossing comparisons.
//! * [`ncdeform`]: quotient path algebras, Ext groups, universal extensions,
//!   deformation towers and the equivalence functor.
//!
//! All arithmetic is exact; there are no tolerances anywhere in the library.

pub mod dg;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod io;
pub mod matrix;
pub mod moduli;
pub mod ncdeform;
pub mod potential;
pub mod quiver;

pub use error::{Error, Result};
pub use field::{Field, GaussianRational, NormedField, Rational, F2, F3, F5, F7};
pub use matrix::Matrix;
