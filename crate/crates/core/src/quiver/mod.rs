//! Quivers, dimension vectors, path words, truncated path series and
//! representations.

mod graph;
mod path;
mod representation;
mod series;

pub use graph::{DimVector, Edge, Quiver};
pub use path::{all_paths, enumerate_paths, paths_from, paths_of_length, PathWord};
pub use representation::{random_gauge, random_representation, Representation};
pub use series::{root_upper_bound, PathSeries, GROWTH_ROOT_BITS};
