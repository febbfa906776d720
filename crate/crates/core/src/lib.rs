pub mod cli;
pub mod error;
pub mod fan;
pub mod format;
pub mod hodge;
pub mod hull;
pub mod jacobian;
pub mod lattice;
pub mod polytope;
pub mod vector;
pub mod wps;

pub use error::{Error, Result};
pub use lattice::{IntMatrix, RatMatrix};
pub use polytope::{Face, FacetInequality, LatticePolytope, ReflexivePair};
pub use vector::LatticeVector;
