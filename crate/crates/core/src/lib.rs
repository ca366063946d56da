//! Exact computations for the type-A and type-D quivers with potential over `Q(ζ)`, `ζ³ = 1`.

pub mod cuts;
pub mod error;
pub mod families;
pub mod higher_ar;
pub mod io;
pub mod jacobian;
pub mod linalg;
pub mod potential;
pub mod quiver;
pub mod report;
pub mod scalar;
pub mod skew;

pub use error::{Error, Result};
pub use jacobian::{compute_algebra, Element, JacobianAlgebra, SymmetryVerdict};
pub use potential::{Cycle, PathSum, Potential};
pub use quiver::{Arrow, ArrowLabel, Family, Path, Quiver, Vertex};
pub use scalar::{Cyc3, Rational};
