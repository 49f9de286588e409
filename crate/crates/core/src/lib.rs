//! Exact computations with lines in finite projective spaces.
//!
//! The crate builds line sets in PG(d,q) (tangents and diverted tangents of the
//! moment curve, small plane and three-space configurations) and subspace
//! designs in the space of low-degree polynomials, then decides by exhaustive
//! enumeration whether a line set meets every hyperplane in a spanning set,
//! whether a co-dimension-two transversal exists, and what design parameters a
//! family of subspaces actually achieves.
//!
//! All arithmetic is exact over GF(p^k); see [`field::GaloisField`].

pub mod acceptance;
pub mod constructions;
pub mod error;
pub mod field;
pub mod linalg;
pub mod pluecker;
pub mod poly;
pub mod projective;
pub mod report;
pub mod verification;

pub use constructions::{DesignFamily, DesignParams, Injection, LineSet, PolySubspace};
pub use error::{Error, Result};
pub use field::{Elem, GaloisField};
pub use pluecker::{Flavor, GrassmannSpec, PlueckerVector};
pub use projective::{gaussian_binomial, Hyperplane, ProjectiveSpace, Subspace, DEFAULT_BUDGET};
