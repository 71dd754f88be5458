//! Exact arithmetic for bound quiver algebras and their module categories.
//!
//! The crate parses presentations of algebras given by a quiver with
//! relations, computes an explicit path basis of the quotient with exact
//! structure constants (over the rationals or a prime field), and builds the
//! representation theoretic toolkit on top: projectives and injectives,
//! homomorphism and extension spaces, almost split sequences and knitting,
//! tubes, local slices, reflections, and trivial extensions by the
//! second-extension bimodule.
//!
//! All arithmetic is exact; nothing is floating point and nothing is
//! randomized. Computations that would need unbounded search are cut off by
//! explicit budgets and report honest errors instead of truncated answers.

pub mod algebra;
pub mod arknit;
pub mod slices;
pub mod decomp;
pub mod dsl;
pub mod rep;
pub mod field;
pub mod homology;
pub mod matrix;
pub mod present;
pub mod quiver;
pub mod relext;
