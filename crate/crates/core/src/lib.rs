//! Structure groups of finite non-degenerate involutive braided solutions of
//! the set-theoretic Yang–Baxter equation.
//!
//! Group elements are handled through the faithful embedding of `G(X,S)` into
//! `Sym(X) ⋉ Z^X`, which makes the word problem a matter of exact arithmetic.
//! On top of it the crate computes frozen elements and the finite quotient
//! `W`, generalized-torsion certificates, retract towers with a left-order
//! oracle for retractable solutions, and the small-`n` census.
//!
//! The lattice coordinates are generic over [`Coord`]; [`GroupElement`] and
//! [`BigGroupElement`] are the usual instantiations.

pub mod ball;
pub mod census;
pub mod element;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod frozen;
pub mod orders;
pub mod perm;
pub mod presentation;
pub mod scalar;
pub mod solution;
pub mod word;

pub use element::{evaluate, Element, Representation};
pub use error::{Error, Result};
pub use perm::Permutation;
pub use scalar::Coord;
pub use solution::{Solution, ValidationError};
pub use word::{Letter, Word};

/// Group element with checked 64-bit lattice coordinates.
pub type GroupElement = Element<i64>;
/// Group element with arbitrary-precision lattice coordinates.
pub type BigGroupElement = Element<num_bigint::BigInt>;
/// Representation with checked 64-bit lattice coordinates.
pub type GroupRepresentation = Representation<i64>;
