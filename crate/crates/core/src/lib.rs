//! Normal forms, orbit sampling and J-set witnesses for finitely generated
//! abelian semigroups of affine maps on ℂⁿ.
//!
//! The pipeline homogenizes each generator `f = (A, a)` into the matrix
//! `[[1, 0], [a, A]]`, conjugates the commuting family into a block
//! lower-triangular normal form, extracts the critical vector `w₀` and the
//! open set `U` on which local hypercyclicity forces a dense orbit, and then
//! scores orbits and extended limit sets at a finite scale.

// `!(x <= cap)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analyzer;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod homogenize;
pub mod linalg;
pub mod model;
pub mod normalform;
pub mod systems;

pub use error::{Error, Result};
pub use model::{AffineMap, ComplexMatrix, ComplexScalar, ComplexVector, GeneratorSet, Word};
