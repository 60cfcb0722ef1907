//! Exact rational computations for n-Lie algebras: the fundamental
//! identity, algebras induced by traces, derived and central series,
//! low-degree cohomology and one-dimensional central extensions.

pub mod algebra;
pub mod catalog;
pub mod cohomology;
pub mod error;
pub mod extensions;
pub mod induction;
pub mod linalg;
pub mod reproduce;
pub mod structure;
pub mod wedge;

pub use algebra::{FundamentalObject, NLieAlgebra};
pub use error::{Error, Result};
pub use induction::{induce, TraceMap};
pub use linalg::{Matrix, Rational, Subspace, Vector};
pub use wedge::{MultiIndex, SkewMap};
