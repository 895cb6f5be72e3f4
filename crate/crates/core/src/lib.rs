//! Finite-dimensional hermitian representations of the noncommutative
//! genus-g surface algebras.
//!
//! The algebra is generated by hermitian `X, Y, Z` subject to
//!
//! ```text
//! [X, Y] = i hbar Z
//! [Y, Z] = i hbar (p(X) p'(X) + T(X, Y^2))
//! [Z, X] = i hbar (2 Y^3 + Y p(X) + p(X) Y)
//! ```
//!
//! with `T(X, Y^2) = (Y^2 p'(X) + p'(X) Y^2) / 2`. The crate builds the
//! defining polynomials, verifies candidate matrix triples against these
//! relations, constructs the one-, two- and three-dimensional families,
//! tests sparsity graphs of `Y` against the known exclusion rules, and
//! meshes the classical level set.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod graphs;
pub mod levelset;
pub mod linalg;
pub mod poly;
pub mod repfile;
pub mod reps;
pub mod rootfind;
pub mod surface;

pub use error::{Error, Result};
pub use graphs::{forbidden_check, graph_of, GraphVerdict, MatrixGraph};
pub use linalg::{
    commutator, equivalence_2d, relation_residuals, ComplexMatrix, HermitianMatrix, ResidualReport,
};
pub use poly::RealPolynomial;
pub use repfile::RepFileV1;
pub use reps::{classify, Irreducibility, RepKind, RepMeta, Representation};
pub use rootfind::{isolate_real_roots, refine, Bracket};
pub use surface::{RawParams, SurfaceParams};

/// Default relative residual tolerance for accepting a representation.
pub const DEFAULT_TOL: f64 = 1e-9;
