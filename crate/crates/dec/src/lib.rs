//! Discrete exterior calculus on simplicial complexes of arbitrary finite
//! dimension, with circumcentric (Voronoi) duals.
//!
//! The crate follows the usual DEC pipeline:
//!
//! 1. [`complex`] builds the combinatorial simplicial complex: canonical
//!    simplices, chains, and the integer boundary operator.
//! 2. [`geometry`] adds metric data: circumcenters, the circumcentric dual
//!    complex, primal/dual/support/restricted volumes and orientation signs.
//! 3. [`forms`] realizes cochains and the operator suite d, ∗, δ, Δ together
//!    with the discrete L² inner product.
//! 4. [`wedge`], [`fields`], [`homotopy`], [`variational`] and [`remesh`]
//!    provide the wedge products, vector-field calculus (♭, ♯, div, iₓ, £ₓ),
//!    the cone/cocone homotopy machinery behind the discrete Poincaré lemma,
//!    the harmonic/Maxwell variational problems on prismal complexes, and
//!    cochain transfer between meshes.
//!
//! Everything combinatorial is exact integer arithmetic; everything metric is
//! `f64`. See the `examples/` directory for one runnable walkthrough per
//! capability and `src/bin/dec.rs` for the batch front end.

// per-dimension tables are indexed in parallel throughout; iterator rewrites
// obscure which table a loop walks
#![allow(clippy::needless_range_loop)]

pub mod check;
pub mod complex;
pub mod fields;
pub mod forms;
pub mod geometry;
pub mod homotopy;
pub mod io;
pub mod meshgen;
pub mod ops;
pub mod remesh;
pub mod variational;
pub mod wedge;

pub use complex::{Chain, LocalMetric, Simplex, SimplicialComplex};
pub use forms::Cochain;
pub use geometry::GeometryTable;
pub use ops::{OperatorMatrix, Side, SparseMatrix};
