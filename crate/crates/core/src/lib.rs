//! Invariants of orbit configuration spaces of small covers and quasi-toric
//! manifolds over simple polytopes.
//!
//! The crate is organised bottom-up:
//!
//! * [`polytope`]: face lattices, f- and h-vectors, characteristic functions.
//! * [`combinatorics`]: partitions and the subgraph coefficients `C_I`.
//! * [`euler`]: closed Euler characteristic formulas.
//! * [`homology`]: simplicial complexes, chain complexes, exact homology.
//! * [`complexes`]: the nerve complexes `K_P`, `L_{P(m)}`, `sd(Bd Δ^n)`, `K^n_{i,j}`.
//! * [`cover`]: chain-level cover models for polygons and simplices.
//! * [`spectral`]: double complexes, total homology and spectral pages.
//! * [`reproduce`]: comparison tables against closed-form expectations.

pub mod combinatorics;
pub mod complexes;
pub mod cover;
pub mod error;
pub mod euler;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod polytope;
pub mod reproduce;
pub mod spectral;

pub use error::{Error, Result};
pub use homology::{Coeff, HomologyResult, SimplicialComplex};
pub use polytope::{SimplePolytope, Torus};
