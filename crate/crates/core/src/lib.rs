//! Exact invariants of numerical semigroups generated by squares, cubes and
//! quartics of three consecutive integers.
//!
//! For a 3-generated numerical semigroup S = ⟨d₁,d₂,d₃⟩ this crate computes,
//! with unbounded exact arithmetic throughout:
//!
//! - the brute-force oracle layer ([`apery`]): Apéry sets by shortest-path
//!   relaxation over residue classes, gaps, Frobenius number, genus,
//!   symmetry, truncated Hilbert series;
//! - the minimal-relation matrix of a nonsymmetric S and the derived syzygy
//!   degrees, pseudo-Frobenius numbers, Frobenius number, genus and the
//!   six-term Hilbert-series numerator ([`relations`]);
//! - the residue-class families R_n^k = ⟨(n−1)^k, n^k, (n+1)^k⟩ for
//!   k = 2, 3, 4 as transcribed polynomial tables, cross-validated against
//!   the matrix machinery and the oracle ([`families`]);
//! - structural symmetry classification with machine-checkable certificates
//!   for the classification of symmetric R_n^k ([`symmetry`]);
//! - exact polynomial fitting over residue classes, duality checks and
//!   period detection for higher powers ([`explorer`]).

pub mod apery;
pub mod error;
pub mod explorer;
pub mod families;
pub mod pairs;
pub mod poly;
pub mod relations;
pub mod semigroup;
pub mod symmetry;

pub use error::{Error, Result};
pub use semigroup::Semigroup;
