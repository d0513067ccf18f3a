//! Fixed-point data and localization integrals for Quot-scheme
//! compactifications of maps `P^1 -> Gr_r(C^n)`.
//!
//! The `S^1`-fixed components of the Quot scheme are labelled by admissible
//! pairs of partitions ([`partitions`]). For each component this crate
//! computes the tangent weights ([`weights`]), and for the distinguished
//! components (`β = 0`, which are partial flag manifolds) the weight block
//! forms ([`blockform`]), the equivariant Euler class of the normal bundle
//! ([`euler`]) and the localization integral of `e^{κζ}` ([`mirror`]),
//! integrating over the flag manifolds with [`flagint`]. All arithmetic is
//! exact ([`symalg`]).

pub mod blockform;
pub mod cli;
mod error;
pub mod euler;
pub mod flagint;
pub mod mirror;
pub mod partitions;
pub mod symalg;
pub mod weights;

pub use error::{Error, Result};
