//! Exact computation of p-curvature for pencils of flat connections and for
//! additive/multiplicative difference connections over prime fields, together
//! with verification of the isospectrality of the p-curvature with the
//! Frobenius-twisted connection form on a zoo of concrete models
//! (KZ, Casimir, Dunkl, Toda, Gaudin/Calogero-Moser, qKZ R-matrix).
//!
//! All arithmetic is exact: residues mod a word-size prime, sparse
//! multivariate polynomials, and rational functions whose denominators stay
//! factored into linear forms. Characteristic polynomials are computed
//! division-free (Samuelson-Berkowitz), so every spectral claim is decided by
//! exact coefficient comparison, never by root-finding.

pub mod charpoly;
pub mod connection;
pub mod difference;
pub mod error;
pub mod field;
pub mod matrix;
pub mod models;
pub mod poly;
pub mod ratfunc;
pub mod report;
pub mod ring;
pub mod suite;
pub mod vars;
pub mod verify;

pub use error::{Error, Result};
