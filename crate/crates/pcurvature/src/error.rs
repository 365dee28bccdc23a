//! Error type shared by all modules.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Inversion of zero in a prime field.
    ZeroInverse,
    /// `modulus` is not prime or out of the supported word-size range.
    BadModulus(u64),
    /// `find_order_p_element(ell, p)` requires `p | ell - 1`.
    NoRootOfUnity { ell: u64, p: u64 },
    /// Matrix operands have incompatible sizes.
    SizeMismatch { left: usize, right: usize },
    /// A pencil comparison was given a family with a non-commuting pair.
    NonCommutingPencil { list: &'static str, i: usize, j: usize },
    /// Exterior-power index out of `0..=N`.
    WedgeOutOfRange { m: usize, n: usize },
    /// Evaluation hit a zero of a denominator factor.
    PoleAtPoint(String),
    /// A rational-function inverse was requested for a numerator outside the
    /// monomial-times-linear class the denominator representation supports.
    NonInvertible(String),
    /// Sampling could not avoid poles within the retry budget.
    DegenerateSampling { retries: u32 },
    /// `flat_section_basis` requires identically vanishing p-curvature.
    NonzeroPCurvature { direction: usize },
    /// A difference-connection matrix is singular over the function field.
    SingularConnectionMatrix { direction: usize },
    /// Model/configuration errors surfaced by constructors and the harness.
    InvalidConfig(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroInverse => write!(f, "inverse of zero in a prime field"),
            Error::BadModulus(p) => write!(f, "modulus {p} is not a prime below 2^31"),
            Error::NoRootOfUnity { ell, p } => {
                write!(f, "F_{ell} has no element of order {p}: {p} does not divide {ell} - 1")
            }
            Error::SizeMismatch { left, right } => {
                write!(f, "matrix size mismatch: {left} vs {right}")
            }
            Error::NonCommutingPencil { list, i, j } => {
                write!(f, "pencil input `{list}` is not commuting: [L_{i}, L_{j}] != 0")
            }
            Error::WedgeOutOfRange { m, n } => {
                write!(f, "Tr wedge^{m} undefined for an {n} x {n} matrix")
            }
            Error::PoleAtPoint(which) => write!(f, "evaluation point lies on a pole of {which}"),
            Error::NonInvertible(what) => write!(f, "cannot invert rational function {what}"),
            Error::DegenerateSampling { retries } => {
                write!(f, "could not sample off the pole locus in {retries} attempts")
            }
            Error::NonzeroPCurvature { direction } => {
                write!(f, "flat sections need zero p-curvature, but C_{direction} != 0")
            }
            Error::SingularConnectionMatrix { direction } => {
                write!(f, "difference connection matrix B_{direction} has zero determinant")
            }
            Error::InvalidConfig(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
