//! Coefficient-ring abstraction used by the matrix kernels.
//!
//! Operations live on a shared ring context (holding the modulus and the
//! variable registry) rather than on the elements, mirroring how a session
//! is created once and shared immutably.

use std::fmt::Debug;

use crate::field::PrimeField;

/// Commutative ring with the operations the division-free kernels need.
pub trait Ring: Clone {
    type El: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn from_int(&self, n: i64) -> Self::El;
    /// Canonical text form, used by golden-file tests and reports.
    fn to_text(&self, a: &Self::El) -> String;

    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.add(a, &self.neg(b))
    }
}

/// Rings of characteristic p carrying the Frobenius twist: coefficients are
/// raised to the p-th power (the identity on the prime field) and every
/// variable exponent is multiplied by p.
pub trait FrobeniusTwist: Ring {
    fn frobenius_twist(&self, a: &Self::El) -> Self::El;
}

impl Ring for PrimeField {
    type El = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        PrimeField::add(self, *a, *b)
    }

    fn neg(&self, a: &u64) -> u64 {
        PrimeField::neg(self, *a)
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        PrimeField::mul(self, *a, *b)
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn from_int(&self, n: i64) -> u64 {
        PrimeField::from_int(self, n)
    }

    fn to_text(&self, a: &u64) -> String {
        format!("{} (mod {})", a, self.modulus())
    }
}

impl FrobeniusTwist for PrimeField {
    // a^p = a on the prime field.
    fn frobenius_twist(&self, a: &u64) -> u64 {
        *a
    }
}
