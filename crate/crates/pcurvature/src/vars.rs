//! Variable registry and computation session.
//!
//! A [`Session`] bundles the prime modulus with the ordered list of named
//! variables used by every polynomial and rational function of a computation.
//! Sessions are immutable and shared behind an [`Arc`]; all operations are
//! pure, so a session can be used freely from multiple threads.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{is_prime, PrimeField};

/// Index of a variable in the session registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub usize);

/// Ordered list of variable names. Order is significant: it fixes the
/// graded-lex term order used by the canonical text form, with earlier
/// variables more significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Registry {
    names: Vec<String>,
}

impl Registry {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, a) in names.iter().enumerate() {
            for b in names.iter().skip(i + 1) {
                assert_ne!(a, b, "duplicate variable name {a:?}");
            }
        }
        Registry { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: VarId) -> &str {
        &self.names[v.0]
    }

    pub fn var(&self, name: &str) -> Option<VarId> {
        self.names.iter().position(|n| n == name).map(VarId)
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        (0..self.names.len()).map(VarId)
    }
}

/// Shared context of a computation: prime modulus plus variable registry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Session {
    modulus: u64,
    registry: Registry,
}

impl Session {
    /// Word-size moduli only: reduction after every multiply needs p^2 < 2^63.
    pub const MAX_MODULUS: u64 = 1 << 31;

    pub fn new<S: AsRef<str>>(modulus: u64, names: &[S]) -> Result<Arc<Session>> {
        if modulus >= Self::MAX_MODULUS || !is_prime(modulus) {
            return Err(Error::BadModulus(modulus));
        }
        Ok(Arc::new(Session {
            modulus,
            registry: Registry::new(names),
        }))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new_unchecked(self.modulus)
    }

    pub fn num_vars(&self) -> usize {
        self.registry.len()
    }

    pub fn var(&self, name: &str) -> VarId {
        self.registry
            .var(name)
            .unwrap_or_else(|| panic!("variable {name:?} is not registered"))
    }

    /// New session over the same modulus with extra variables appended.
    /// Existing `VarId`s remain valid in the extended session; polynomials
    /// carry over via exponent-vector padding.
    pub fn extend<S: AsRef<str>>(self: &Arc<Self>, extra: &[S]) -> Arc<Session> {
        let mut names = self.registry.names.clone();
        for n in extra {
            names.push(n.as_ref().to_string());
        }
        Arc::new(Session {
            modulus: self.modulus,
            registry: Registry::new(&names),
        })
    }
}
