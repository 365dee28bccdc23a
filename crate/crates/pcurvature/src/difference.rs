//! Additive and multiplicative difference connections `nabla_i = T_i^-1 B_i`
//! and their p-curvature as ordered products over length-p shift orbits.
//!
//! Additive connections shift a coordinate by 1 and require the base field to
//! have characteristic p. Multiplicative connections scale a coordinate by a
//! fixed element of exact multiplicative order p, which exists in F_ell
//! whenever p divides ell - 1; the characteristic then does not divide p.

use crate::charpoly::char_poly;
use crate::error::{Error, Result};
use crate::matrix::{self, Matrix};
use crate::ratfunc::{RatField, RatFunc};
use crate::ring::Ring;
use crate::vars::VarId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftKind {
    /// x_i -> x_i + 1; orbit length = char(k) = p.
    Additive,
    /// x_i -> q x_i with q of exact order `orbit` in the base field.
    Multiplicative { q: u64 },
}

/// Difference connection: invertible matrices `B_i(x)` plus shift data.
#[derive(Debug, Clone)]
pub struct ShiftConnection {
    rat: RatField,
    coords: Vec<VarId>,
    kind: ShiftKind,
    b: Vec<Matrix<RatFunc>>,
    orbit: u64,
}

impl ShiftConnection {
    pub fn new(
        rat: RatField,
        coords: Vec<VarId>,
        kind: ShiftKind,
        b: Vec<Matrix<RatFunc>>,
        orbit: u64,
    ) -> Result<Self> {
        if b.len() != coords.len() || b.is_empty() {
            return Err(Error::InvalidConfig(
                "need one connection matrix per shifted coordinate".into(),
            ));
        }
        match kind {
            ShiftKind::Additive => {
                if orbit != rat.modulus() {
                    return Err(Error::InvalidConfig(
                        "additive p-curvature needs orbit length = characteristic".into(),
                    ));
                }
            }
            ShiftKind::Multiplicative { q } => {
                let field = rat.session().field();
                if rat.modulus() % orbit == 0 {
                    return Err(Error::InvalidConfig(
                        "multiplicative orbit length must be prime to the characteristic".into(),
                    ));
                }
                let mut pow = 1u64;
                for j in 1..=orbit {
                    pow = field.mul(pow, q);
                    if j < orbit && pow == 1 {
                        return Err(Error::InvalidConfig(format!(
                            "q = {q} has order {j}, not {orbit}"
                        )));
                    }
                }
                if pow != 1 {
                    return Err(Error::InvalidConfig(format!(
                        "q = {q} does not have order {orbit}"
                    )));
                }
            }
        }
        // Each B_i must be invertible over the function field.
        for (dir, m) in b.iter().enumerate() {
            let cp = char_poly(&rat, m);
            if rat.is_zero(&cp.coeffs[0]) {
                return Err(Error::SingularConnectionMatrix { direction: dir });
            }
        }
        Ok(ShiftConnection {
            rat,
            coords,
            kind,
            b,
            orbit,
        })
    }

    pub fn rat(&self) -> &RatField {
        &self.rat
    }

    pub fn kind(&self) -> ShiftKind {
        self.kind
    }

    pub fn orbit(&self) -> u64 {
        self.orbit
    }

    pub fn matrices(&self) -> &[Matrix<RatFunc>] {
        &self.b
    }

    /// `B_i` with the i-th coordinate moved j steps along the shift orbit.
    fn shifted(&self, dir: usize, j: u64) -> Matrix<RatFunc> {
        let v = self.coords[dir];
        match self.kind {
            ShiftKind::Additive => {
                let c = j % self.rat.modulus();
                self.b[dir].map(|e| self.rat.shift_var(e, v, c))
            }
            ShiftKind::Multiplicative { q } => {
                let field = self.rat.session().field();
                let c = field.pow(q, j);
                self.b[dir].map(|e| self.rat.scale_var(e, v, c))
            }
        }
    }

    /// Ordered orbit product `B_i(x + (p-1)e_i) ... B_i(x + e_i) B_i(x)`
    /// (additive) or `B_i(q^(p-1) x) ... B_i(q x) B_i(x)` (multiplicative).
    /// No commutativity is assumed; factors are composed right to left.
    pub fn p_curvature(&self, dir: usize) -> Matrix<RatFunc> {
        let n = self.b[dir].size();
        let mut acc = matrix::identity(&self.rat, n);
        for j in 0..self.orbit {
            acc = matrix::mul(&self.rat, &self.shifted(dir, j), &acc);
        }
        acc
    }

    /// Flatness `B_i(shift_j x) B_j(x) = B_j(shift_i x) B_i(x)` for all pairs,
    /// as a symbolic identity. Vacuously true for r = 1.
    pub fn flatness_check(&self) -> bool {
        let r = self.coords.len();
        for i in 0..r {
            for j in i + 1..r {
                let lhs = matrix::mul(&self.rat, &self.shift_along(&self.b[i], j), &self.b[j]);
                let rhs = matrix::mul(&self.rat, &self.shift_along(&self.b[j], i), &self.b[i]);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    fn shift_along(&self, m: &Matrix<RatFunc>, dir: usize) -> Matrix<RatFunc> {
        let v = self.coords[dir];
        match self.kind {
            ShiftKind::Additive => m.map(|e| self.rat.shift_var(e, v, 1)),
            ShiftKind::Multiplicative { q } => m.map(|e| self.rat.scale_var(e, v, q)),
        }
    }

    /// Difference gauge transformation: `B_i(x) -> g(shift_i x) B_i(x) g(x)^-1`.
    /// The p-curvature is then conjugated by `g(x)`.
    pub fn gauge_transform(&self, g: &Matrix<RatFunc>) -> Result<ShiftConnection> {
        let rat = &self.rat;
        let ginv = invert_matrix_rat(rat, g)?;
        let b = (0..self.b.len())
            .map(|i| {
                let shifted_g = self.shift_along(g, i);
                matrix::mul(
                    rat,
                    &matrix::mul(rat, &shifted_g, &self.b[i]),
                    &ginv,
                )
            })
            .collect();
        ShiftConnection::new(rat.clone(), self.coords.clone(), self.kind, b, self.orbit)
    }
}

/// Inverse of a matrix over the rational-function field, restricted to the
/// shapes the factored-denominator representation can express (diagonal and
/// triangular gauges in the tests).
pub fn invert_matrix_rat(rat: &RatField, m: &Matrix<RatFunc>) -> Result<Matrix<RatFunc>> {
    let n = m.size();
    // Gauss-Jordan with rational pivots; division uses RatFunc::inverse,
    // which fails loudly outside the supported class.
    let mut work = m.clone();
    let mut inv = matrix::identity(rat, n);
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !work.at(r, col).is_zero())
            .ok_or(Error::ZeroInverse)?;
        if pivot != col {
            for j in 0..n {
                let a = work.at(pivot, j).clone();
                let b = work.at(col, j).clone();
                work.set(pivot, j, b);
                work.set(col, j, a);
                let a = inv.at(pivot, j).clone();
                let b = inv.at(col, j).clone();
                inv.set(pivot, j, b);
                inv.set(col, j, a);
            }
        }
        let scale = rat.inverse(work.at(col, col))?;
        for j in 0..n {
            work.set(col, j, Ring::mul(rat, work.at(col, j), &scale));
            inv.set(col, j, Ring::mul(rat, inv.at(col, j), &scale));
        }
        for r in 0..n {
            if r == col || work.at(r, col).is_zero() {
                continue;
            }
            let factor = work.at(r, col).clone();
            for j in 0..n {
                let w = rat.sub(work.at(r, j), &Ring::mul(rat, &factor, work.at(col, j)));
                work.set(r, j, w);
                let v = rat.sub(inv.at(r, j), &Ring::mul(rat, &factor, inv.at(col, j)));
                inv.set(r, j, v);
            }
        }
    }
    Ok(inv)
}
