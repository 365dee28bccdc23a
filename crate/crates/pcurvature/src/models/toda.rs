//! The rank-1 Toda connection on the nil-Hecke module V_(infinity, lam):
//! `nabla_theta = theta - (omega + z sbar)` in the torus frame, with the
//! 2x2 actions
//!   omega = [[lam, 1], [0, -lam]],   sbar = [[0, 0], [1, 0]]
//! in the basis (1 (x) 1, sbar (x) 1). The p-curvature target replaces lam by
//! lam^p - lam and z by z^p: `C* = -(omega + z^p sbar) on V_(infinity,
//! lam^p - lam)`.

use crate::connection::{ConnectionFamily, ParamKind, SValues};
use crate::error::Result;
use crate::matrix::{self, Matrix};
use crate::poly::MultiPoly;
use crate::ratfunc::{RatField, RatFunc};
use crate::vars::{Session, VarId};

pub struct TodaModel {
    pub family: ConnectionFamily,
    pub z: VarId,
    pub lam: VarId,
}

/// Matrix of the Cartan generator omega on V_(infinity, w) for a weight
/// expression w: `[[w, alpha(omega)], [0, -w]]` with alpha(omega) = 1.
fn omega_action(rat: &RatField, weight: &MultiPoly) -> Matrix<RatFunc> {
    Matrix::from_rows(vec![
        vec![rat.from_poly(weight.clone()), rat.one()],
        vec![rat.zero(), rat.from_poly(rat.polys().neg(weight))],
    ])
}

fn sbar_action(rat: &RatField) -> Matrix<RatFunc> {
    Matrix::from_rows(vec![
        vec![rat.zero(), rat.zero()],
        vec![rat.one(), rat.zero()],
    ])
}

pub fn toda_rank1(p: u64) -> Result<TodaModel> {
    let session = Session::new(p, &["z", "lam"])?;
    let rat = RatField::new(session.clone());
    let z = session.var("z");
    let lam = session.var("lam");
    let polys = rat.polys();
    // A(z) = omega + z sbar; the lam-dependence is affine, not linear, so
    // this is a family but not a pencil.
    let a = matrix::add(
        &rat,
        &omega_action(&rat, &polys.var(lam)),
        &matrix::scale(&rat, &rat.var(z), &sbar_action(&rat)),
    );
    let family = ConnectionFamily::new(
        rat,
        vec![z],
        vec![(lam, ParamKind::Infinitesimal)],
        vec![a],
    )?;
    Ok(TodaModel { family, z, lam })
}

impl TodaModel {
    pub fn rat(&self) -> &RatField {
        self.family.rat()
    }

    /// `-(omega + z^p sbar)` on V_(infinity, lam^p - lam).
    pub fn target(&self, s: SValues<'_>) -> Vec<Matrix<RatFunc>> {
        let rat = self.rat();
        let polys = rat.polys();
        let field = rat.session().field();
        let p = rat.modulus();
        let weight = match s {
            SValues::Symbolic => {
                polys.sub(&polys.var_pow(self.lam, p as u16), &polys.var(self.lam))
            }
            SValues::Values(vals) => polys.constant(field.sub(field.pow(vals[0], p), vals[0])),
        };
        let zp = rat.from_poly(polys.var_pow(self.z, p as u16));
        let t = matrix::add(
            rat,
            &omega_action(rat, &weight),
            &matrix::scale(rat, &zp, &sbar_action(rat)),
        );
        vec![matrix::neg(rat, &t)]
    }
}
