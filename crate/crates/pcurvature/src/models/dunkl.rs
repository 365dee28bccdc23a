//! The irregular Dunkl connection for A_1: a 2x2 mixed-periodic pencil
//! `d/dx - [lam D + (c/x) sigma]` on the regular line, with `D = diag(1,-1)`
//! the Cartan action on V_lam^0 = k[Z/2] and `sigma` the swap (left
//! multiplication by the reflection). The coupling c is periodic, the weight
//! lam infinitesimal.
//!
//! Root normalization: alpha(omega) = 1, with x the coordinate alpha(h) on
//! the Cartan. The sign of the reflection term in the target follows the
//! Gaudin-operator identity `C* = -G(c^p - c, h^p, lam^p)`, which the tests
//! pin against the S_2 Gaudin matrix.

use crate::connection::{ParamKind, Pencil, SValues};
use crate::error::Result;
use crate::matrix::{self, Matrix};
use crate::ratfunc::{LinearForm, RatField, RatFunc};
use crate::vars::{Session, VarId};

pub struct DunklModel {
    pub pencil: Pencil,
    pub x: VarId,
    pub c: VarId,
    pub lam: VarId,
}

pub fn dunkl_irregular_a1(p: u64) -> Result<DunklModel> {
    let session = Session::new(p, &["x", "c", "lam"])?;
    let rat = RatField::new(session.clone());
    let x = session.var("x");
    let c = session.var("c");
    let lam = session.var("lam");
    let diag = Matrix::from_rows(vec![
        vec![rat.one(), rat.zero()],
        vec![rat.zero(), rat.from_poly(rat.polys().from_int(-1))],
    ]);
    let swap_over_x = {
        let pole = rat.make(
            rat.polys().one(),
            [(LinearForm::var(rat.polys(), x), 1u32)].into_iter().collect(),
        );
        Matrix::from_rows(vec![
            vec![rat.zero(), pole.clone()],
            vec![pole, rat.zero()],
        ])
    };
    // B = c * (sigma/x) + lam * D; c periodic, lam infinitesimal.
    let pencil = Pencil::new(
        rat,
        vec![x],
        vec![(c, ParamKind::Periodic), (lam, ParamKind::Infinitesimal)],
        vec![vec![swap_over_x, diag]],
    )?;
    Ok(DunklModel { pencil, x, c, lam })
}

impl DunklModel {
    pub fn rat(&self) -> &RatField {
        self.pencil.family.rat()
    }

    /// Displayed target `-lam^p D + ((c - c^p)/x^p) sigma`, equal to
    /// `-G(c^p - c, h^p, lam^p)` for the S_2 Gaudin matrix.
    pub fn target(&self, s: SValues<'_>) -> Vec<Matrix<RatFunc>> {
        let rat = self.rat();
        let polys = rat.polys();
        let field = rat.session().field();
        let p = rat.modulus();
        let (c_factor, lam_p) = match s {
            SValues::Symbolic => (
                polys.sub(&polys.var(self.c), &polys.var_pow(self.c, p as u16)),
                polys.var_pow(self.lam, p as u16),
            ),
            SValues::Values(vals) => (
                polys.constant(field.sub(vals[0], field.pow(vals[0], p))),
                polys.constant(field.pow(vals[1], p)),
            ),
        };
        let off = rat.make(
            c_factor,
            [(LinearForm::var(polys, self.x), p as u32)].into_iter().collect(),
        );
        let lam_p = rat.from_poly(lam_p);
        let t = Matrix::from_rows(vec![
            vec![rat.neg(&lam_p), off.clone()],
            vec![off, lam_p],
        ]);
        vec![t]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::{is_nilpotent, pencil_isospectral_rat, PencilStrategy};
    use rand::SeedableRng;

    #[test]
    fn target_matches_mixed_b_star() {
        let model = dunkl_irregular_a1(5).unwrap();
        assert_eq!(
            model.target(SValues::Symbolic),
            model.pencil.b_star_mixed(SValues::Symbolic)
        );
    }

    #[test]
    fn constant_diagonal_limit_at_c_zero() {
        // c = 0: d - lam D with constant diagonal D, so C = -lam^p D.
        let model = dunkl_irregular_a1(5).unwrap();
        let rat = model.rat();
        let field = rat.session().field();
        for lam in 0..5u64 {
            let c = model.pencil.family.p_curvature(0, Some(&[0, lam])).unwrap();
            let factor = rat.constant(field.neg(field.pow(lam, 5)));
            let d = Matrix::from_rows(vec![
                vec![rat.one(), rat.zero()],
                vec![rat.zero(), rat.from_poly(rat.polys().from_int(-1))],
            ]);
            assert_eq!(c, matrix::scale(rat, &factor, &d));
        }
    }

    #[test]
    fn nilpotent_at_lam_zero_c_in_prime_field() {
        let model = dunkl_irregular_a1(5).unwrap();
        let rat = model.rat();
        for c in 0..5u64 {
            let curv = model.pencil.family.p_curvature(0, Some(&[c, 0])).unwrap();
            assert!(is_nilpotent(rat, &curv));
        }
    }

    #[test]
    fn fully_symbolic_isospectrality_p5() {
        let model = dunkl_irregular_a1(5).unwrap();
        let c = model.pencil.family.p_curvature_all(None).unwrap();
        let t = model.target(SValues::Symbolic);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let verdict =
            pencil_isospectral_rat(model.rat(), &c, &t, PencilStrategy::Symbolic, &mut rng)
                .unwrap();
        assert!(verdict.equal);
    }

    #[test]
    fn target_is_minus_twisted_gaudin_s2() {
        // C*(c, lam)(h) = -G(c^p - c, h^p, lam^p): build the S_2 Gaudin
        // matrix at the twisted arguments and compare entrywise. The Gaudin
        // data uses h = (x/2, -x/2), so alpha(h) = x and the twisted pole is
        // x^p. Symbolic in (x, c, lam) via the shared registry names.
        let p = 5u64;
        let model = dunkl_irregular_a1(p).unwrap();
        let rat = model.rat();
        let polys = rat.polys();
        let target = model.target(SValues::Symbolic);
        // -G at twisted arguments, assembled by hand from the closed form
        // G = [[y, c/x], [c/x, -y]] with y -> lam^p, c -> c^p - c, x -> x^p.
        let lam_p = rat.from_poly(polys.var_pow(model.lam, p as u16));
        let c_tw = polys.sub(&polys.var_pow(model.c, p as u16), &polys.var(model.c));
        let off = rat.make(
            c_tw,
            [(LinearForm::var(polys, model.x), p as u32)].into_iter().collect(),
        );
        let minus_g = Matrix::from_rows(vec![
            vec![rat.neg(&lam_p), rat.neg(&off)],
            vec![rat.neg(&off), lam_p.clone()],
        ]);
        assert_eq!(target[0], minus_g);
    }
}
