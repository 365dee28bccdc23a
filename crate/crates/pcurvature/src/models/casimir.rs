//! The irregular Casimir connection in its sl2 instance: a mixed-periodic
//! pencil on the alpha-line (coordinate b = alpha(h) on the regular Cartan)
//! with fiber a tensor product of evaluation representations V(m_j)(x_j).
//!
//! The connection is `d/db - [hbar Cbar / b - sum_j x_j omega^(j)]` with
//! `Cbar = (ef + fe)/2` acting diagonally and `omega = h_std/2` the
//! fundamental coweight; hbar is periodic and the evaluation points x_j are
//! infinitesimal parameters. Only the single Cartan current `omega (x) z` of
//! the evaluation action enters, acting as `sum_j x_j omega^(j)`.

use crate::connection::{ParamKind, Pencil, SValues};
use crate::error::Result;
use crate::matrix::{self, Matrix};
use crate::models::sl2;
use crate::ratfunc::{LinearForm, RatField, RatFunc};
use crate::vars::{Session, VarId};

pub struct CasimirModel {
    pub pencil: Pencil,
    pub reps: Vec<u32>,
    pub b_coord: VarId,
    pub hbar: VarId,
    pub x: Vec<VarId>,
    casimir_half: Matrix<RatFunc>,
    coweights: Vec<Matrix<RatFunc>>,
}

pub fn irregular_casimir_sl2(p: u64, reps: &[u32]) -> Result<CasimirModel> {
    sl2::require_odd_characteristic(p, "the Casimir connection")?;
    let n = reps.len();
    let mut names: Vec<String> = vec!["b".into(), "hbar".into()];
    names.extend((1..=n).map(|j| format!("x{j}")));
    let session = Session::new(p, &names)?;
    let rat = RatField::new(session.clone());
    let field = session.field();
    let b_coord = session.var("b");
    let hbar = session.var("hbar");
    let x: Vec<VarId> = (1..=n).map(|j| session.var(&format!("x{j}"))).collect();
    let half = field.inv(2)?;

    // Cbar = (ef + fe)/2 for the diagonal sl2 action.
    let e = sl2::diagonal_action(&rat, reps, sl2::e_matrix);
    let f = sl2::diagonal_action(&rat, reps, sl2::f_matrix);
    let ef_fe = matrix::add(
        &rat,
        &matrix::mul(&rat, &e, &f),
        &matrix::mul(&rat, &f, &e),
    );
    let casimir_half = matrix::scale(&rat, &rat.constant(half), &ef_fe);

    // omega^(j) = (1/2) h_std acting on the j-th factor.
    let coweights: Vec<Matrix<RatFunc>> = (0..n)
        .map(|j| {
            let h = sl2::lift_to_site(&rat, reps, j, &sl2::h_matrix(&rat, reps[j]));
            matrix::scale(&rat, &rat.constant(half), &h)
        })
        .collect();

    // Pencil coefficients: hbar couples to Cbar/b, each x_j to -omega^(j).
    let pole = rat.make(
        rat.polys().one(),
        [(LinearForm::var(rat.polys(), b_coord), 1u32)]
            .into_iter()
            .collect(),
    );
    let mut per_dir: Vec<Matrix<RatFunc>> = vec![matrix::scale(&rat, &pole, &casimir_half)];
    for w in &coweights {
        per_dir.push(matrix::neg(&rat, w));
    }
    let mut params = vec![(hbar, ParamKind::Periodic)];
    params.extend(x.iter().map(|&v| (v, ParamKind::Infinitesimal)));
    let pencil = Pencil::new(rat, vec![b_coord], params, vec![per_dir])?;
    Ok(CasimirModel {
        pencil,
        reps: reps.to_vec(),
        b_coord,
        hbar,
        x,
        casimir_half,
        coweights,
    })
}

impl CasimirModel {
    pub fn rat(&self) -> &RatField {
        self.pencil.family.rat()
    }

    pub fn dim(&self) -> usize {
        self.pencil.family.dim()
    }

    /// Displayed target: `(hbar - hbar^p) (alpha(omega)/b^p) Cbar
    /// + sum_j x_j^p omega^(j)` with alpha(omega) = 1.
    pub fn target(&self, s: SValues<'_>) -> Vec<Matrix<RatFunc>> {
        let rat = self.rat();
        let polys = rat.polys();
        let field = rat.session().field();
        let p = rat.modulus();
        let pole_p = |num: crate::poly::MultiPoly| {
            rat.make(
                num,
                [(LinearForm::var(polys, self.b_coord), p as u32)]
                    .into_iter()
                    .collect(),
            )
        };
        let mut t = match s {
            SValues::Symbolic => {
                let hb = polys.sub(&polys.var(self.hbar), &polys.var_pow(self.hbar, p as u16));
                matrix::scale(rat, &pole_p(hb), &self.casimir_half)
            }
            SValues::Values(vals) => {
                let hb = field.sub(vals[0], field.pow(vals[0], p));
                matrix::scale(rat, &pole_p(polys.constant(hb)), &self.casimir_half)
            }
        };
        for (j, w) in self.coweights.iter().enumerate() {
            let xp = match s {
                SValues::Symbolic => rat.from_poly(polys.var_pow(self.x[j], p as u16)),
                SValues::Values(vals) => rat.constant(field.pow(vals[j + 1], p)),
            };
            t = matrix::add(rat, &t, &matrix::scale(rat, &xp, w));
        }
        vec![t]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::{pencil_isospectral_rat, PencilStrategy};
    use rand::SeedableRng;

    #[test]
    fn casimir_target_matches_mixed_b_star() {
        let model = irregular_casimir_sl2(5, &[1]).unwrap();
        assert_eq!(
            model.target(SValues::Symbolic),
            model.pencil.b_star_mixed(SValues::Symbolic)
        );
    }

    #[test]
    fn casimir_target_loses_x_term_at_zero() {
        let model = irregular_casimir_sl2(5, &[1, 1]).unwrap();
        // all x_j = 0: the target is the pencil limit, no coweight term.
        let t = model.target(SValues::Values(&[3, 0, 0]));
        let rat = model.rat();
        let field = rat.session().field();
        let hb = field.sub(3, field.pow(3, 5));
        let pole = rat.make(
            rat.polys().constant(hb),
            [(LinearForm::var(rat.polys(), model.b_coord), 5u32)]
                .into_iter()
                .collect(),
        );
        let expected = matrix::scale(rat, &pole, &model.casimir_half);
        assert_eq!(t[0], expected);
    }

    #[test]
    fn casimir_single_factor_isospectral_symbolically() {
        // n = 1, V(1): 2x2 mixed pencil, everything symbolic at p = 3.
        let model = irregular_casimir_sl2(3, &[1]).unwrap();
        let c = model.pencil.family.p_curvature_all(None).unwrap();
        let t = model.target(SValues::Symbolic);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let verdict =
            pencil_isospectral_rat(model.rat(), &c, &t, PencilStrategy::Symbolic, &mut rng)
                .unwrap();
        assert!(verdict.equal);
    }
}
