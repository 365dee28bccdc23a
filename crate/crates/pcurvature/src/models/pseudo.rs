//! The non-trivializable pseudo-pencil `nabla(s) = d - (1/x) [[0, 1], [s, 0]]`
//! and its closed-form p-curvature:
//!   p odd:  C(s) = (1/x^p) [[0, 1 - s^((p-1)/2)], [s - s^((p+1)/2), 0]]
//!   p = 2:  C(s) = (1/x^2) [[s, 1], [s, s]]
//! The second exterior trace has a simple zero at s = 0, so the family fails
//! the trivializability-at-zero test.

use crate::connection::{ConnectionFamily, ParamKind};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::ratfunc::{LinearForm, RatField, RatFunc};
use crate::vars::{Session, VarId};

pub struct PseudoPencilModel {
    pub family: ConnectionFamily,
    pub x: VarId,
    pub s: VarId,
}

pub fn pseudo_pencil_example(p: u64) -> Result<PseudoPencilModel> {
    let session = Session::new(p, &["x", "s"])?;
    let rat = RatField::new(session.clone());
    let polys = rat.polys();
    let x = session.var("x");
    let s = session.var("s");
    let over_x = |num: crate::poly::MultiPoly| rat.over_form(num, LinearForm::var(polys, x), 1);
    let b = Matrix::from_rows(vec![
        vec![rat.zero(), over_x(polys.one())],
        vec![over_x(polys.var(s)), rat.zero()],
    ]);
    let family = ConnectionFamily::new(
        rat,
        vec![x],
        vec![(s, ParamKind::Periodic)],
        vec![b],
    )?;
    Ok(PseudoPencilModel { family, x, s })
}

impl PseudoPencilModel {
    pub fn rat(&self) -> &RatField {
        self.family.rat()
    }

    /// The paper-level closed form of C(s), built directly.
    pub fn closed_form(&self) -> Matrix<RatFunc> {
        let rat = self.rat();
        let polys = rat.polys();
        let p = rat.modulus();
        let over_xp = |num: crate::poly::MultiPoly| {
            rat.make(
                num,
                [(LinearForm::var(polys, self.x), p as u32)]
                    .into_iter()
                    .collect(),
            )
        };
        if p == 2 {
            Matrix::from_rows(vec![
                vec![over_xp(polys.var(self.s)), over_xp(polys.one())],
                vec![over_xp(polys.var(self.s)), over_xp(polys.var(self.s))],
            ])
        } else {
            let a = ((p - 1) / 2) as u16;
            let top = polys.sub(&polys.one(), &polys.var_pow(self.s, a));
            let bottom = polys.sub(&polys.var(self.s), &polys.var_pow(self.s, a + 1));
            Matrix::from_rows(vec![
                vec![rat.zero(), over_xp(top)],
                vec![over_xp(bottom), rat.zero()],
            ])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::trace_wedge;
    use crate::connection::trivializable_at_zero_test;

    #[test]
    fn closed_forms_for_small_primes() {
        for p in [2u64, 3, 5, 7] {
            let model = pseudo_pencil_example(p).unwrap();
            let c = model.family.p_curvature(0, None).unwrap();
            assert_eq!(c, model.closed_form(), "closed form at p = {p}");
        }
    }

    #[test]
    fn not_trivializable_at_zero() {
        for p in [2u64, 3, 5, 7] {
            let model = pseudo_pencil_example(p).unwrap();
            let c = model.family.p_curvature(0, None).unwrap();
            assert!(!trivializable_at_zero_test(model.rat(), &c, model.s).unwrap());
        }
    }

    #[test]
    fn second_wedge_trace_at_p2() {
        // Tr wedge^2 C(s) = (s + s^2)/x^4 at p = 2.
        let model = pseudo_pencil_example(2).unwrap();
        let rat = model.rat();
        let polys = rat.polys();
        let c = model.family.p_curvature(0, None).unwrap();
        let tw = trace_wedge(rat, &c, 2).unwrap();
        let expected = rat.make(
            polys.add(&polys.var(model.s), &polys.var_pow(model.s, 2)),
            [(LinearForm::var(polys, model.x), 4u32)].into_iter().collect(),
        );
        assert_eq!(tw, expected);
    }
}
