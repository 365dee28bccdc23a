//! The rank-one quantum KZ model and its additive degeneration.
//!
//! Multiplicative: `nabla(q, t) = T^-1 R(q, z) diag(t, 1/t)` over F_ell with
//! the shift `z -> qq z` for a fixed element qq of exact order p (so p must
//! divide ell - 1). The p-curvature, an ordered orbit product, is isospectral
//! to `R(q^p, z^p) diag(t^p, t^-p)`.
//!
//! Additive: `nabla(s, t) = T^-1 R_add(s, u) diag(t, 1/t)` over F_p with the
//! shift `u -> u + 1`, `R_add(s, u) = 1 + (s/u) [[1,1],[1,1]]`; the target is
//! `R_add(s^p - s, u^p - u) diag(t^p, t^-p)`. The shift orbit of u covers
//! every residue, so u stays symbolic throughout.

use std::collections::BTreeMap;

use crate::difference::{ShiftConnection, ShiftKind};
use crate::error::Result;
use crate::field::find_order_p_element;
use crate::matrix::{self, Matrix};
use crate::poly::MultiPoly;
use crate::ratfunc::{LinearForm, RatField, RatFunc};
use crate::ring::Ring;
use crate::vars::{Session, VarId};

pub struct QkzModel {
    pub rat: RatField,
    pub ell: u64,
    pub p: u64,
    /// Primitive p-th root of unity in F_ell driving the shift.
    pub qq: u64,
    pub z: VarId,
    pub q: VarId,
    pub t: VarId,
    /// Connection matrix B(z) = R(q, z) diag(t, 1/t) with q, t symbolic.
    pub b: Matrix<RatFunc>,
}

/// `R(q, z)` with entries over the (z - 1) pole.
fn r_matrix(rat: &RatField, q_num: &MultiPoly, z: VarId) -> Matrix<RatFunc> {
    let polys = rat.polys();
    let zm1 = LinearForm::from_poly(polys, &polys.sub(&polys.var(z), &polys.one()))
        .unwrap()
        .1;
    let over = |num: MultiPoly| rat.over_form(num, zm1.clone(), 1);
    let qz = polys.mul(q_num, &polys.var(z));
    let qm1 = polys.sub(q_num, &polys.one());
    Matrix::from_rows(vec![
        vec![
            over(polys.sub(&qz, &polys.one())),
            over(polys.mul(&qm1, &polys.var(z))),
        ],
        vec![over(qm1), over(polys.sub(&qz, &polys.one()))],
    ])
}

fn t_twist(rat: &RatField, t: VarId, e: u16) -> Matrix<RatFunc> {
    let polys = rat.polys();
    let tp = rat.from_poly(polys.var_pow(t, e));
    let tmp = rat.make(
        polys.one(),
        [(LinearForm::var(polys, t), e as u32)].into_iter().collect(),
    );
    matrix::diagonal(rat, &[tp, tmp])
}

pub fn qkz_model(ell: u64, p: u64) -> Result<QkzModel> {
    let qq = find_order_p_element(ell, p)?;
    let session = Session::new(ell, &["z", "q", "t"])?;
    let rat = RatField::new(session.clone());
    let z = session.var("z");
    let q = session.var("q");
    let t = session.var("t");
    let r = r_matrix(&rat, &rat.polys().var(q), z);
    let b = matrix::mul(&rat, &r, &t_twist(&rat, t, 1));
    Ok(QkzModel {
        rat,
        ell,
        p,
        qq,
        z,
        q,
        t,
        b,
    })
}

impl QkzModel {
    /// The connection with (q, t) evaluated, as a multiplicative shift
    /// connection in z.
    pub fn connection_at(&self, q_val: u64, t_val: u64) -> Result<ShiftConnection> {
        let assignment = [(self.q, q_val), (self.t, t_val)];
        let mut b = matrix::zero(&self.rat, 2);
        for i in 0..2 {
            for j in 0..2 {
                b.set(i, j, self.rat.eval_vars(self.b.at(i, j), &assignment)?);
            }
        }
        ShiftConnection::new(
            self.rat.clone(),
            vec![self.z],
            ShiftKind::Multiplicative { q: self.qq },
            vec![b],
            self.p,
        )
    }

    /// The fully symbolic connection in (q, t, z).
    pub fn connection_symbolic(&self) -> Result<ShiftConnection> {
        ShiftConnection::new(
            self.rat.clone(),
            vec![self.z],
            ShiftKind::Multiplicative { q: self.qq },
            vec![self.b.clone()],
            self.p,
        )
    }

    /// `z^p - 1` as the product of the monic linear factors `z - qq^j`.
    fn zp_minus_one_factors(&self) -> BTreeMap<LinearForm, u32> {
        let polys = self.rat.polys();
        let field = self.rat.session().field();
        let mut den = BTreeMap::new();
        let mut root = 1u64;
        for _ in 0..self.p {
            let form = LinearForm::from_poly(
                polys,
                &polys.sub(&polys.var(self.z), &polys.constant(root)),
            )
            .unwrap()
            .1;
            *den.entry(form).or_insert(0) += 1;
            root = field.mul(root, self.qq);
        }
        den
    }

    /// Target `R(q^p, z^p) diag(t^p, t^-p)` at evaluated (q, t).
    pub fn target_at(&self, q_val: u64, t_val: u64) -> Result<Matrix<RatFunc>> {
        let rat = &self.rat;
        let polys = rat.polys();
        let field = rat.session().field();
        let qp = field.pow(q_val, self.p);
        let tp = field.pow(t_val, self.p);
        let tp_inv = field.inv(tp)?;
        let den = self.zp_minus_one_factors();
        let zp = polys.var_pow(self.z, self.p as u16);
        // entries of R(q^p, z^p) over z^p - 1, then the t^p twist columnwise
        let e11 = rat.make(
            polys.sub(&polys.scale(&zp, qp), &polys.one()),
            den.clone(),
        );
        let e12 = rat.make(polys.scale(&zp, field.sub(qp, 1)), den.clone());
        let e21 = rat.make(polys.constant(field.sub(qp, 1)), den.clone());
        let e22 = e11.clone();
        let tw = matrix::diagonal(rat, &[rat.constant(tp), rat.constant(tp_inv)]);
        let r = Matrix::from_rows(vec![vec![e11, e12], vec![e21, e22]]);
        Ok(matrix::mul(rat, &r, &tw))
    }

    /// Fully symbolic target, with `t^-p` kept as a monomial denominator.
    pub fn target_symbolic(&self) -> Matrix<RatFunc> {
        let rat = &self.rat;
        let polys = rat.polys();
        let den = self.zp_minus_one_factors();
        let e = self.p as u16;
        let qp = polys.var_pow(self.q, e);
        let zp = polys.var_pow(self.z, e);
        let e11 = rat.make(polys.sub(&polys.mul(&qp, &zp), &polys.one()), den.clone());
        let e12 = rat.make(
            polys.mul(&polys.sub(&qp, &polys.one()), &zp),
            den.clone(),
        );
        let e21 = rat.make(polys.sub(&qp, &polys.one()), den.clone());
        let e22 = e11.clone();
        let r = Matrix::from_rows(vec![vec![e11, e12], vec![e21, e22]]);
        matrix::mul(rat, &r, &t_twist(rat, self.t, e))
    }
}

pub struct QkzAdditiveModel {
    pub rat: RatField,
    pub p: u64,
    pub u: VarId,
    pub s: VarId,
    pub t: VarId,
    pub b: Matrix<RatFunc>,
}

/// `R_add(s, u) = 1 + (s/u) [[1,1],[1,1]]` over the u pole.
fn r_add(rat: &RatField, s_num: &MultiPoly, u: VarId) -> Matrix<RatFunc> {
    let polys = rat.polys();
    let form = LinearForm::var(polys, u);
    let over_u = |num: MultiPoly| rat.over_form(num, form.clone(), 1);
    let u_plus_s = polys.add(&polys.var(u), s_num);
    Matrix::from_rows(vec![
        vec![over_u(u_plus_s.clone()), over_u(s_num.clone())],
        vec![over_u(s_num.clone()), over_u(u_plus_s)],
    ])
}

pub fn qkz_additive_model(p: u64) -> Result<QkzAdditiveModel> {
    let session = Session::new(p, &["u", "s", "t"])?;
    let rat = RatField::new(session.clone());
    let u = session.var("u");
    let s = session.var("s");
    let t = session.var("t");
    let r = r_add(&rat, &rat.polys().var(s), u);
    let b = matrix::mul(&rat, &r, &t_twist(&rat, t, 1));
    Ok(QkzAdditiveModel { rat, p, u, s, t, b })
}

impl QkzAdditiveModel {
    pub fn connection_at(&self, s_val: u64, t_val: u64) -> Result<ShiftConnection> {
        let assignment = [(self.s, s_val), (self.t, t_val)];
        let mut b = matrix::zero(&self.rat, 2);
        for i in 0..2 {
            for j in 0..2 {
                b.set(i, j, self.rat.eval_vars(self.b.at(i, j), &assignment)?);
            }
        }
        ShiftConnection::new(
            self.rat.clone(),
            vec![self.u],
            ShiftKind::Additive,
            vec![b],
            self.p,
        )
    }

    pub fn connection_symbolic(&self) -> Result<ShiftConnection> {
        ShiftConnection::new(
            self.rat.clone(),
            vec![self.u],
            ShiftKind::Additive,
            vec![self.b.clone()],
            self.p,
        )
    }

    /// `u^p - u` as the product of the monic linear factors `u - c`.
    fn orbit_factors(&self) -> BTreeMap<LinearForm, u32> {
        let polys = self.rat.polys();
        let mut den = BTreeMap::new();
        for c in 0..self.p {
            let form = LinearForm::from_poly(
                polys,
                &polys.sub(&polys.var(self.u), &polys.constant(c)),
            )
            .unwrap()
            .1;
            *den.entry(form).or_insert(0) += 1;
        }
        den
    }

    /// Target `R_add(s^p - s, u^p - u) diag(t^p, t^-p)` with u symbolic.
    pub fn target_at(&self, s_val: u64, t_val: u64) -> Result<Matrix<RatFunc>> {
        let rat = &self.rat;
        let polys = rat.polys();
        let field = rat.session().field();
        let sp = field.sub(field.pow(s_val, self.p), s_val);
        let tp = field.pow(t_val, self.p);
        let tp_inv = field.inv(tp)?;
        let den = self.orbit_factors();
        let upu = polys.sub(&polys.var_pow(self.u, self.p as u16), &polys.var(self.u));
        let diag = rat.make(polys.add(&upu, &polys.constant(sp)), den.clone());
        let off = rat.make(polys.constant(sp), den.clone());
        let r = Matrix::from_rows(vec![
            vec![diag.clone(), off.clone()],
            vec![off, diag],
        ]);
        let tw = matrix::diagonal(rat, &[rat.constant(tp), rat.constant(tp_inv)]);
        Ok(matrix::mul(rat, &r, &tw))
    }

    pub fn target_symbolic(&self) -> Matrix<RatFunc> {
        let rat = &self.rat;
        let polys = rat.polys();
        let e = self.p as u16;
        let den = self.orbit_factors();
        let upu = polys.sub(&polys.var_pow(self.u, e), &polys.var(self.u));
        let sps = polys.sub(&polys.var_pow(self.s, e), &polys.var(self.s));
        let diag = rat.make(polys.add(&upu, &sps), den.clone());
        let off = rat.make(sps, den.clone());
        let r = Matrix::from_rows(vec![
            vec![diag.clone(), off.clone()],
            vec![off, diag],
        ]);
        matrix::mul(rat, &r, &t_twist(rat, self.t, e))
    }
}
