//! Rational functions with expanded numerators and factored denominators.
//!
//! Every model in scope has poles on a fixed arrangement of affine-linear
//! hyperplanes that is stable under differentiation and under the shifts of
//! the difference connections, so denominators are kept as products of monic
//! linear forms (single variables included) and are never expanded. This
//! avoids general multivariate gcd: cancellation is an exact-division test
//! against a linear form.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::poly::PolyRing;
use crate::ring::{FrobeniusTwist, Ring};
use crate::vars::{Session, VarId};

/// Monic affine-linear form `v_k + sum_{i>k} a_i v_i + b` (first nonzero
/// variable coefficient is 1). Degree-0 forms are never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: Vec<u64>,
    constant: u64,
}

impl LinearForm {
    /// Normalize a polynomial of degree <= 1 into `scalar * monic form`.
    /// Returns `None` if the polynomial is constant or has degree > 1.
    pub fn from_poly(ring: &PolyRing, f: &MultiPoly) -> Option<(u64, LinearForm)> {
        if f.is_zero() || f.total_degree() != 1 {
            return None;
        }
        let n = ring.session().num_vars();
        let mut coeffs = vec![0u64; n];
        let mut constant = 0u64;
        for (m, c) in f.terms() {
            match m.degree() {
                0 => constant = c,
                1 => {
                    let i = m.0.iter().position(|&e| e == 1).unwrap();
                    coeffs[i] = c;
                }
                _ => return None,
            }
        }
        let field = ring.session().field();
        let lead = coeffs.iter().position(|&c| c != 0)?;
        let scalar = coeffs[lead];
        let inv = field.inv(scalar).expect("nonzero leading coefficient");
        for c in coeffs.iter_mut() {
            *c = field.mul(*c, inv);
        }
        constant = field.mul(constant, inv);
        Some((scalar, LinearForm { coeffs, constant }))
    }

    pub fn var(ring: &PolyRing, v: VarId) -> LinearForm {
        let mut coeffs = vec![0u64; ring.session().num_vars()];
        coeffs[v.0] = 1;
        LinearForm {
            coeffs,
            constant: 0,
        }
    }

    pub fn to_poly(&self, ring: &PolyRing) -> MultiPoly {
        let mut acc = ring.constant(self.constant);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                acc = ring.add(&acc, &ring.scale(&ring.var(VarId(i)), c));
            }
        }
        acc
    }

    pub fn leading_var(&self) -> VarId {
        VarId(self.coeffs.iter().position(|&c| c != 0).unwrap())
    }

    /// The form minus its leading variable (used for synthetic division).
    pub fn rest_poly(&self, ring: &PolyRing) -> MultiPoly {
        let lead = self.leading_var().0;
        let mut acc = ring.constant(self.constant);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i != lead && c != 0 {
                acc = ring.add(&acc, &ring.scale(&ring.var(VarId(i)), c));
            }
        }
        acc
    }

    pub fn coeff_of(&self, v: VarId) -> u64 {
        self.coeffs[v.0]
    }

    pub fn involves(&self, v: VarId) -> bool {
        self.coeffs[v.0] != 0
    }

    pub fn eval(&self, ring: &PolyRing, point: &[u64]) -> u64 {
        let field = ring.session().field();
        let mut acc = self.constant;
        for (i, &c) in self.coeffs.iter().enumerate() {
            acc = field.add(acc, field.mul(c, point[i]));
        }
        acc
    }

    pub fn to_text(&self, ring: &PolyRing) -> String {
        ring.body_text(&self.to_poly(ring))
    }
}

/// Numerator over a product of powers of monic linear forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: MultiPoly,
    den: BTreeMap<LinearForm, u32>,
}

impl RatFunc {
    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den_factors(&self) -> impl Iterator<Item = (&LinearForm, u32)> {
        self.den.iter().map(|(f, &e)| (f, e))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_poly(&self) -> Option<&MultiPoly> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }
}

/// Field-of-fractions context for [`RatFunc`] values.
#[derive(Debug, Clone)]
pub struct RatField {
    polys: PolyRing,
}

impl RatField {
    pub fn new(session: Arc<Session>) -> Self {
        RatField {
            polys: PolyRing::new(session),
        }
    }

    pub fn polys(&self) -> &PolyRing {
        &self.polys
    }

    pub fn session(&self) -> &Arc<Session> {
        self.polys.session()
    }

    pub fn modulus(&self) -> u64 {
        self.polys.modulus()
    }

    pub fn from_poly(&self, num: MultiPoly) -> RatFunc {
        RatFunc {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn constant(&self, c: u64) -> RatFunc {
        self.from_poly(self.polys.constant(c))
    }

    pub fn var(&self, v: VarId) -> RatFunc {
        self.from_poly(self.polys.var(v))
    }

    /// `num / prod factors^e`, normalized.
    pub fn make(&self, num: MultiPoly, den: BTreeMap<LinearForm, u32>) -> RatFunc {
        self.normalize(RatFunc { num, den })
    }

    /// `num / form^e`.
    pub fn over_form(&self, num: MultiPoly, form: LinearForm, e: u32) -> RatFunc {
        let mut den = BTreeMap::new();
        if e > 0 {
            den.insert(form, e);
        }
        self.make(num, den)
    }

    fn normalize(&self, mut r: RatFunc) -> RatFunc {
        if r.num.is_zero() {
            r.den.clear();
            return r;
        }
        let mut cleaned: BTreeMap<LinearForm, u32> = BTreeMap::new();
        for (form, mut e) in std::mem::take(&mut r.den) {
            if e == 0 {
                continue;
            }
            let lead = form.leading_var();
            let rest = form.rest_poly(&self.polys);
            while e > 0 {
                match self.polys.divide_exact_by_monic_linear(&r.num, lead, &rest) {
                    Some(q) => {
                        r.num = q;
                        e -= 1;
                    }
                    None => break,
                }
            }
            if e > 0 {
                cleaned.insert(form, e);
            }
        }
        r.den = cleaned;
        r
    }

    fn den_to_poly(&self, den: &BTreeMap<LinearForm, u32>) -> MultiPoly {
        let mut acc = self.polys.one();
        for (f, &e) in den {
            let fp = f.to_poly(&self.polys);
            for _ in 0..e {
                acc = self.polys.mul(&acc, &fp);
            }
        }
        acc
    }

    /// Multiplicative inverse. The numerator must be a unit times a monomial
    /// times at most one linear factor, since denominators only represent
    /// that class; anything else is an explicit error.
    pub fn inverse(&self, r: &RatFunc) -> Result<RatFunc> {
        if r.num.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let polys = &self.polys;
        let field = self.session().field();
        let nvars = self.session().num_vars();
        // Strip the monomial content.
        let mut content = vec![u16::MAX; nvars];
        for (m, _) in r.num.terms() {
            for i in 0..nvars {
                content[i] = content[i].min(m.0[i]);
            }
        }
        let mut stripped = r.num.clone();
        let mut new_den: BTreeMap<LinearForm, u32> = BTreeMap::new();
        for (i, &e) in content.iter().enumerate() {
            if e > 0 {
                for _ in 0..e {
                    stripped = polys
                        .divide_exact_by_monic_linear(&stripped, VarId(i), &polys.constant(0))
                        .expect("monomial content divides");
                }
                new_den.insert(LinearForm::var(polys, VarId(i)), e as u32);
            }
        }
        let mut new_num = self.den_to_poly(&r.den);
        if let Some(c) = stripped.constant_value() {
            let cinv = field.inv(c)?;
            new_num = polys.scale(&new_num, cinv);
        } else if let Some((scalar, form)) = LinearForm::from_poly(polys, &stripped) {
            let cinv = field.inv(scalar)?;
            new_num = polys.scale(&new_num, cinv);
            *new_den.entry(form).or_insert(0) += 1;
        } else {
            return Err(Error::NonInvertible(polys.to_text(&r.num)));
        }
        Ok(self.make(new_num, new_den))
    }

    pub fn div(&self, a: &RatFunc, b: &RatFunc) -> Result<RatFunc> {
        Ok(Ring::mul(self, a, &self.inverse(b)?))
    }

    /// Formal partial derivative; the result's denominator factors are drawn
    /// from the same factor set (linear forms have constant derivatives).
    pub fn derivative(&self, r: &RatFunc, v: VarId) -> RatFunc {
        let polys = &self.polys;
        let field = self.session().field();
        let touched: Vec<(&LinearForm, u32)> = r
            .den
            .iter()
            .filter(|(f, _)| f.involves(v))
            .map(|(f, &e)| (f, e))
            .collect();
        let dnum = polys.derivative(&r.num, v);
        if touched.is_empty() {
            return RatFunc {
                num: dnum,
                den: r.den.clone(),
            };
        }
        // (n / D)' = [n' * P - n * sum_f e_f a_{f,v} P/f] / (D * P)
        // with P the product of the distinct factors involving v.
        let prod_all = touched
            .iter()
            .fold(polys.one(), |acc, (f, _)| polys.mul(&acc, &f.to_poly(polys)));
        let mut num = polys.mul(&dnum, &prod_all);
        for (i, (f, e)) in touched.iter().enumerate() {
            let mut partial = polys.one();
            for (j, (g, _)) in touched.iter().enumerate() {
                if j != i {
                    partial = polys.mul(&partial, &g.to_poly(polys));
                }
            }
            let scale = field.mul((*e as u64) % field.modulus(), f.coeff_of(v));
            let term = polys.scale(&polys.mul(&r.num, &partial), scale);
            num = polys.sub(&num, &term);
        }
        let mut den = r.den.clone();
        for (f, _) in &touched {
            *den.get_mut(f).unwrap() += 1;
        }
        self.make(num, den)
    }

    pub fn eval(&self, r: &RatFunc, point: &[u64]) -> Result<u64> {
        let polys = &self.polys;
        let field = self.session().field();
        let mut den_val = 1u64;
        for (f, &e) in &r.den {
            let v = f.eval(polys, point);
            if v == 0 {
                return Err(Error::PoleAtPoint(f.to_text(polys)));
            }
            den_val = field.mul(den_val, field.pow(v, e as u64));
        }
        field.div(polys.eval(&r.num, point), den_val)
    }

    /// Substitute residues for a subset of variables; fails on poles.
    pub fn eval_vars(&self, r: &RatFunc, assignment: &[(VarId, u64)]) -> Result<RatFunc> {
        let polys = &self.polys;
        let field = self.session().field();
        let mut num = polys.eval_vars(&r.num, assignment);
        let mut den: BTreeMap<LinearForm, u32> = BTreeMap::new();
        for (f, &e) in &r.den {
            let fp = polys.eval_vars(&f.to_poly(polys), assignment);
            if let Some(c) = fp.constant_value() {
                if c == 0 {
                    return Err(Error::PoleAtPoint(f.to_text(polys)));
                }
                num = polys.scale(&num, field.pow(field.inv(c)?, e as u64));
            } else {
                let (scalar, form) = LinearForm::from_poly(polys, &fp)
                    .expect("partial evaluation keeps degree <= 1");
                if scalar != 1 {
                    num = polys.scale(&num, field.pow(field.inv(scalar)?, e as u64));
                }
                *den.entry(form).or_insert(0) += e;
            }
        }
        Ok(self.make(num, den))
    }

    /// Substitute v -> v + c.
    pub fn shift_var(&self, r: &RatFunc, v: VarId, c: u64) -> RatFunc {
        let polys = &self.polys;
        let num = polys.shift_var(&r.num, v, c);
        let mut den = BTreeMap::new();
        for (f, &e) in &r.den {
            let mut nf = f.clone();
            nf.constant = self
                .session()
                .field()
                .add(nf.constant, self.session().field().mul(nf.coeffs[v.0], c));
            *den.entry(nf).or_insert(0) += e;
        }
        // Shifting cannot create cancellations that were absent before.
        RatFunc { num, den }
    }

    /// Substitute v -> c * v (c nonzero).
    pub fn scale_var(&self, r: &RatFunc, v: VarId, c: u64) -> RatFunc {
        let polys = &self.polys;
        let field = self.session().field();
        assert!(c % field.modulus() != 0, "scale by zero");
        let mut num = polys.scale_var(&r.num, v, c);
        let mut den = BTreeMap::new();
        for (f, &e) in &r.den {
            let fp = polys.scale_var(&f.to_poly(polys), v, c);
            let (scalar, form) =
                LinearForm::from_poly(polys, &fp).expect("scaling keeps degree 1");
            if scalar != 1 {
                num = polys.scale(&num, field.pow(field.inv(scalar).unwrap(), e as u64));
            }
            *den.entry(form).or_insert(0) += e;
        }
        RatFunc { num, den }
    }

    /// Exponents multiplied by p throughout; on the denominator this is
    /// `1/f^e -> 1/f^(p e)` because `twist(f) = f^p` for linear forms in
    /// characteristic p.
    pub fn frobenius_twist(&self, r: &RatFunc) -> RatFunc {
        let p = self.modulus() as u32;
        let num = self.polys.frobenius_twist(&r.num);
        let den = r.den.iter().map(|(f, &e)| (f.clone(), e * p)).collect();
        RatFunc { num, den }
    }

    /// Move into an extended session (same modulus, superset registry).
    pub fn pad_to(&self, r: &RatFunc, target: &RatField) -> RatFunc {
        let num = self.polys.pad_to(&r.num, &target.polys);
        let n = target.session().num_vars();
        let den = r
            .den
            .iter()
            .map(|(f, &e)| {
                let mut coeffs = f.coeffs.clone();
                coeffs.resize(n, 0);
                (
                    LinearForm {
                        coeffs,
                        constant: f.constant,
                    },
                    e,
                )
            })
            .collect();
        RatFunc { num, den }
    }

    pub fn to_text(&self, r: &RatFunc) -> String {
        format!("{} (mod {})", self.body_text(r), self.modulus())
    }

    pub(crate) fn body_text(&self, r: &RatFunc) -> String {
        let num = self.polys.body_text(&r.num);
        if r.den.is_empty() {
            return num;
        }
        let den: Vec<String> = r
            .den
            .iter()
            .map(|(f, &e)| {
                let base = format!("({})", f.to_text(&self.polys));
                if e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect();
        let num_wrapped = if r.num.num_terms() > 1 {
            format!("({num})")
        } else {
            num
        };
        format!("{} / {}", num_wrapped, den.join("*"))
    }
}

impl Ring for RatField {
    type El = RatFunc;

    fn zero(&self) -> RatFunc {
        self.constant(0)
    }

    fn one(&self) -> RatFunc {
        self.constant(1)
    }

    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        if a.num.is_zero() {
            return b.clone();
        }
        if b.num.is_zero() {
            return a.clone();
        }
        let polys = &self.polys;
        let mut den: BTreeMap<LinearForm, u32> = a.den.clone();
        for (f, &e) in &b.den {
            let slot = den.entry(f.clone()).or_insert(0);
            *slot = (*slot).max(e);
        }
        let mut na = a.num.clone();
        let mut nb = b.num.clone();
        for (f, &e) in &den {
            let fp = f.to_poly(polys);
            let ea = e - a.den.get(f).copied().unwrap_or(0);
            let eb = e - b.den.get(f).copied().unwrap_or(0);
            for _ in 0..ea {
                na = polys.mul(&na, &fp);
            }
            for _ in 0..eb {
                nb = polys.mul(&nb, &fp);
            }
        }
        self.make(polys.add(&na, &nb), den)
    }

    fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc {
            num: self.polys.neg(&a.num),
            den: a.den.clone(),
        }
    }

    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        let mut den = a.den.clone();
        for (f, &e) in &b.den {
            *den.entry(f.clone()).or_insert(0) += e;
        }
        self.make(self.polys.mul(&a.num, &b.num), den)
    }

    fn is_zero(&self, a: &RatFunc) -> bool {
        a.is_zero()
    }

    fn from_int(&self, n: i64) -> RatFunc {
        self.constant(self.session().field().from_int(n))
    }

    fn to_text(&self, a: &RatFunc) -> String {
        RatField::to_text(self, a)
    }
}

impl FrobeniusTwist for RatField {
    fn frobenius_twist(&self, a: &RatFunc) -> RatFunc {
        RatField::frobenius_twist(self, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vars::Session;

    fn setup(p: u64, vars: &[&str]) -> RatField {
        RatField::new(Session::new(p, vars).unwrap())
    }

    fn sample_points(rat: &RatField, r: &RatFunc, count: usize) -> Vec<Vec<u64>> {
        // Deterministic scan over the grid, keeping non-pole points.
        let p = rat.modulus();
        let n = rat.session().num_vars();
        let mut out = Vec::new();
        let mut point = vec![0u64; n];
        'outer: loop {
            if rat.eval(r, &point).is_ok() {
                out.push(point.clone());
                if out.len() == count {
                    return out;
                }
            }
            for i in 0..n {
                point[i] += 1;
                if point[i] < p {
                    continue 'outer;
                }
                point[i] = 0;
            }
            return out;
        }
    }

    #[test]
    fn normalize_cancels_exact_factor() {
        let rat = setup(7, &["x", "y"]);
        let polys = rat.polys();
        let x = rat.session().var("x");
        let y = rat.session().var("y");
        // (x^2 - y^2) / (x - y) -> x + y
        let num = polys.sub(&polys.var_pow(x, 2), &polys.var_pow(y, 2));
        let form = LinearForm::from_poly(polys, &polys.sub(&polys.var(x), &polys.var(y)))
            .unwrap()
            .1;
        let r = rat.over_form(num, form, 1);
        assert!(r.is_polynomial());
        assert_eq!(r.num(), &polys.add(&polys.var(x), &polys.var(y)));
    }

    #[test]
    fn normalize_preserves_values() {
        let rat = setup(11, &["x", "y"]);
        let polys = rat.polys();
        let x = rat.session().var("x");
        let y = rat.session().var("y");
        let form = LinearForm::from_poly(polys, &polys.sub(&polys.var(x), &polys.var(y)))
            .unwrap()
            .1;
        // f = (x^3 - x*y^2) / (x - y)^2, which cancels exactly once.
        let num = polys.sub(
            &polys.var_pow(x, 3),
            &polys.mul(&polys.var(x), &polys.var_pow(y, 2)),
        );
        let raw = RatFunc {
            num: num.clone(),
            den: [(form.clone(), 2u32)].into_iter().collect(),
        };
        let cooked = rat.make(num, [(form, 2u32)].into_iter().collect());
        assert_eq!(cooked.den_factors().count(), 1);
        for point in sample_points(&rat, &raw, 100) {
            assert_eq!(rat.eval(&raw, &point), rat.eval(&cooked, &point));
        }
    }

    #[test]
    fn arithmetic_agrees_with_evaluation() {
        let rat = setup(13, &["x", "y"]);
        let polys = rat.polys();
        let x = rat.session().var("x");
        let y = rat.session().var("y");
        let fx = LinearForm::var(polys, x);
        let fxy = LinearForm::from_poly(
            polys,
            &polys.add(&polys.var(x), &polys.scale(&polys.var(y), 5)),
        )
        .unwrap()
        .1;
        let a = rat.over_form(polys.add(&polys.var_pow(y, 2), &polys.constant(3)), fx, 2);
        let b = rat.over_form(polys.var(x), fxy, 1);
        let sum = rat.add(&a, &b);
        let prod = Ring::mul(&rat, &a, &b);
        let field = rat.session().field();
        let mut checked = 0;
        for point in sample_points(&rat, &sum, 200) {
            let (av, bv) = (rat.eval(&a, &point), rat.eval(&b, &point));
            if av.is_err() || bv.is_err() {
                continue;
            }
            checked += 1;
            assert_eq!(rat.eval(&sum, &point).unwrap(), field.add(av.clone().unwrap(), bv.clone().unwrap()));
            assert_eq!(rat.eval(&prod, &point).unwrap(), field.mul(av.unwrap(), bv.unwrap()));
        }
        assert!(checked >= 100);
    }

    #[test]
    fn derivative_closure_and_quotient_rule() {
        let rat = setup(11, &["x", "y"]);
        let polys = rat.polys();
        let x = rat.session().var("x");
        let y = rat.session().var("y");
        let form = LinearForm::from_poly(polys, &polys.sub(&polys.var(x), &polys.var(y)))
            .unwrap()
            .1;
        // r = y / (x - y)^2
        let r = rat.over_form(polys.var(y), form.clone(), 2);
        let dr = rat.derivative(&r, x);
        // d/dx [y (x-y)^-2] = -2 y (x-y)^-3
        let expected = rat.over_form(polys.scale(&polys.var(y), 11 - 2), form.clone(), 3);
        assert_eq!(dr, expected);
        // factors stay within the original factor set
        for (f, _) in dr.den_factors() {
            assert_eq!(f, &form);
        }
        // d/dy needs the product rule on both slots
        let dy = rat.derivative(&r, y);
        let e1 = rat.over_form(polys.one(), form.clone(), 2);
        let e2 = rat.over_form(polys.scale(&polys.var(y), 2), form, 3);
        assert_eq!(dy, rat.add(&e1, &e2));
    }

    #[test]
    fn twist_matches_pth_power() {
        let rat = setup(5, &["x", "y"]);
        let polys = rat.polys();
        let x = rat.session().var("x");
        let y = rat.session().var("y");
        let form = LinearForm::from_poly(polys, &polys.sub(&polys.var(x), &polys.var(y)))
            .unwrap()
            .1;
        let r = rat.over_form(polys.add(&polys.var(x), &polys.constant(2)), form, 1);
        let tw = rat.frobenius_twist(&r);
        let pow5 = {
            let mut acc = rat.one();
            for _ in 0..5 {
                acc = Ring::mul(&rat, &acc, &r);
            }
            acc
        };
        assert_eq!(tw, pow5);
    }

    #[test]
    fn partial_eval_folds_constant_factors() {
        let rat = setup(7, &["x", "y"]);
        let polys = rat.polys();
        let x = rat.session().var("x");
        let y = rat.session().var("y");
        let form = LinearForm::from_poly(polys, &polys.sub(&polys.var(x), &polys.var(y)))
            .unwrap()
            .1;
        let r = rat.over_form(polys.var(y), form, 1);
        // x -> 3 gives y / (3 - y); evaluating both ways must agree
        let partial = rat.eval_vars(&r, &[(x, 3)]).unwrap();
        for b in 0..7u64 {
            if b == 3 {
                continue;
            }
            assert_eq!(
                rat.eval(&partial, &[0, b]).unwrap(),
                rat.eval(&r, &[3, b]).unwrap()
            );
        }
        // pole when the evaluated factor vanishes identically in the rest
        assert!(rat.eval_vars(&r, &[(x, 3), (y, 3)]).is_err());
    }

    #[test]
    fn inverse_of_monomial_times_linear() {
        let rat = setup(7, &["t", "z"]);
        let polys = rat.polys();
        let t = rat.session().var("t");
        let z = rat.session().var("z");
        // r = 3 t^2 (z + 1)
        let zp1 = polys.add(&polys.var(z), &polys.one());
        let r = rat.from_poly(polys.scale(&polys.mul(&polys.var_pow(t, 2), &zp1), 3));
        let inv = rat.inverse(&r).unwrap();
        assert_eq!(Ring::mul(&rat, &r, &inv), rat.one());
        // a dense quadratic is rejected
        let bad = rat.from_poly(polys.add(&polys.var_pow(z, 2), &polys.var(t)));
        assert!(rat.inverse(&bad).is_err());
    }

    #[test]
    fn shift_and_scale_transport_poles() {
        let rat = setup(7, &["z"]);
        let polys = rat.polys();
        let z = rat.session().var("z");
        let zm1 = LinearForm::from_poly(polys, &polys.sub(&polys.var(z), &polys.one()))
            .unwrap()
            .1;
        let r = rat.over_form(polys.one(), zm1, 1); // 1 / (z - 1)
        let shifted = rat.shift_var(&r, z, 2); // 1 / (z + 1)
        for a in 0..7u64 {
            match rat.eval(&r, &[(a + 2) % 7]) {
                Ok(v) => assert_eq!(rat.eval(&shifted, &[a]).unwrap(), v),
                Err(_) => assert!(rat.eval(&shifted, &[a]).is_err()),
            }
        }
        let scaled = rat.scale_var(&r, z, 3); // 1 / (3z - 1) = 5 / (z - 5) after monic
        for a in 0..7u64 {
            match rat.eval(&r, &[(3 * a) % 7]) {
                Ok(v) => assert_eq!(rat.eval(&scaled, &[a]).unwrap(), v),
                Err(_) => assert!(rat.eval(&scaled, &[a]).is_err()),
            }
        }
    }
}
