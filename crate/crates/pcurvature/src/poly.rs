//! Sparse multivariate polynomials over a prime field.
//!
//! Terms are kept in a `BTreeMap` keyed by graded-lex monomial order, so the
//! canonical text form (`3*x^2*y + 1 (mod 7)`) is just reverse iteration.
//! No zero coefficients are ever stored, and exponent vectors always have
//! exactly `registry.len()` entries.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::ring::{FrobeniusTwist, Ring};
use crate::vars::{Session, VarId};

/// Exponent vector with graded-lex ordering: compare total degree first,
/// then exponents lexicographically (earlier registry variables first).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u16>);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn constant(n: usize) -> Mono {
        Mono(vec![0; n])
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial; the coefficient field and variable names live in the
/// session shared by the owning [`PolyRing`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    terms: BTreeMap<Mono, u64>,
}

impl MultiPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: VarId) -> u16 {
        self.terms.keys().map(|m| m.0[v.0]).max().unwrap_or(0)
    }

    /// Smallest exponent of `v` over all terms; 0 for the zero polynomial.
    pub fn min_exponent(&self, v: VarId) -> u16 {
        self.terms.keys().map(|m| m.0[v.0]).min().unwrap_or(0)
    }

    pub fn constant_value(&self) -> Option<u64> {
        if self.terms.is_empty() {
            return Some(0);
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.degree() == 0 {
                return Some(*c);
            }
        }
        None
    }

    /// Leading coefficient in graded-lex order.
    pub fn leading_coeff(&self) -> Option<u64> {
        self.terms.iter().next_back().map(|(_, &c)| c)
    }
}

/// Ring context for [`MultiPoly`] values.
#[derive(Debug, Clone)]
pub struct PolyRing {
    session: Arc<Session>,
}

impl PolyRing {
    pub fn new(session: Arc<Session>) -> Self {
        PolyRing { session }
    }

    pub fn session(&self) -> &Arc<Session> {
        &self.session
    }

    pub fn modulus(&self) -> u64 {
        self.session.modulus()
    }

    fn nvars(&self) -> usize {
        self.session.num_vars()
    }

    fn make(&self, terms: BTreeMap<Mono, u64>) -> MultiPoly {
        debug_assert!(terms.values().all(|&c| c != 0 && c < self.modulus()));
        MultiPoly { terms }
    }

    pub fn constant(&self, c: u64) -> MultiPoly {
        let c = c % self.modulus();
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(Mono::constant(self.nvars()), c);
        }
        MultiPoly { terms }
    }

    pub fn var(&self, v: VarId) -> MultiPoly {
        self.var_pow(v, 1)
    }

    pub fn var_pow(&self, v: VarId, e: u16) -> MultiPoly {
        let mut expo = vec![0u16; self.nvars()];
        expo[v.0] = e;
        self.monomial(Mono(expo), 1)
    }

    pub fn monomial(&self, m: Mono, c: u64) -> MultiPoly {
        assert_eq!(m.0.len(), self.nvars(), "exponent vector length");
        let c = c % self.modulus();
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    fn add_term(&self, terms: &mut BTreeMap<Mono, u64>, m: Mono, c: u64) {
        if c == 0 {
            return;
        }
        match terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = self.session.field().add(*e.get(), c);
                if s == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, f: &MultiPoly, c: u64) -> MultiPoly {
        let field = self.session.field();
        let c = c % self.modulus();
        if c == 0 {
            return self.constant(0);
        }
        let terms = f
            .terms
            .iter()
            .map(|(m, &a)| (m.clone(), field.mul(a, c)))
            .collect();
        self.make(terms)
    }

    pub fn pow(&self, f: &MultiPoly, e: u32) -> MultiPoly {
        let mut acc = self.one();
        for _ in 0..e {
            acc = Ring::mul(self, &acc, f);
        }
        acc
    }

    /// Formal partial derivative with respect to a registered variable.
    pub fn derivative(&self, f: &MultiPoly, v: VarId) -> MultiPoly {
        let field = self.session.field();
        let mut terms = BTreeMap::new();
        for (m, &c) in &f.terms {
            let e = m.0[v.0];
            if e == 0 {
                continue;
            }
            let coeff = field.mul(c, (e as u64) % self.modulus());
            if coeff == 0 {
                continue;
            }
            let mut expo = m.0.clone();
            expo[v.0] = e - 1;
            self.add_term(&mut terms, Mono(expo), coeff);
        }
        self.make(terms)
    }

    /// Frobenius twist: coefficients to the p-th power (identity on the prime
    /// field) and every variable exponent multiplied by p. Over F_p this
    /// coincides with `f.pow(p)`, which the tests use as the expansion oracle.
    pub fn frobenius_twist(&self, f: &MultiPoly) -> MultiPoly {
        let p = self.modulus();
        assert!(p <= u16::MAX as u64, "twist exponent must fit u16");
        let terms = f
            .terms
            .iter()
            .map(|(m, &c)| {
                let expo: Vec<u16> = m
                    .0
                    .iter()
                    .map(|&e| {
                        let big = (e as u64) * p;
                        assert!(big <= u16::MAX as u64, "exponent overflow in twist");
                        big as u16
                    })
                    .collect();
                (Mono(expo), c)
            })
            .collect();
        self.make(terms)
    }

    /// Substitute v -> v^e for every variable, coefficients unchanged.
    /// Unlike the Frobenius twist this is meaningful in any characteristic.
    pub fn power_substitute(&self, f: &MultiPoly, e: u16) -> MultiPoly {
        let terms = f
            .terms
            .iter()
            .map(|(m, &c)| {
                let expo: Vec<u16> = m
                    .0
                    .iter()
                    .map(|&k| {
                        let big = (k as u64) * (e as u64);
                        assert!(big <= u16::MAX as u64, "exponent overflow");
                        big as u16
                    })
                    .collect();
                (Mono(expo), c)
            })
            .collect();
        self.make(terms)
    }

    /// Full evaluation; `point` assigns a residue to every registered variable.
    pub fn eval(&self, f: &MultiPoly, point: &[u64]) -> u64 {
        assert_eq!(point.len(), self.nvars());
        let field = self.session.field();
        let mut acc = 0u64;
        for (m, &c) in &f.terms {
            let mut t = c;
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = field.mul(t, field.pow(point[i], e as u64));
                }
            }
            acc = field.add(acc, t);
        }
        acc
    }

    /// Partial evaluation: substitute residues for a subset of variables.
    pub fn eval_vars(&self, f: &MultiPoly, assignment: &[(VarId, u64)]) -> MultiPoly {
        let field = self.session.field();
        let mut terms = BTreeMap::new();
        for (m, &c) in &f.terms {
            let mut coeff = c;
            let mut expo = m.0.clone();
            for &(v, val) in assignment {
                let e = expo[v.0];
                if e > 0 {
                    coeff = field.mul(coeff, field.pow(val, e as u64));
                    expo[v.0] = 0;
                }
                if coeff == 0 {
                    break;
                }
            }
            self.add_term(&mut terms, Mono(expo), coeff);
        }
        self.make(terms)
    }

    /// Substitute v -> v + c (binomial expansion, Pascal row mod p).
    pub fn shift_var(&self, f: &MultiPoly, v: VarId, c: u64) -> MultiPoly {
        let c = c % self.modulus();
        if c == 0 {
            return f.clone();
        }
        let field = self.session.field();
        let max_e = f.degree_in(v) as usize;
        let pascal = pascal_rows(max_e, &field);
        let mut terms = BTreeMap::new();
        for (m, &coeff) in &f.terms {
            let e = m.0[v.0] as usize;
            let mut cpow = 1u64; // c^(e-k)
            for k in (0..=e).rev() {
                let binom = pascal[e][k];
                let t = field.mul(coeff, field.mul(binom, cpow));
                if t != 0 {
                    let mut expo = m.0.clone();
                    expo[v.0] = k as u16;
                    self.add_term(&mut terms, Mono(expo), t);
                }
                cpow = field.mul(cpow, c);
            }
        }
        self.make(terms)
    }

    /// Substitute v -> c * v.
    pub fn scale_var(&self, f: &MultiPoly, v: VarId, c: u64) -> MultiPoly {
        let field = self.session.field();
        let mut terms = BTreeMap::new();
        for (m, &coeff) in &f.terms {
            let t = field.mul(coeff, field.pow(c, m.0[v.0] as u64));
            self.add_term(&mut terms, m.clone(), t);
        }
        self.make(terms)
    }

    /// Coefficient of v^k, as a polynomial with the v-exponent zeroed.
    pub fn coeff_of(&self, f: &MultiPoly, v: VarId, k: u16) -> MultiPoly {
        let mut terms = BTreeMap::new();
        for (m, &c) in &f.terms {
            if m.0[v.0] == k {
                let mut expo = m.0.clone();
                expo[v.0] = 0;
                terms.insert(Mono(expo), c);
            }
        }
        self.make(terms)
    }

    /// Exact division by a monic polynomial of degree 1 in `lead`,
    /// `divisor = lead + rest` with `rest` free of `lead`. Returns the
    /// quotient when the remainder vanishes (univariate synthetic division
    /// along `lead`).
    pub fn divide_exact_by_monic_linear(
        &self,
        f: &MultiPoly,
        lead: VarId,
        rest: &MultiPoly,
    ) -> Option<MultiPoly> {
        if f.is_zero() {
            return Some(self.constant(0));
        }
        let d = f.degree_in(lead);
        if d == 0 {
            return None;
        }
        // f = sum_k c_k(other) * lead^k; Horner from the top.
        let mut quot_coeffs: Vec<MultiPoly> = Vec::with_capacity(d as usize);
        let mut carry = self.coeff_of(f, lead, d);
        for k in (0..d).rev() {
            quot_coeffs.push(carry.clone());
            let ck = self.coeff_of(f, lead, k);
            carry = self.sub(&ck, &Ring::mul(self, &carry, rest));
        }
        if !carry.is_zero() {
            return None;
        }
        // quot_coeffs[i] is the coefficient of lead^(d-1-i).
        let mut out = self.constant(0);
        for (i, q) in quot_coeffs.iter().enumerate() {
            let e = d - 1 - i as u16;
            let shifted = Ring::mul(self, q, &self.var_pow(lead, e));
            out = self.add(&out, &shifted);
        }
        Some(out)
    }

    /// Move a polynomial into an extended session whose registry starts with
    /// this ring's variables (exponent vectors are padded with zeros).
    pub fn pad_to(&self, f: &MultiPoly, target: &PolyRing) -> MultiPoly {
        let from = self.nvars();
        let to = target.nvars();
        assert!(to >= from, "target session must extend the source");
        let terms = f
            .terms
            .iter()
            .map(|(m, &c)| {
                let mut expo = m.0.clone();
                expo.resize(to, 0);
                (Mono(expo), c)
            })
            .collect();
        target.make(terms)
    }

    /// Canonical text: graded-lex descending, `3*x^2*y + 1 (mod 7)`.
    pub fn to_text(&self, f: &MultiPoly) -> String {
        format!("{} (mod {})", self.body_text(f), self.modulus())
    }

    pub(crate) fn body_text(&self, f: &MultiPoly) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let reg = self.session.registry();
        let mut pieces = Vec::with_capacity(f.terms.len());
        for (m, &c) in f.terms.iter().rev() {
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    factors.push(reg.name(VarId(i)).to_string());
                } else if e > 1 {
                    factors.push(format!("{}^{}", reg.name(VarId(i)), e));
                }
            }
            let piece = if factors.is_empty() {
                format!("{c}")
            } else if c == 1 {
                factors.join("*")
            } else {
                format!("{}*{}", c, factors.join("*"))
            };
            pieces.push(piece);
        }
        pieces.join(" + ")
    }
}

impl Ring for PolyRing {
    type El = MultiPoly;

    fn zero(&self) -> MultiPoly {
        self.constant(0)
    }

    fn one(&self) -> MultiPoly {
        self.constant(1)
    }

    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let (big, small) = if a.terms.len() >= b.terms.len() {
            (a, b)
        } else {
            (b, a)
        };
        let mut terms = big.terms.clone();
        for (m, &c) in &small.terms {
            self.add_term(&mut terms, m.clone(), c);
        }
        self.make(terms)
    }

    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        let field = self.session.field();
        let terms = a
            .terms
            .iter()
            .map(|(m, &c)| (m.clone(), field.neg(c)))
            .collect();
        self.make(terms)
    }

    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let field = self.session.field();
        let n = self.nvars();
        let mut acc: HashMap<Mono, u64> =
            HashMap::with_capacity(a.terms.len().max(b.terms.len()) * 2);
        for (ma, &ca) in &a.terms {
            for (mb, &cb) in &b.terms {
                let c = field.mul(ca, cb);
                if c == 0 {
                    continue;
                }
                let mut expo = Vec::with_capacity(n);
                for i in 0..n {
                    let e = ma.0[i] as u32 + mb.0[i] as u32;
                    debug_assert!(e <= u16::MAX as u32, "exponent overflow in mul");
                    expo.push(e as u16);
                }
                let slot = acc.entry(Mono(expo)).or_insert(0);
                *slot = field.add(*slot, c);
            }
        }
        let terms = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        self.make(terms)
    }

    fn is_zero(&self, a: &MultiPoly) -> bool {
        a.is_zero()
    }

    fn from_int(&self, n: i64) -> MultiPoly {
        self.constant(self.session.field().from_int(n))
    }

    fn to_text(&self, a: &MultiPoly) -> String {
        PolyRing::to_text(self, a)
    }
}

impl FrobeniusTwist for PolyRing {
    fn frobenius_twist(&self, a: &MultiPoly) -> MultiPoly {
        PolyRing::frobenius_twist(self, a)
    }
}

/// Pascal triangle rows 0..=n mod p, built additively (no divisions, valid
/// for any exponent size relative to p).
fn pascal_rows(n: usize, field: &crate::field::PrimeField) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    rows.push(vec![1]);
    for e in 1..=n {
        let prev = &rows[e - 1];
        let mut row = vec![1u64; e + 1];
        for k in 1..e {
            row[k] = field.add(prev[k - 1], prev[k]);
        }
        rows.push(row);
    }
    rows
}
