//! Gaudin operators on the group algebra of S_n, Moser's Lax matrix of the
//! rational Calogero-Moser system, and the operator form of the spectral
//! correspondence between them: substituting the commuting Gaudin tuple into
//! the Calogero-Moser hamiltonians reproduces the symmetric functions of the
//! highest weight, up to nilpotents.

use crate::charpoly::trace_wedge;
use crate::error::{Error, Result};
use crate::matrix::{self, Matrix};
use crate::poly::MultiPoly;
use crate::ratfunc::{LinearForm, RatField, RatFunc};
use crate::ring::Ring;
use crate::vars::VarId;

/// The symmetric group S_n with its one-line permutations; w maps position k
/// to w[k]. Composition is (w * u)[k] = w[u[k]].
#[derive(Debug, Clone)]
pub struct SymmetricGroup {
    pub n: usize,
    pub elems: Vec<Vec<usize>>,
}

impl SymmetricGroup {
    pub fn new(n: usize) -> Self {
        let mut elems = vec![vec![]];
        for k in 0..n {
            let mut next = Vec::new();
            for perm in &elems {
                for pos in 0..=k {
                    let mut w: Vec<usize> = perm.clone();
                    w.insert(pos, k);
                    next.push(w);
                }
            }
            elems = next;
        }
        elems.sort();
        SymmetricGroup { n, elems }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn index_of(&self, w: &[usize]) -> usize {
        self.elems
            .iter()
            .position(|e| e == w)
            .expect("permutation in group")
    }

    pub fn compose(&self, w: &[usize], u: &[usize]) -> Vec<usize> {
        (0..self.n).map(|k| w[u[k]]).collect()
    }

    pub fn inverse(&self, w: &[usize]) -> Vec<usize> {
        let mut inv = vec![0usize; self.n];
        for (k, &wk) in w.iter().enumerate() {
            inv[wk] = k;
        }
        inv
    }

    pub fn transposition(&self, i: usize, j: usize) -> Vec<usize> {
        let mut w: Vec<usize> = (0..self.n).collect();
        w.swap(i, j);
        w
    }

    /// Left multiplication by w on the group algebra, in the element basis.
    pub fn left_mult_matrix<R: Ring>(&self, ring: &R, w: &[usize]) -> Matrix<R::El> {
        let n = self.order();
        Matrix::from_fn(n, |i, j| {
            let target = self.compose(w, &self.elems[j]);
            if self.elems[i] == target {
                ring.one()
            } else {
                ring.zero()
            }
        })
    }

    /// Reflections of the permutation representation: transpositions (i, j).
    pub fn reflections(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                out.push((i, j));
            }
        }
        out
    }
}

/// Inputs for the Gaudin operators: the coupling, the highest weight and the
/// evaluation point as coordinate expressions (`sum lam_k = sum h_k = 0` is
/// the caller's responsibility when the sum-zero form matters).
#[derive(Debug, Clone)]
pub struct GaudinData {
    pub rat: RatField,
    pub group: SymmetricGroup,
    pub c: RatFunc,
    /// Coordinates of the highest weight lambda in the permutation basis.
    pub lam: Vec<RatFunc>,
    /// Coordinates of the evaluation point h; pairwise differences must be
    /// (scalar multiples of) linear forms so the poles stay factored.
    pub h: Vec<MultiPoly>,
}

/// `1 / f` for a polynomial of degree at most one: a nonzero constant inverts
/// in the field, a linear form becomes a denominator factor, and a zero
/// difference is a pole (coincident coordinates).
fn reciprocal(rat: &RatField, f: &MultiPoly) -> Result<RatFunc> {
    let polys = rat.polys();
    if let Some(c) = f.constant_value() {
        if c == 0 {
            return Err(Error::PoleAtPoint("coordinate difference".into()));
        }
        return Ok(rat.constant(rat.session().field().inv(c)?));
    }
    let (scalar, form) = LinearForm::from_poly(polys, f).ok_or_else(|| {
        Error::InvalidConfig("coordinate differences must have degree at most one".into())
    })?;
    Ok(rat.over_form(
        polys.constant(rat.session().field().inv(scalar)?),
        form,
        1,
    ))
}

impl GaudinData {
    /// The operator attached to the j-th coordinate vector e_j:
    /// `G_j = diag_w(lam(w^-1 e_j)) + c sum_{k != j} L_(jk) / (x_j - x_k)`.
    /// Operators for arbitrary Cartan directions are linear combinations.
    pub fn coordinate_operator(&self, j: usize) -> Result<Matrix<RatFunc>> {
        let rat = &self.rat;
        let polys = rat.polys();
        let g = &self.group;
        let n = g.n;
        let size = g.order();
        // Diagonal: basis element w carries lam(w^-1 e_j) = lam_(w^-1(j)).
        let mut out = Matrix::from_fn(size, |a, b| {
            if a == b {
                self.lam[g.inverse(&g.elems[a])[j]].clone()
            } else {
                rat.zero()
            }
        });
        for k in 0..n {
            if k == j {
                continue;
            }
            let diff = polys.sub(&self.h[j], &self.h[k]);
            let coeff = Ring::mul(rat, &self.c, &reciprocal(rat, &diff)?);
            let swap = g.left_mult_matrix(rat, &g.transposition(j, k));
            out = matrix::add(rat, &out, &matrix::scale(rat, &coeff, &swap));
        }
        Ok(out)
    }

    /// `G(v) = sum_j v_j G_j` for a Cartan direction with field coordinates.
    pub fn operator_for(&self, v: &[u64]) -> Result<Matrix<RatFunc>> {
        let rat = &self.rat;
        let mut acc = matrix::zero(rat, self.group.order());
        for (j, &vj) in v.iter().enumerate() {
            if vj == 0 {
                continue;
            }
            let g = self.coordinate_operator(j)?;
            acc = matrix::add(rat, &acc, &matrix::scale(rat, &rat.constant(vj), &g));
        }
        Ok(acc)
    }

    /// Operators for the fundamental coweights of sl_n, i.e. the directions
    /// `omega_i = e_1 + ... + e_i - (i/n)(e_1 + ... + e_n)`; needs p coprime
    /// to n.
    pub fn fundamental_operators(&self) -> Result<Vec<Matrix<RatFunc>>> {
        let rat = &self.rat;
        let field = rat.session().field();
        let n = self.group.n;
        if field.modulus() % (n as u64) == 0 {
            return Err(Error::InvalidConfig(format!(
                "fundamental coweights of sl_{n} need p coprime to {n}"
            )));
        }
        let ninv = field.inv(n as u64)?;
        (1..n)
            .map(|i| {
                let coords: Vec<u64> = (0..n)
                    .map(|j| {
                        let indicator = if j < i { 1 } else { 0 };
                        field.sub(indicator, field.mul(i as u64, ninv))
                    })
                    .collect();
                self.operator_for(&coords)
            })
            .collect()
    }
}

/// Moser's Lax matrix `L = sum_j mu_j E_jj + sum_{i != j} c/(x_i - x_j) E_ij`
/// with the mu-slots symbolic.
pub fn cm_lax(data: &GaudinData, mu: &[VarId]) -> Result<Matrix<RatFunc>> {
    let rat = &data.rat;
    let polys = rat.polys();
    let n = data.group.n;
    assert_eq!(mu.len(), n, "one mu slot per particle");
    let mut out = matrix::zero(rat, n);
    for i in 0..n {
        out.set(i, i, rat.var(mu[i]));
        for j in 0..n {
            if i == j {
                continue;
            }
            let diff = polys.sub(&data.h[i], &data.h[j]);
            out.set(i, j, Ring::mul(rat, &data.c, &reciprocal(rat, &diff)?));
        }
    }
    Ok(out)
}

/// The Calogero-Moser hamiltonian `H_k = Tr wedge^k L` as a rational function
/// polynomial in the mu-slots.
pub fn cm_hamiltonian(data: &GaudinData, lax: &Matrix<RatFunc>, k: usize) -> Result<RatFunc> {
    trace_wedge(&data.rat, lax, k)
}

/// Substitute commuting matrices for the mu-slots of a hamiltonian: each
/// monomial `g(x, c) * mu^beta` becomes `g(x, c) * prod_j M_j^(beta_j)`.
pub fn substitute_commuting_matrices(
    rat: &RatField,
    h: &RatFunc,
    mu: &[VarId],
    mats: &[Matrix<RatFunc>],
) -> Matrix<RatFunc> {
    let polys = rat.polys();
    let size = mats[0].size();
    let mut acc = matrix::zero(rat, size);
    for (mono, coeff) in h.num().terms() {
        // Split the monomial into its mu-part and the rest.
        let mut rest = mono.clone();
        let mut powers = vec![0u16; mu.len()];
        for (slot, &v) in mu.iter().enumerate() {
            powers[slot] = rest.0[v.0];
            rest.0[v.0] = 0;
        }
        let scalar_num = polys.monomial(rest, coeff);
        let scalar = rat.make(
            scalar_num,
            h.den_factors().map(|(f, e)| (f.clone(), e)).collect(),
        );
        let mut term = matrix::identity(rat, size);
        for (slot, &e) in powers.iter().enumerate() {
            for _ in 0..e {
                term = matrix::mul(rat, &term, &mats[slot]);
            }
        }
        acc = matrix::add(rat, &acc, &matrix::scale(rat, &scalar, &term));
    }
    acc
}

/// Elementary symmetric polynomial of rational functions.
pub fn elementary_symmetric(rat: &RatField, vals: &[RatFunc], k: usize) -> RatFunc {
    if k == 0 {
        return rat.one();
    }
    // dynamic programming over prod (1 + t v_i)
    let mut row = vec![rat.zero(); k + 1];
    row[0] = rat.one();
    for v in vals {
        for j in (1..=k).rev() {
            let add = Ring::mul(rat, &row[j - 1], v);
            row[j] = rat.add(&row[j], &add);
        }
    }
    row[k].clone()
}

/// The defects `D_k = H_k(c, h, G) - e_k(lambda) Id` of the operator form of
/// the spectral correspondence, for k = 1..n. Each must be nilpotent (zero
/// for generic parameters).
pub fn cm_operator_defects(data: &GaudinData, mu: &[VarId]) -> Result<Vec<Matrix<RatFunc>>> {
    let rat = &data.rat;
    let n = data.group.n;
    let g_ops: Vec<Matrix<RatFunc>> = (0..n)
        .map(|j| data.coordinate_operator(j))
        .collect::<Result<_>>()?;
    // The substitution is only meaningful for a commuting tuple.
    for i in 0..n {
        for j in i + 1..n {
            if !matrix::commute(rat, &g_ops[i], &g_ops[j]) {
                return Err(Error::NonCommutingPencil { list: "G", i, j });
            }
        }
    }
    let lax = cm_lax(data, mu)?;
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let h_k = cm_hamiltonian(data, &lax, k)?;
        let substituted = substitute_commuting_matrices(rat, &h_k, mu, &g_ops);
        let ek = elementary_symmetric(rat, &data.lam, k);
        let target = matrix::scale(rat, &ek, &matrix::identity(rat, data.group.order()));
        out.push(matrix::sub(rat, &substituted, &target));
    }
    Ok(out)
}
