//! Irreducible sl2 representations V(m), tensor products, and the two-site
//! Casimir tensor.
//!
//! Conventions: basis v_0..v_m of V(m) with
//!   h v_k = (m - 2k) v_k,   f v_k = v_(k+1),   e v_k = k(m - k + 1) v_(k-1),
//! and Omega = e (x) f + f (x) e + (1/2) h (x) h, which needs p > 2.

use crate::error::{Error, Result};
use crate::matrix::{self, Matrix};
use crate::ring::Ring;

/// Dimension of V(m_1) (x) ... (x) V(m_r).
pub fn tensor_dim(reps: &[u32]) -> usize {
    reps.iter().map(|&m| (m + 1) as usize).product()
}

pub fn e_matrix<R: Ring>(ring: &R, m: u32) -> Matrix<R::El> {
    let n = (m + 1) as usize;
    Matrix::from_fn(n, |i, j| {
        if j == i + 1 {
            let k = j as i64;
            ring.from_int(k * (m as i64 - k + 1))
        } else {
            ring.zero()
        }
    })
}

pub fn f_matrix<R: Ring>(ring: &R, m: u32) -> Matrix<R::El> {
    let n = (m + 1) as usize;
    Matrix::from_fn(n, |i, j| {
        if i == j + 1 {
            ring.one()
        } else {
            ring.zero()
        }
    })
}

pub fn h_matrix<R: Ring>(ring: &R, m: u32) -> Matrix<R::El> {
    let n = (m + 1) as usize;
    Matrix::from_fn(n, |i, j| {
        if i == j {
            ring.from_int(m as i64 - 2 * i as i64)
        } else {
            ring.zero()
        }
    })
}

/// Lift an operator on the `site`-th factor to the tensor product.
pub fn lift_to_site<R: Ring>(
    ring: &R,
    reps: &[u32],
    site: usize,
    local: &Matrix<R::El>,
) -> Matrix<R::El> {
    let dims: Vec<usize> = reps.iter().map(|&m| (m + 1) as usize).collect();
    assert_eq!(local.size(), dims[site]);
    let n = tensor_dim(reps);
    let unflatten = |mut idx: usize| -> Vec<usize> {
        let mut multi = vec![0usize; dims.len()];
        for k in (0..dims.len()).rev() {
            multi[k] = idx % dims[k];
            idx /= dims[k];
        }
        multi
    };
    Matrix::from_fn(n, |i, j| {
        let mi = unflatten(i);
        let mj = unflatten(j);
        for k in 0..dims.len() {
            if k != site && mi[k] != mj[k] {
                return ring.zero();
            }
        }
        local.at(mi[site], mj[site]).clone()
    })
}

/// Diagonal action: the operator acting as `local_m` on each factor, summed.
pub fn diagonal_action<R: Ring>(
    ring: &R,
    reps: &[u32],
    local: impl Fn(&R, u32) -> Matrix<R::El>,
) -> Matrix<R::El> {
    let n = tensor_dim(reps);
    let mut acc = matrix::zero(ring, n);
    for (site, &m) in reps.iter().enumerate() {
        acc = matrix::add(ring, &acc, &lift_to_site(ring, reps, site, &local(ring, m)));
    }
    acc
}

/// Two-site Casimir `Omega^(ij) = e^(i) f^(j) + f^(i) e^(j) + (1/2) h^(i) h^(j)`.
pub fn omega_pair<R: Ring>(ring: &R, reps: &[u32], i: usize, j: usize, half: &R::El) -> Matrix<R::El> {
    assert_ne!(i, j);
    let ei = lift_to_site(ring, reps, i, &e_matrix(ring, reps[i]));
    let fi = lift_to_site(ring, reps, i, &f_matrix(ring, reps[i]));
    let hi = lift_to_site(ring, reps, i, &h_matrix(ring, reps[i]));
    let ej = lift_to_site(ring, reps, j, &e_matrix(ring, reps[j]));
    let fj = lift_to_site(ring, reps, j, &f_matrix(ring, reps[j]));
    let hj = lift_to_site(ring, reps, j, &h_matrix(ring, reps[j]));
    let mut acc = matrix::mul(ring, &ei, &fj);
    acc = matrix::add(ring, &acc, &matrix::mul(ring, &fi, &ej));
    acc = matrix::add(
        ring,
        &acc,
        &matrix::scale(ring, half, &matrix::mul(ring, &hi, &hj)),
    );
    acc
}

/// Guard shared by every Omega-based model.
pub fn require_odd_characteristic(p: u64, what: &str) -> Result<()> {
    if p == 2 {
        return Err(Error::InvalidConfig(format!(
            "{what} is undefined at p = 2 (Omega contains 1/2)"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn sl2_commutation_relations() {
        let field = PrimeField::new(11).unwrap();
        for m in 1..=3u32 {
            let e = e_matrix(&field, m);
            let f = f_matrix(&field, m);
            let h = h_matrix(&field, m);
            assert_eq!(matrix::commutator(&field, &e, &f), h, "[e,f] = h");
            assert_eq!(
                matrix::commutator(&field, &h, &e),
                matrix::scale(&field, &2, &e),
                "[h,e] = 2e"
            );
            assert_eq!(
                matrix::commutator(&field, &h, &f),
                matrix::scale(&field, &field.neg(2), &f),
                "[h,f] = -2f"
            );
        }
    }

    #[test]
    fn omega_commutes_with_diagonal_action() {
        let field = PrimeField::new(7).unwrap();
        let reps = [1u32, 1];
        let half = field.inv(2).unwrap();
        let omega = omega_pair(&field, &reps, 0, 1, &half);
        for local in [e_matrix::<PrimeField>, f_matrix, h_matrix] {
            let total = diagonal_action(&field, &reps, local);
            assert!(matrix::commute(&field, &omega, &total));
        }
    }

    #[test]
    fn omega_eigenvalues_on_two_spins() {
        // On V(1) (x) V(1), Omega has eigenvalue 1/2 on the triplet and
        // -3/2 on the singlet: char poly (L - 1/2)^3 (L + 3/2).
        let field = PrimeField::new(7).unwrap();
        let half = field.inv(2).unwrap();
        let omega = omega_pair(&field, &[1, 1], 0, 1, &half);
        let cp = crate::charpoly::char_poly(&field, &omega);
        let minus_three_halves = field.neg(field.mul(3, half));
        // expected coefficients of (L - 1/2)^3 (L + 3/2), ascending in L
        let mut coeffs = vec![1u64];
        for root in [half, half, half, minus_three_halves] {
            let mut next = vec![0u64; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] = field.add(next[i + 1], c);
                next[i] = field.sub(next[i], field.mul(c, root));
            }
            coeffs = next;
        }
        assert_eq!(cp.coeffs, coeffs);
    }
}
