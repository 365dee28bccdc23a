//! Division-free characteristic polynomials and the spectral decisions built
//! on them: exterior-power traces, nilpotence, isospectrality of matrices and
//! of pencils of commuting endomorphisms.
//!
//! The characteristic polynomial is computed by the Samuelson-Berkowitz
//! recursion, which uses only ring operations and is therefore valid in any
//! characteristic and over polynomial or rational-function entries.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::{self, Matrix};
use crate::poly::PolyRing;
use crate::ratfunc::{RatField, RatFunc};
use crate::ring::Ring;
use crate::vars::VarId;

/// Coefficients `c_0..c_N` of `det(L I - M)` in the spectral variable `L`,
/// monic: `c_N = 1`. The exterior-trace relation `Tr wedge^m M =
/// (-1)^m c_{N-m}` is the stored sign convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly<E> {
    pub coeffs: Vec<E>,
}

impl<E> CharPoly<E> {
    pub fn dim(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// Samuelson-Berkowitz: for each leading principal minor the characteristic
/// polynomial is obtained from the previous one by a lower-triangular
/// Toeplitz multiply whose column is built from the diagonal entry and the
/// Krylov products `R M^i S` of the bordering row and column.
pub fn char_poly<R: Ring>(ring: &R, m: &Matrix<R::El>) -> CharPoly<R::El> {
    let n = m.size();
    // Descending order during the recursion: index 0 is the leading coeff.
    let mut coeffs: Vec<R::El> = vec![ring.one()];
    for k in 1..=n {
        // Toeplitz column: 1, -a_kk, -(R S), -(R M S), ..., -(R M^(k-2) S)
        // for the k x k principal minor with border row R and column S.
        let akk = m.at(k - 1, k - 1).clone();
        let mut column: Vec<R::El> = Vec::with_capacity(k + 1);
        column.push(ring.one());
        column.push(ring.neg(&akk));
        if k >= 2 {
            let row: Vec<R::El> = (0..k - 1).map(|j| m.at(k - 1, j).clone()).collect();
            let mut krylov: Vec<R::El> = (0..k - 1).map(|i| m.at(i, k - 1).clone()).collect();
            for _ in 0..k - 1 {
                let mut dot = ring.zero();
                for j in 0..k - 1 {
                    if ring.is_zero(&row[j]) || ring.is_zero(&krylov[j]) {
                        continue;
                    }
                    dot = ring.add(&dot, &ring.mul(&row[j], &krylov[j]));
                }
                column.push(ring.neg(&dot));
                // krylov <- M_(k-1) * krylov
                let mut next: Vec<R::El> = Vec::with_capacity(k - 1);
                for i in 0..k - 1 {
                    let mut acc = ring.zero();
                    for j in 0..k - 1 {
                        if ring.is_zero(m.at(i, j)) || ring.is_zero(&krylov[j]) {
                            continue;
                        }
                        acc = ring.add(&acc, &ring.mul(m.at(i, j), &krylov[j]));
                    }
                    next.push(acc);
                }
                krylov = next;
            }
            column.truncate(k + 1);
        }
        let mut next = vec![ring.zero(); k + 1];
        for (i, c) in column.iter().enumerate() {
            if ring.is_zero(c) {
                continue;
            }
            for (j, prev) in coeffs.iter().enumerate() {
                if i + j <= k && !ring.is_zero(prev) {
                    next[i + j] = ring.add(&next[i + j], &ring.mul(c, prev));
                }
            }
        }
        coeffs = next;
    }
    coeffs.reverse(); // store ascending: c_0 first, c_N = 1 last
    CharPoly { coeffs }
}

/// `Tr wedge^m M = (-1)^m c_{N-m}`.
pub fn trace_wedge<R: Ring>(ring: &R, m: &Matrix<R::El>, k: usize) -> Result<R::El> {
    let n = m.size();
    if k > n {
        return Err(Error::WedgeOutOfRange { m: k, n });
    }
    let cp = char_poly(ring, m);
    let c = &cp.coeffs[n - k];
    Ok(if k % 2 == 0 { c.clone() } else { ring.neg(c) })
}

/// True iff the characteristic polynomial is `L^N`.
pub fn is_nilpotent<R: Ring>(ring: &R, m: &Matrix<R::El>) -> bool {
    let cp = char_poly(ring, m);
    cp.coeffs[..cp.dim()].iter().all(|c| ring.is_zero(c))
}

/// Coefficientwise equality of characteristic polynomials.
pub fn isospectral<R: Ring>(ring: &R, a: &Matrix<R::El>, b: &Matrix<R::El>) -> Result<bool> {
    if a.size() != b.size() {
        return Err(Error::SizeMismatch {
            left: a.size(),
            right: b.size(),
        });
    }
    Ok(char_poly(ring, a) == char_poly(ring, b))
}

pub fn char_poly_to_text<R: Ring>(ring: &R, cp: &CharPoly<R::El>) -> String {
    cp.coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| format!("c{} = {}", i, ring.to_text(c)))
        .collect::<Vec<_>>()
        .join("; ")
}

/// How to quantify over the pencil variable u in `char(sum u_i L_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PencilStrategy {
    /// Compare characteristic polynomials with u symbolic. Exact.
    Symbolic,
    /// Compare at random u-samples, with enough samples that the
    /// Schwartz-Zippel failure bound drops below 2^-30; upgrades itself to
    /// `Symbolic` when the field is too small for that bound.
    Sampled,
    /// Sampled for N*r > 8 symbolic variables, symbolic otherwise.
    Auto,
}

/// What a pencil comparison actually did, for the verification reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PencilVerdict {
    pub equal: bool,
    /// "symbolic" or "sampled"
    pub mode: &'static str,
    pub u_samples: u32,
    /// -log2 of the Schwartz-Zippel failure bound (0 for symbolic = exact).
    pub log2_bound: u32,
}

fn check_commuting<R: Ring>(ring: &R, list: &[Matrix<R::El>], name: &'static str) -> Result<()> {
    for i in 0..list.len() {
        for j in i + 1..list.len() {
            if !matrix::commute(ring, &list[i], &list[j]) {
                return Err(Error::NonCommutingPencil { list: name, i, j });
            }
        }
    }
    Ok(())
}

fn resolve_strategy(strategy: PencilStrategy, n: usize, r: usize) -> PencilStrategy {
    match strategy {
        PencilStrategy::Auto => {
            if n * r > 8 {
                PencilStrategy::Sampled
            } else {
                PencilStrategy::Symbolic
            }
        }
        s => s,
    }
}

/// Samples needed for (N/q)^k < 2^-30, or None when q <= N.
fn sz_samples(q: u64, n: usize) -> Option<(u32, u32)> {
    if q <= n as u64 {
        return None;
    }
    let per_sample = (q as f64 / n as f64).log2();
    let k = (30.0 / per_sample).ceil() as u32;
    let bound = (per_sample * k as f64).floor() as u32;
    Some((k.max(1), bound))
}

/// Isospectrality of two pencils of commuting endomorphisms over the prime
/// field: equality of `char(sum u_i L_i)` and `char(sum u_i M_i)` as
/// polynomials in fresh variables u_1..u_r.
pub fn pencil_isospectral_field(
    field: &PrimeField,
    ls: &[Matrix<u64>],
    ms: &[Matrix<u64>],
    strategy: PencilStrategy,
    rng: &mut ChaCha8Rng,
) -> Result<PencilVerdict> {
    if ls.len() != ms.len() {
        return Err(Error::SizeMismatch {
            left: ls.len(),
            right: ms.len(),
        });
    }
    check_commuting(field, ls, "L")?;
    check_commuting(field, ms, "M")?;
    let r = ls.len();
    if r == 0 {
        return Ok(PencilVerdict {
            equal: true,
            mode: "symbolic",
            u_samples: 0,
            log2_bound: 0,
        });
    }
    let n = ls[0].size();
    let strategy = resolve_strategy(strategy, n, r);
    let sampled = matches!(strategy, PencilStrategy::Sampled);
    if sampled {
        if let Some((k, bound)) = sz_samples(field.modulus(), n) {
            for _ in 0..k {
                let u: Vec<u64> = (0..r).map(|_| rng.gen_range(0..field.modulus())).collect();
                let combine = |mats: &[Matrix<u64>]| {
                    let mut acc = matrix::zero(field, n);
                    for (ui, m) in u.iter().zip(mats) {
                        acc = matrix::add(field, &acc, &matrix::scale(field, ui, m));
                    }
                    acc
                };
                if char_poly(field, &combine(ls)) != char_poly(field, &combine(ms)) {
                    return Ok(PencilVerdict {
                        equal: false,
                        mode: "sampled",
                        u_samples: k,
                        log2_bound: bound,
                    });
                }
            }
            return Ok(PencilVerdict {
                equal: true,
                mode: "sampled",
                u_samples: k,
                log2_bound: bound,
            });
        }
        // Field too small for the stated bound: fall through to symbolic.
    }
    let names: Vec<String> = (1..=r).map(|i| format!("u{i}")).collect();
    let session = crate::vars::Session::new(field.modulus(), &names).unwrap();
    let polys = PolyRing::new(session.clone());
    let lift = |mats: &[Matrix<u64>]| {
        Matrix::from_fn(n, |i, j| {
            let mut acc = polys.zero();
            for (k, m) in mats.iter().enumerate() {
                let c = *m.at(i, j);
                if c != 0 {
                    acc = polys.add(&acc, &polys.scale(&polys.var(VarId(k)), c));
                }
            }
            acc
        })
    };
    let equal = char_poly(&polys, &lift(ls)) == char_poly(&polys, &lift(ms));
    Ok(PencilVerdict {
        equal,
        mode: "symbolic",
        u_samples: 0,
        log2_bound: 0,
    })
}

/// Same comparison for matrices over the rational-function field. The
/// sampled mode draws only u; the per-sample comparison stays exact in the
/// function-field variables.
pub fn pencil_isospectral_rat(
    rat: &RatField,
    ls: &[Matrix<RatFunc>],
    ms: &[Matrix<RatFunc>],
    strategy: PencilStrategy,
    rng: &mut ChaCha8Rng,
) -> Result<PencilVerdict> {
    if ls.len() != ms.len() {
        return Err(Error::SizeMismatch {
            left: ls.len(),
            right: ms.len(),
        });
    }
    check_commuting(rat, ls, "L")?;
    check_commuting(rat, ms, "M")?;
    let r = ls.len();
    if r == 0 {
        return Ok(PencilVerdict {
            equal: true,
            mode: "symbolic",
            u_samples: 0,
            log2_bound: 0,
        });
    }
    let n = ls[0].size();
    let q = rat.modulus();
    let strategy = resolve_strategy(strategy, n, r);
    if matches!(strategy, PencilStrategy::Sampled) {
        if let Some((k, bound)) = sz_samples(q, n) {
            for _ in 0..k {
                let u: Vec<u64> = (0..r).map(|_| rng.gen_range(0..q)).collect();
                let combine = |mats: &[Matrix<RatFunc>]| {
                    let mut acc = matrix::zero(rat, n);
                    for (ui, m) in u.iter().zip(mats) {
                        let c = rat.constant(*ui);
                        acc = matrix::add(rat, &acc, &matrix::scale(rat, &c, m));
                    }
                    acc
                };
                if char_poly(rat, &combine(ls)) != char_poly(rat, &combine(ms)) {
                    return Ok(PencilVerdict {
                        equal: false,
                        mode: "sampled",
                        u_samples: k,
                        log2_bound: bound,
                    });
                }
            }
            return Ok(PencilVerdict {
                equal: true,
                mode: "sampled",
                u_samples: k,
                log2_bound: bound,
            });
        }
    }
    // Symbolic u: extend the session with fresh variables.
    let names: Vec<String> = (1..=r).map(|i| format!("@u{i}")).collect();
    let ext_session = rat.session().extend(&names);
    let ext = RatField::new(ext_session.clone());
    let base_vars = rat.session().num_vars();
    let lift = |mats: &[Matrix<RatFunc>]| {
        Matrix::from_fn(n, |i, j| {
            let mut acc = ext.zero();
            for (k, m) in mats.iter().enumerate() {
                let e = rat.pad_to(m.at(i, j), &ext);
                let u = ext.var(VarId(base_vars + k));
                acc = ext.add(&acc, &Ring::mul(&ext, &u, &e));
            }
            acc
        })
    };
    let equal = char_poly(&ext, &lift(ls)) == char_poly(&ext, &lift(ms));
    Ok(PencilVerdict {
        equal,
        mode: "symbolic",
        u_samples: 0,
        log2_bound: 0,
    })
}

/// Single-matrix convenience: a pencil of length one.
pub fn charpolys_match_rat(rat: &RatField, a: &Matrix<RatFunc>, b: &Matrix<RatFunc>) -> Result<bool> {
    isospectral(rat, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{identity, inverse_field, mul};
    use crate::vars::Session;
    use rand::{Rng, SeedableRng};

    #[test]
    fn char_poly_of_swap() {
        // [[0,1],[1,0]] -> L^2 - 1
        let field = PrimeField::new(7).unwrap();
        let m = Matrix::from_rows(vec![vec![0, 1], vec![1, 0]]);
        let cp = char_poly(&field, &m);
        assert_eq!(cp.coeffs, vec![6, 0, 1]);
    }

    #[test]
    fn trace_wedge_edges() {
        let field = PrimeField::new(11).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let m = Matrix::from_fn(4, |_, _| rng.gen_range(0..11u64));
        assert_eq!(trace_wedge(&field, &m, 0).unwrap(), 1);
        let tr = (0..4).fold(0, |acc, i| field.add(acc, *m.at(i, i)));
        assert_eq!(trace_wedge(&field, &m, 1).unwrap(), tr);
        assert!(trace_wedge(&field, &m, 5).is_err());
    }

    #[test]
    fn nilpotence_examples() {
        let field = PrimeField::new(5).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        // strictly upper triangular
        let m = Matrix::from_fn(4, |i, j| if j > i { rng.gen_range(0..5u64) } else { 0 });
        assert!(is_nilpotent(&field, &m));
        assert!(!is_nilpotent(&field, &identity(&field, 4)));
        // random nilpotent Jordan form, conjugated; oracle: M^N = 0
        let jordan = Matrix::from_fn(4, |i, j| u64::from(j == i + 1));
        loop {
            let g = Matrix::from_fn(4, |_, _| rng.gen_range(0..5u64));
            if let Ok(ginv) = inverse_field(&field, &g) {
                let m = mul(&field, &mul(&field, &g, &jordan), &ginv);
                assert!(matrix::is_zero(&field, &matrix::pow(&field, &m, 4)));
                assert!(is_nilpotent(&field, &m));
                break;
            }
        }
    }

    #[test]
    fn isospectral_examples() {
        let field = PrimeField::new(7).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        let m = Matrix::from_fn(3, |_, _| rng.gen_range(0..7u64));
        assert!(isospectral(&field, &m, &m.transpose()).unwrap());
        let d12 = matrix::diagonal(&field, &[1, 2]);
        let d21 = matrix::diagonal(&field, &[2, 1]);
        let d11 = matrix::diagonal(&field, &[1, 1]);
        assert!(isospectral(&field, &d12, &d21).unwrap());
        assert!(!isospectral(&field, &d11, &d12).unwrap());
        assert!(isospectral(&field, &d11, &matrix::identity(&field, 3)).is_err());
    }

    #[test]
    fn conjugation_invariance() {
        let field = PrimeField::new(13).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(100);
        let mut done = 0;
        while done < 50 {
            let m = Matrix::from_fn(4, |_, _| rng.gen_range(0..13u64));
            let g = Matrix::from_fn(4, |_, _| rng.gen_range(0..13u64));
            let Ok(ginv) = inverse_field(&field, &g) else {
                continue;
            };
            let conj = mul(&field, &mul(&field, &g, &m), &ginv);
            assert_eq!(char_poly(&field, &m), char_poly(&field, &conj));
            done += 1;
        }
    }

    #[test]
    fn symbolic_char_poly_over_polys() {
        // diag(x, y) -> (L - x)(L - y) = L^2 - (x+y)L + xy
        let session = Session::new(7, &["x", "y"]).unwrap();
        let polys = PolyRing::new(session.clone());
        let x = polys.var(session.var("x"));
        let y = polys.var(session.var("y"));
        let m = matrix::diagonal(&polys, &[x.clone(), y.clone()]);
        let cp = char_poly(&polys, &m);
        assert_eq!(cp.coeffs[2], polys.one());
        assert_eq!(cp.coeffs[1], polys.neg(&polys.add(&x, &y)));
        assert_eq!(cp.coeffs[0], Ring::mul(&polys, &x, &y));
    }

    #[test]
    fn pencil_non_commuting_is_an_error() {
        let field = PrimeField::new(5).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let a = Matrix::from_rows(vec![vec![0, 1], vec![0, 0]]);
        let b = Matrix::from_rows(vec![vec![0, 0], vec![1, 0]]);
        let err = pencil_isospectral_field(
            &field,
            &[a.clone(), b.clone()],
            &[a, b],
            PencilStrategy::Symbolic,
            &mut rng,
        );
        assert!(matches!(err, Err(Error::NonCommutingPencil { .. })));
    }

    #[test]
    fn pencil_identity_and_conjugation() {
        let field = PrimeField::new(7).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        // commuting family: polynomials of one random matrix
        let a = Matrix::from_fn(3, |_, _| rng.gen_range(0..7u64));
        let a2 = mul(&field, &a, &a);
        let one = identity(&field, 3);
        let l1 = matrix::add(&field, &a, &matrix::scale(&field, &3, &one));
        let l2 = matrix::add(&field, &a2, &matrix::scale(&field, &2, &a));
        let ls = vec![l1.clone(), l2.clone()];
        let v = pencil_isospectral_field(&field, &ls, &ls, PencilStrategy::Symbolic, &mut rng)
            .unwrap();
        assert!(v.equal);
        // simultaneous conjugation
        loop {
            let g = Matrix::from_fn(3, |_, _| rng.gen_range(0..7u64));
            if let Ok(ginv) = inverse_field(&field, &g) {
                let conj =
                    |m: &Matrix<u64>| mul(&field, &mul(&field, &g, m), &ginv);
                let ms = vec![conj(&l1), conj(&l2)];
                let v = pencil_isospectral_field(
                    &field,
                    &ls,
                    &ms,
                    PencilStrategy::Sampled,
                    &mut rng,
                )
                .unwrap();
                assert!(v.equal);
                break;
            }
        }
        // a genuinely different pencil fails
        let ms = vec![l1.clone(), matrix::scale(&field, &2, &l2)];
        let v =
            pencil_isospectral_field(&field, &ls, &ms, PencilStrategy::Symbolic, &mut rng).unwrap();
        assert!(!v.equal);
    }

    #[test]
    fn sampled_upgrades_to_symbolic_when_field_is_small() {
        // q = 3 <= N = 4 makes the Schwartz-Zippel bound vacuous.
        let field = PrimeField::new(3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        let m = Matrix::from_fn(4, |i, j| u64::from(i == j));
        let v = pencil_isospectral_field(
            &field,
            &[m.clone()],
            &[m],
            PencilStrategy::Sampled,
            &mut rng,
        )
        .unwrap();
        assert_eq!(v.mode, "symbolic");
        assert!(v.equal);
    }
}
