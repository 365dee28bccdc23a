//! Dense square matrices over any coefficient ring.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::ring::{FrobeniusTwist, Ring};

/// Row-major N x N matrix; all entries share one ring context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<E> {
    n: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        for row in &rows {
            assert_eq!(row.len(), n, "matrix must be square");
        }
        Matrix {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = &E> {
        self.data.iter()
    }

    pub fn map<T: Clone>(&self, mut f: impl FnMut(&E) -> T) -> Matrix<T> {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|e| f(e)).collect(),
        }
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.n).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix<E> {
        Matrix::from_fn(self.n, |i, j| self.at(j, i).clone())
    }
}

pub fn zero<R: Ring>(ring: &R, n: usize) -> Matrix<R::El> {
    Matrix::from_fn(n, |_, _| ring.zero())
}

pub fn identity<R: Ring>(ring: &R, n: usize) -> Matrix<R::El> {
    Matrix::from_fn(n, |i, j| if i == j { ring.one() } else { ring.zero() })
}

pub fn diagonal<R: Ring>(ring: &R, entries: &[R::El]) -> Matrix<R::El> {
    Matrix::from_fn(entries.len(), |i, j| {
        if i == j {
            entries[i].clone()
        } else {
            ring.zero()
        }
    })
}

pub fn add<R: Ring>(ring: &R, a: &Matrix<R::El>, b: &Matrix<R::El>) -> Matrix<R::El> {
    assert_eq!(a.n, b.n);
    Matrix::from_fn(a.n, |i, j| ring.add(a.at(i, j), b.at(i, j)))
}

pub fn sub<R: Ring>(ring: &R, a: &Matrix<R::El>, b: &Matrix<R::El>) -> Matrix<R::El> {
    assert_eq!(a.n, b.n);
    Matrix::from_fn(a.n, |i, j| ring.sub(a.at(i, j), b.at(i, j)))
}

pub fn neg<R: Ring>(ring: &R, a: &Matrix<R::El>) -> Matrix<R::El> {
    a.map(|e| ring.neg(e))
}

pub fn scale<R: Ring>(ring: &R, c: &R::El, a: &Matrix<R::El>) -> Matrix<R::El> {
    a.map(|e| ring.mul(c, e))
}

pub fn mul<R: Ring>(ring: &R, a: &Matrix<R::El>, b: &Matrix<R::El>) -> Matrix<R::El> {
    assert_eq!(a.n, b.n);
    Matrix::from_fn(a.n, |i, j| {
        let mut acc = ring.zero();
        for k in 0..a.n {
            if ring.is_zero(a.at(i, k)) || ring.is_zero(b.at(k, j)) {
                continue;
            }
            acc = ring.add(&acc, &ring.mul(a.at(i, k), b.at(k, j)));
        }
        acc
    })
}

pub fn matvec<R: Ring>(ring: &R, a: &Matrix<R::El>, v: &[R::El]) -> Vec<R::El> {
    assert_eq!(a.n, v.len());
    (0..a.n)
        .map(|i| {
            let mut acc = ring.zero();
            for k in 0..a.n {
                if ring.is_zero(a.at(i, k)) || ring.is_zero(&v[k]) {
                    continue;
                }
                acc = ring.add(&acc, &ring.mul(a.at(i, k), &v[k]));
            }
            acc
        })
        .collect()
}

pub fn pow<R: Ring>(ring: &R, a: &Matrix<R::El>, e: u32) -> Matrix<R::El> {
    let mut acc = identity(ring, a.n);
    for _ in 0..e {
        acc = mul(ring, &acc, a);
    }
    acc
}

pub fn commutator<R: Ring>(ring: &R, a: &Matrix<R::El>, b: &Matrix<R::El>) -> Matrix<R::El> {
    sub(ring, &mul(ring, a, b), &mul(ring, b, a))
}

pub fn is_zero<R: Ring>(ring: &R, a: &Matrix<R::El>) -> bool {
    a.data.iter().all(|e| ring.is_zero(e))
}

pub fn commute<R: Ring>(ring: &R, a: &Matrix<R::El>, b: &Matrix<R::El>) -> bool {
    is_zero(ring, &commutator(ring, a, b))
}

/// Entrywise Frobenius twist; eigenvalues become p-th powers.
pub fn frobenius_twist<R: FrobeniusTwist>(ring: &R, a: &Matrix<R::El>) -> Matrix<R::El> {
    a.map(|e| ring.frobenius_twist(e))
}

/// Gauss-Jordan inverse over the prime field.
pub fn inverse_field(field: &PrimeField, a: &Matrix<u64>) -> Result<Matrix<u64>> {
    let n = a.size();
    let mut work = a.clone();
    let mut inv = identity(field, n);
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| *work.at(r, col) != 0)
            .ok_or(Error::ZeroInverse)?;
        if pivot != col {
            for j in 0..n {
                let (x, y) = (*work.at(pivot, j), *work.at(col, j));
                work.set(pivot, j, y);
                work.set(col, j, x);
                let (x, y) = (*inv.at(pivot, j), *inv.at(col, j));
                inv.set(pivot, j, y);
                inv.set(col, j, x);
            }
        }
        let scale = field.inv(*work.at(col, col))?;
        for j in 0..n {
            work.set(col, j, field.mul(*work.at(col, j), scale));
            inv.set(col, j, field.mul(*inv.at(col, j), scale));
        }
        for r in 0..n {
            if r == col || *work.at(r, col) == 0 {
                continue;
            }
            let factor = *work.at(r, col);
            for j in 0..n {
                let w = field.sub(*work.at(r, j), field.mul(factor, *work.at(col, j)));
                work.set(r, j, w);
                let v = field.sub(*inv.at(r, j), field.mul(factor, *inv.at(col, j)));
                inv.set(r, j, v);
            }
        }
    }
    Ok(inv)
}

pub fn to_text<R: Ring>(ring: &R, a: &Matrix<R::El>) -> String {
    let mut out = String::new();
    for i in 0..a.n {
        out.push_str("  [");
        for j in 0..a.n {
            if j > 0 {
                out.push_str(", ");
            }
            out.push_str(&ring.to_text(a.at(i, j)));
        }
        out.push_str("]\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn associativity_on_random_triples() {
        let field = PrimeField::new(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let m = |rng: &mut ChaCha8Rng| Matrix::from_fn(3, |_, _| rng.gen_range(0..7u64));
            let (a, b, c) = (m(&mut rng), m(&mut rng), m(&mut rng));
            assert_eq!(
                mul(&field, &mul(&field, &a, &b), &c),
                mul(&field, &a, &mul(&field, &b, &c))
            );
        }
    }

    #[test]
    fn field_inverse_round_trip() {
        let field = PrimeField::new(13).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut found = 0;
        while found < 20 {
            let a = Matrix::from_fn(4, |_, _| rng.gen_range(0..13u64));
            if let Ok(inv) = inverse_field(&field, &a) {
                assert_eq!(mul(&field, &a, &inv), identity(&field, 4));
                assert_eq!(mul(&field, &inv, &a), identity(&field, 4));
                found += 1;
            }
        }
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let field = PrimeField::new(5).unwrap();
        let a = Matrix::from_rows(vec![vec![1, 2], vec![2, 4]]);
        assert!(inverse_field(&field, &a).is_err());
    }
}
