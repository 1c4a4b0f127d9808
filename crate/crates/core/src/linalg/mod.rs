//! Exact linear algebra over the supported coefficient rings.

pub mod matrix;
pub mod smith;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use matrix::{Matrix, SparseMatrix};
pub use smith::{invariant_factors, smith_dense, smith_normal_form, SmithForm};

use crate::error::{Error, Result};
use crate::ring::Ring;
use smith::{reduce, Track};

/// Some `x` with `M x = b` over the ring itself (not its fraction field), or `None`.
pub fn solve_linear<R: Ring>(m: &SparseMatrix<R>, b: &[R]) -> Result<Option<Vec<R>>> {
    solve_dense(m.to_dense(), b)
}

pub fn solve_dense<R: Ring>(m: Matrix<R>, b: &[R]) -> Result<Option<Vec<R>>> {
    if m.rows() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows, right-hand side has length {}",
            m.rows(),
            b.len()
        )));
    }
    let cols = m.cols();
    let red = reduce(
        m,
        Track {
            u: true,
            v: true,
            ..Track::NONE
        },
    )?;
    let ub = red.u.expect("tracked").mul_vec(b);
    let mut y = vec![R::zero(); cols];
    for (i, rhs) in ub.iter().enumerate() {
        if i < red.rank {
            let (q, r) = rhs
                .div_rem(&red.diagonal[i])
                .ok_or(Error::UnsupportedRing(R::spec()))?;
            if !r.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        } else if !rhs.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(red.v.expect("tracked").mul_vec(&y)))
}

/// Basis of `{x : M x = 0}` as a free module.
pub fn kernel_basis<R: Ring>(m: &SparseMatrix<R>) -> Result<Vec<Vec<R>>> {
    kernel_dense(m.to_dense())
}

pub fn kernel_dense<R: Ring>(m: Matrix<R>) -> Result<Vec<Vec<R>>> {
    let cols = m.cols();
    let red = reduce(
        m,
        Track {
            v: true,
            ..Track::NONE
        },
    )?;
    let v = red.v.expect("tracked");
    Ok((red.rank..cols).map(|j| v.column(j)).collect())
}

pub fn rank<R: Ring>(m: Matrix<R>) -> Result<usize> {
    Ok(reduce(m, Track::NONE)?.rank)
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub fn determinant(m: &Matrix<BigInt>) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    a[(n - 1, n - 1)].clone() * sign
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Gf2;
    use num_rational::BigRational;

    fn z(rows: &[&[i64]]) -> SparseMatrix<BigInt> {
        Matrix::from_i64(rows).to_sparse()
    }

    #[test]
    fn integral_solvability() {
        let m = z(&[&[2]]);
        assert_eq!(
            solve_linear(&m, &[BigInt::from(4)]).unwrap(),
            Some(vec![BigInt::from(2)])
        );
        assert_eq!(solve_linear(&m, &[BigInt::from(3)]).unwrap(), None);
    }

    #[test]
    fn rational_solvability() {
        let m = Matrix::<BigRational>::from_i64(&[&[2]]).to_sparse();
        let x = solve_linear(&m, &[BigRational::from_i64(3)]).unwrap().unwrap();
        assert_eq!(x[0], BigRational::new(3.into(), 2.into()));
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&SparseMatrix::<BigInt>::identity(3)).unwrap().is_empty());
        assert_eq!(kernel_basis(&SparseMatrix::<BigInt>::new(2, 3)).unwrap().len(), 3);
        let m = Matrix::<Gf2>::from_i64(&[&[1, 1]]).to_sparse();
        assert_eq!(
            kernel_basis(&m).unwrap(),
            vec![vec![Gf2(true), Gf2(true)]]
        );
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let m = z(&[&[1, 2]]);
        assert!(matches!(
            solve_linear(&m, &[BigInt::from(1), BigInt::from(1)]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn bareiss_determinant() {
        let m = Matrix::<BigInt>::from_i64(&[&[0, 2, 1], &[3, 1, 0], &[1, 1, 1]]);
        // cofactor expansion along the first row: -2*(3-0) + 1*(3-1) = -4
        assert_eq!(determinant(&m), BigInt::from(-4));
        assert_eq!(determinant(&Matrix::<BigInt>::zeros(0, 0)), BigInt::one());
    }
}
