use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use floer_algebra::linalg::{determinant, kernel_dense, rank, smith_dense, solve_dense, Matrix};
use floer_algebra::{Gf2, Ring};

fn int_matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = Matrix<BigInt>> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r).prop_map(|rows| {
            Matrix::from_rows(
                rows.into_iter()
                    .map(|row| row.into_iter().map(BigInt::from).collect())
                    .collect(),
            )
        })
    })
}

fn gf2_matrix(max_dim: usize) -> impl Strategy<Value = Matrix<Gf2>> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(any::<bool>(), c), r)
            .prop_map(|rows| Matrix::from_rows(rows.into_iter().map(|row| row.into_iter().map(Gf2).collect()).collect()))
    })
}

/// Row echelon rank over ℚ, independent of the Smith reduction.
fn rational_rank(m: &Matrix<BigInt>) -> usize {
    let mut a: Vec<Vec<BigRational>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| BigRational::from(x.clone())).collect())
        .collect();
    let mut r = 0;
    for c in 0..m.cols() {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                let pivot = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot) {
                    *x -= p * &f;
                }
            }
        }
        r += 1;
    }
    r
}

fn minor(m: &Matrix<BigInt>, rows: &[usize], cols: &[usize]) -> BigInt {
    determinant(&m.select(rows, cols))
}

/// `d_1 ⋯ d_k` equals the gcd of all `k × k` minors.
fn determinantal_divisor(m: &Matrix<BigInt>, k: usize) -> BigInt {
    (0..m.rows())
        .combinations(k)
        .cartesian_product((0..m.cols()).combinations(k).collect::<Vec<_>>())
        .fold(BigInt::zero(), |g, (r, c)| g.gcd(&minor(m, &r, &c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn smith_factorization_over_z(m in int_matrix(6, 9)) {
        let s = smith_dense(m.clone()).unwrap();
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d_matrix());
        prop_assert!(determinant(&s.u).abs() == BigInt::from(1));
        prop_assert!(determinant(&s.v).abs() == BigInt::from(1));
        let f = s.invariant_factors();
        for w in f.windows(2) {
            prop_assert!(Ring::divides(&w[0], &w[1]).unwrap());
        }
        prop_assert!(f.iter().all(|d| d.is_positive()));
    }

    #[test]
    fn smith_factorization_over_gf2(m in gf2_matrix(8)) {
        let s = smith_dense(m.clone()).unwrap();
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d_matrix());
        prop_assert!(s.invariant_factors().iter().all(|d| *d == Gf2(true)));
    }

    #[test]
    fn invariant_factors_match_minors(m in int_matrix(4, 6)) {
        let s = smith_dense(m.clone()).unwrap();
        let mut prod = BigInt::from(1);
        for k in 1..=m.rows().min(m.cols()) {
            let expected = determinantal_divisor(&m, k);
            if k <= s.rank {
                prod *= &s.invariant_factors()[k - 1];
                prop_assert_eq!(&prod, &expected);
            } else {
                prop_assert!(expected.is_zero());
            }
        }
    }

    #[test]
    fn rank_matches_rational_elimination(m in int_matrix(7, 4)) {
        prop_assert_eq!(rank(m.clone()).unwrap(), rational_rank(&m));
    }

    #[test]
    fn solve_resubstitutes(m in int_matrix(5, 5), x in prop::collection::vec(-5i64..=5, 5)) {
        let x: Vec<BigInt> = x[..m.cols()].iter().map(|&v| BigInt::from(v)).collect();
        let b = m.mul_vec(&x);
        let y = solve_dense(m.clone(), &b).unwrap().expect("b lies in the image");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn kernel_is_a_saturated_basis(m in int_matrix(5, 5)) {
        let k = kernel_dense(m.clone()).unwrap();
        prop_assert_eq!(k.len(), m.cols() - rational_rank(&m));
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        if !k.is_empty() {
            // a basis of a direct summand has unit maximal minors gcd
            let basis = Matrix::from_columns(m.cols(), &k);
            prop_assert_eq!(determinantal_divisor(&basis, k.len()), BigInt::from(1));
        }
    }
}

#[test]
fn unsolvable_system_is_reported() {
    let m = Matrix::from_i64(&[&[2, 0], &[0, 3]]);
    let b = [BigInt::from(1), BigInt::from(0)];
    assert_eq!(solve_dense(m, &b).unwrap(), None);
}

#[test]
fn rational_entries_reduce_to_units() {
    let m: Matrix<BigRational> = Matrix::from_rows(vec![
        vec![BigRational::new(1.into(), 2.into()), BigRational::from_integer(3.into())],
        vec![BigRational::from_integer(1.into()), BigRational::from_integer(6.into())],
    ]);
    let s = smith_dense(m).unwrap();
    assert_eq!(s.rank, 1);
    assert!(s.invariant_factors()[0].is_unit());
}
