//! Smith normal form over a Euclidean ring by pivoted elimination.
//!
//! The pivot at each stage is the nonzero entry of smallest Euclidean size
//! in the remaining submatrix. Row and column operations are optionally
//! replayed on identity matrices to produce `U`, `V` (and their inverses)
//! with `U · M · V = D`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::matrix::{Matrix, SparseMatrix};
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm<R> {
    /// Diagonal of `D`, length `min(rows, cols)`; entries past `rank` are zero.
    pub diagonal: Vec<R>,
    pub rank: usize,
    pub u: Matrix<R>,
    pub v: Matrix<R>,
}

impl<R: Ring> SmithForm<R> {
    pub fn invariant_factors(&self) -> &[R] {
        &self.diagonal[..self.rank]
    }

    pub fn d_matrix(&self) -> Matrix<R> {
        let mut d = Matrix::zeros(self.u.rows(), self.v.cols());
        for (i, x) in self.diagonal.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Track {
    pub u: bool,
    pub v: bool,
    pub u_inv: bool,
    pub v_inv: bool,
}

impl Track {
    pub const NONE: Track = Track {
        u: false,
        v: false,
        u_inv: false,
        v_inv: false,
    };
}

pub(crate) struct Reduced<R> {
    pub diagonal: Vec<R>,
    pub rank: usize,
    pub u: Option<Matrix<R>>,
    pub v: Option<Matrix<R>>,
    pub u_inv: Option<Matrix<R>>,
    pub v_inv: Option<Matrix<R>>,
}

struct Reducer<R: Ring> {
    a: Matrix<R>,
    u: Option<Matrix<R>>,
    v: Option<Matrix<R>>,
    u_inv: Option<Matrix<R>>,
    v_inv: Option<Matrix<R>>,
}

impl<R: Ring> Reducer<R> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap_rows(i, j);
        }
    }

    // row[target] += c * row[source]
    fn add_row(&mut self, target: usize, source: usize, c: &R) {
        self.a.add_row_multiple(target, source, c);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(target, source, c);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.add_col_multiple(source, target, &-c.clone());
        }
    }

    // col[target] += c * col[source]
    fn add_col(&mut self, target: usize, source: usize, c: &R) {
        self.a.add_col_multiple(target, source, c);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(target, source, c);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.add_row_multiple(source, target, &-c.clone());
        }
    }

    fn scale_row(&mut self, i: usize, unit: &R, unit_inv: &R) {
        self.a.scale_row(i, unit);
        if let Some(u) = &mut self.u {
            u.scale_row(i, unit);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.scale_col(i, unit_inv);
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), num_bigint::BigUint)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let s = x.euclid_size();
                if best.as_ref().is_none_or(|(_, b)| s < *b) {
                    best = Some(((i, j), s));
                }
            }
        }
        best.map(|(p, _)| p)
    }

    // Smallest nonzero entry in row t / column t beyond the pivot, if smaller than the pivot.
    fn smaller_in_cross(&self, t: usize) -> Option<(usize, usize)> {
        let mut best = (t, t);
        let mut size = self.a[(t, t)].euclid_size();
        for i in t + 1..self.a.rows() {
            let x = &self.a[(i, t)];
            if !x.is_zero() && x.euclid_size() < size {
                size = x.euclid_size();
                best = (i, t);
            }
        }
        for j in t + 1..self.a.cols() {
            let x = &self.a[(t, j)];
            if !x.is_zero() && x.euclid_size() < size {
                size = x.euclid_size();
                best = (t, j);
            }
        }
        (best != (t, t)).then_some(best)
    }

    fn reduce(&mut self) -> Result<usize> {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        let mut t = 0;
        while t < rows.min(cols) {
            let Some((pi, pj)) = self.min_entry(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                if let Some((i, j)) = self.smaller_in_cross(t) {
                    self.swap_rows(t, i);
                    self.swap_cols(t, j);
                }
                let pivot = self.a[(t, t)].clone();
                let mut clean = true;
                for i in t + 1..rows {
                    if self.a[(i, t)].is_zero() {
                        continue;
                    }
                    let (q, r) = self.a[(i, t)]
                        .div_rem(&pivot)
                        .ok_or(Error::UnsupportedRing(R::spec()))?;
                    self.add_row(i, t, &-q);
                    clean &= r.is_zero();
                }
                for j in t + 1..cols {
                    if self.a[(t, j)].is_zero() {
                        continue;
                    }
                    let (q, r) = self.a[(t, j)]
                        .div_rem(&pivot)
                        .ok_or(Error::UnsupportedRing(R::spec()))?;
                    self.add_col(j, t, &-q);
                    clean &= r.is_zero();
                }
                if !clean {
                    continue;
                }
                // Row and column are clear; enforce divisibility of the rest.
                let mut offender = None;
                'scan: for i in t + 1..rows {
                    for j in t + 1..cols {
                        let x = &self.a[(i, j)];
                        if x.is_zero() {
                            continue;
                        }
                        let (_, r) = x.div_rem(&pivot).ok_or(Error::UnsupportedRing(R::spec()))?;
                        if !r.is_zero() {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(i) => self.add_row(t, i, &R::one()),
                    None => break,
                }
            }
            t += 1;
        }
        for i in 0..t {
            let (_, unit) = self.a[(i, i)].normalize();
            if unit != R::one() {
                let inv = unit.inverse().expect("normalizing factor is a unit");
                self.scale_row(i, &unit, &inv);
            }
        }
        Ok(t)
    }
}

pub(crate) fn reduce<R: Ring>(m: Matrix<R>, track: Track) -> Result<Reduced<R>> {
    if !R::spec().admits_snf() {
        return Err(Error::UnsupportedRing(R::spec()));
    }
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = Reducer {
        a: m,
        u: track.u.then(|| Matrix::identity(rows)),
        v: track.v.then(|| Matrix::identity(cols)),
        u_inv: track.u_inv.then(|| Matrix::identity(rows)),
        v_inv: track.v_inv.then(|| Matrix::identity(cols)),
    };
    let rank = r.reduce()?;
    let diagonal = (0..rows.min(cols))
        .map(|i| {
            if i < rank {
                r.a[(i, i)].clone()
            } else {
                R::zero()
            }
        })
        .collect();
    Ok(Reduced {
        diagonal,
        rank,
        u: r.u,
        v: r.v,
        u_inv: r.u_inv,
        v_inv: r.v_inv,
    })
}

/// Smith normal form `U · M · V = D` with `d₁ | d₂ | …` canonically normalized.
pub fn smith_normal_form<R: Ring>(m: &SparseMatrix<R>) -> Result<SmithForm<R>> {
    smith_dense(m.to_dense())
}

pub fn smith_dense<R: Ring>(m: Matrix<R>) -> Result<SmithForm<R>> {
    let red = reduce(
        m,
        Track {
            u: true,
            v: true,
            ..Track::NONE
        },
    )?;
    Ok(SmithForm {
        diagonal: red.diagonal,
        rank: red.rank,
        u: red.u.expect("tracked"),
        v: red.v.expect("tracked"),
    })
}

/// Rank together with the nonzero invariant factors, without tracking transforms.
pub fn invariant_factors<R: Ring>(m: Matrix<R>) -> Result<Vec<R>> {
    let red = reduce(m, Track::NONE)?;
    let mut d = red.diagonal;
    d.truncate(red.rank);
    Ok(d)
}

pub fn is_zero_vec<R: Ring>(v: &[R]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Gf2;
    use num_bigint::BigInt;

    fn check<R: Ring>(m: &Matrix<R>, s: &SmithForm<R>) {
        assert_eq!(s.u.mul(m).mul(&s.v), s.d_matrix());
        for w in s.invariant_factors().windows(2) {
            assert_eq!(w[0].divides(&w[1]), Some(true));
        }
    }

    #[test]
    fn diag_two_three_over_z() {
        let m = Matrix::<BigInt>::from_i64(&[&[2, 0], &[0, 3]]);
        let s = smith_dense(m.clone()).unwrap();
        check(&m, &s);
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn zero_matrix_has_identity_transforms() {
        let m = Matrix::<BigInt>::zeros(2, 2);
        let s = smith_dense(m).unwrap();
        assert_eq!(s.rank, 0);
        assert_eq!(s.u, Matrix::identity(2));
        assert_eq!(s.v, Matrix::identity(2));
        assert!(s.diagonal.iter().all(Zero::is_zero));
    }

    #[test]
    fn all_ones_over_gf2() {
        let m = Matrix::<Gf2>::from_i64(&[&[1, 1], &[1, 1]]);
        let s = smith_dense(m.clone()).unwrap();
        check(&m, &s);
        assert_eq!(s.diagonal, vec![Gf2(true), Gf2(false)]);
    }

    #[test]
    fn inverses_are_tracked() {
        let m = Matrix::<BigInt>::from_i64(&[&[4, 6, 2], &[2, -3, 7], &[0, 5, 5]]);
        let r = reduce(
            m,
            Track {
                u: true,
                v: true,
                u_inv: true,
                v_inv: true,
            },
        )
        .unwrap();
        let (u, ui) = (r.u.unwrap(), r.u_inv.unwrap());
        let (v, vi) = (r.v.unwrap(), r.v_inv.unwrap());
        assert_eq!(u.mul(&ui), Matrix::identity(3));
        assert_eq!(v.mul(&vi), Matrix::identity(3));
    }

    #[test]
    fn negative_entries_normalize_positive() {
        let m = Matrix::<BigInt>::from_i64(&[&[-4]]);
        let s = smith_dense(m.clone()).unwrap();
        check(&m, &s);
        assert_eq!(s.diagonal, vec![BigInt::from(4)]);
    }
}
