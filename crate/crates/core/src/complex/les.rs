//! Long exact sequences in homology from short exact sequences of complexes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::complex::chain_map::{ChainMap, MapSign};
use crate::complex::homology::{HomologyModel, HomologyReport};
use crate::error::{Error, Result};
use crate::linalg::smith::invariant_factors;
use crate::linalg::{kernel_dense, rank, solve_dense, Matrix};
use crate::ring::Ring;

/// The three terms of `0 → A → B → C → 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Position {
    A,
    B,
    C,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Position::A => "A",
            Position::B => "B",
            Position::C => "C",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesNode {
    pub degree: i64,
    pub position: Position,
    pub exact: bool,
}

/// The long exact sequence `… → H_n(A) → H_n(B) → H_n(C) → H_{n-1}(A) → …`.
///
/// Each map is stored per degree as a matrix in the homology bases of the
/// models; torsion coordinates are reduced modulo their invariant factor.
#[derive(Clone, Debug)]
pub struct LesReport<R> {
    pub a: HomologyReport<R>,
    pub b: HomologyReport<R>,
    pub c: HomologyReport<R>,
    pub i_star: BTreeMap<i64, Matrix<R>>,
    pub p_star: BTreeMap<i64, Matrix<R>>,
    /// `δ_n : H_n(C) → H_{n-1}(A)`, keyed by `n`.
    pub connecting: BTreeMap<i64, Matrix<R>>,
    pub nodes: Vec<LesNode>,
}

impl<R: Ring> LesReport<R> {
    pub fn is_exact(&self) -> bool {
        self.nodes.iter().all(|n| n.exact)
    }

    pub fn is_exact_in(&self, lo: i64, hi: i64) -> bool {
        self.nodes
            .iter()
            .filter(|n| (lo..=hi).contains(&n.degree))
            .all(|n| n.exact)
    }

    /// The part of the sequence in degrees `lo..=hi`.
    pub fn restrict(&self, lo: i64, hi: i64) -> Self {
        let maps = |m: &BTreeMap<i64, Matrix<R>>| {
            m.iter()
                .filter(|(k, _)| (lo..=hi).contains(*k))
                .map(|(k, v)| (*k, v.clone()))
                .collect()
        };
        LesReport {
            a: self.a.restrict(lo, hi),
            b: self.b.restrict(lo, hi),
            c: self.c.restrict(lo, hi),
            i_star: maps(&self.i_star),
            p_star: maps(&self.p_star),
            connecting: maps(&self.connecting),
            nodes: self
                .nodes
                .iter()
                .filter(|n| (lo..=hi).contains(&n.degree))
                .cloned()
                .collect(),
        }
    }

    pub fn first_failure(&self) -> Option<&LesNode> {
        self.nodes.iter().find(|n| !n.exact)
    }

    pub fn connecting_is_zero(&self) -> bool {
        self.connecting.values().all(Matrix::is_zero)
    }
}

impl<R: Ring> fmt::Display for LesReport<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let degrees: BTreeSet<i64> = self.nodes.iter().map(|n| n.degree).collect();
        writeln!(f, "  {:>5}  {:<14} {:<14} {:<14} rank δ_n", "n", "H_n(A)", "H_n(B)", "H_n(C)")?;
        for n in degrees.into_iter().rev() {
            let g = |r: &HomologyReport<R>| {
                r.groups
                    .get(&n)
                    .map_or_else(|| "0".to_string(), |g| g.to_string())
            };
            let delta = self
                .connecting
                .get(&n)
                .map_or(0, |m| rank(m.clone()).unwrap_or(0));
            writeln!(f, "  {:>5}  {:<14} {:<14} {:<14} {}", n, g(&self.a), g(&self.b), g(&self.c), delta)?;
        }
        match self.first_failure() {
            None => writeln!(f, "  exact at every node"),
            Some(n) => writeln!(f, "  NOT exact at H_{}({})", n.degree, n.position),
        }
    }
}

/// Checks that `0 → A --i--> B --p--> C → 0` is a degreewise split exact
/// sequence of free modules.
pub fn check_short_exact<R: Ring>(i: &ChainMap<R>, p: &ChainMap<R>) -> Result<()> {
    if i.degree() != 0 || p.degree() != 0 {
        return Err(Error::DimensionMismatch("short exact sequence maps must have degree 0".into()));
    }
    if i.target() != p.source() {
        return Err(Error::DimensionMismatch("i and p do not compose".into()));
    }
    i.ensure_chain_map()?;
    p.ensure_chain_map()?;
    let comp = i.matrix().mul(p.matrix());
    if let Some((x, _, _)) = comp.iter().next() {
        return Err(Error::NotExact {
            degree: i.source().generator(x).degree,
            position: Position::B.to_string(),
        });
    }
    let degrees: BTreeSet<i64> = i
        .source()
        .degrees()
        .chain(i.target().degrees())
        .chain(p.target().degrees())
        .collect();
    for n in degrees {
        let (da, db, dc) = (i.source().dim(n), i.target().dim(n), p.target().dim(n));
        let split = |m: Matrix<R>, want: usize| -> Result<bool> {
            let f = invariant_factors(m)?;
            Ok(f.len() == want && f.iter().all(Ring::is_unit))
        };
        if !split(i.block(n), da)? {
            return Err(Error::NotExact {
                degree: n,
                position: Position::A.to_string(),
            });
        }
        if !split(p.block(n), dc)? {
            return Err(Error::NotExact {
                degree: n,
                position: Position::C.to_string(),
            });
        }
        if da + dc != db {
            return Err(Error::NotExact {
                degree: n,
                position: Position::B.to_string(),
            });
        }
    }
    Ok(())
}

/// Builds the long exact sequence of `0 → A → B → C → 0`, computing the
/// connecting map by lifting through `p`, applying `∂`, and pulling back through `i`.
pub fn les_of_ses<R: Ring>(i: &ChainMap<R>, p: &ChainMap<R>) -> Result<LesReport<R>> {
    if i.sign() != MapSign::Commute || p.sign() != MapSign::Commute {
        return Err(Error::NotChainMap("short exact sequence maps must commute with ∂".into()));
    }
    check_short_exact(i, p)?;
    let (a, b, c) = (i.source(), i.target(), p.target());
    let (ma, mb, mc) = (HomologyModel::new(a)?, HomologyModel::new(b)?, HomologyModel::new(c)?);
    let i_star = i.induced(&ma, &mb);
    let p_star = p.induced(&mb, &mc);

    let mut connecting = BTreeMap::new();
    for (&n, model) in &mc.degrees {
        let rows = ma.len(n - 1);
        let mut cols = Vec::with_capacity(model.len());
        let p_n = p.block(n);
        let i_prev = i.block(n - 1);
        let b_range = b.range(n);
        let b_prev = b.range(n - 1);
        for z in &model.reps {
            let lift = solve_dense(p_n.clone(), z)?.ok_or_else(|| {
                Error::InternalMismatch(format!("cycle in degree {n} does not lift through p"))
            })?;
            let mut full = vec![R::zero(); b.len()];
            for (k, x) in lift.into_iter().enumerate() {
                full[b_range.start + k] = x;
            }
            let db = b.apply_diff(&full);
            let pulled = solve_dense(i_prev.clone(), &db[b_prev.clone()])?.ok_or_else(|| {
                Error::InternalMismatch(format!("boundary in degree {} is not in the image of i", n - 1))
            })?;
            if rows == 0 {
                cols.push(Vec::new());
                continue;
            }
            let mut a_full = vec![R::zero(); a.len()];
            let a_range = a.range(n - 1);
            for (k, x) in pulled.into_iter().enumerate() {
                a_full[a_range.start + k] = x;
            }
            cols.push(ma.coords_full(n - 1, &a_full));
        }
        connecting.insert(n, Matrix::from_columns(rows, &cols));
    }

    let degrees: BTreeSet<i64> = a.degrees().chain(b.degrees()).chain(c.degrees()).collect();
    let mut nodes = Vec::new();
    let empty = |rows: usize, cols: usize| Matrix::zeros(rows, cols);
    for &n in &degrees {
        let (fa, fb, fc) = (ma.factors(n), mb.factors(n), mc.factors(n));
        let fc_up = mc.factors(n + 1);
        let fa_down = ma.factors(n - 1);
        let get = |m: &BTreeMap<i64, Matrix<R>>, k: i64, r: usize, cc: usize| {
            m.get(&k).cloned().unwrap_or_else(|| empty(r, cc))
        };
        let delta_in = get(&connecting, n + 1, fa.len(), fc_up.len());
        let i_n = get(&i_star, n, fb.len(), fa.len());
        let p_n = get(&p_star, n, fc.len(), fb.len());
        let delta_out = get(&connecting, n, fa_down.len(), fc.len());
        nodes.push(LesNode {
            degree: n,
            position: Position::A,
            exact: exact_at(&delta_in, &i_n, &fa, &fb)?,
        });
        nodes.push(LesNode {
            degree: n,
            position: Position::B,
            exact: exact_at(&i_n, &p_n, &fb, &fc)?,
        });
        nodes.push(LesNode {
            degree: n,
            position: Position::C,
            exact: exact_at(&p_n, &delta_out, &fc, &fa_down)?,
        });
    }

    Ok(LesReport {
        a: ma.report(),
        b: mb.report(),
        c: mc.report(),
        i_star,
        p_star,
        connecting,
        nodes,
    })
}

fn relation_matrix<R: Ring>(factors: &[R]) -> Matrix<R> {
    let mut d = Matrix::zeros(factors.len(), factors.len());
    for (k, x) in factors.iter().enumerate() {
        d[(k, k)] = x.clone();
    }
    d
}

fn hcat<R: Ring>(a: &Matrix<R>, b: &Matrix<R>) -> Matrix<R> {
    assert_eq!(a.rows(), b.rows());
    let mut m = Matrix::zeros(a.rows(), a.cols() + b.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            m[(r, c)] = a[(r, c)].clone();
        }
        for c in 0..b.cols() {
            m[(r, a.cols() + c)] = b[(r, c)].clone();
        }
    }
    m
}

/// Exactness at `M` of `L --f--> M --g--> N`, where `M` and `N` are `⊕ R/(d_k)` given by
/// their factor lists (zero for a free summand).
pub(crate) fn exact_at<R: Ring>(
    f: &Matrix<R>,
    g: &Matrix<R>,
    m: &[R],
    n: &[R],
) -> Result<bool> {
    if m.is_empty() {
        return Ok(true);
    }
    // g ∘ f must vanish modulo the relations of N
    let gf = g.mul(f);
    for r in 0..gf.rows() {
        for c in 0..gf.cols() {
            let x = &gf[(r, c)];
            let ok = if n[r].is_zero() {
                x.is_zero()
            } else {
                n[r].divides(x) == Some(true)
            };
            if !ok {
                return Ok(false);
            }
        }
    }
    // every element of ker g lifts to the image of f, modulo relations of M
    let kernel = kernel_dense(hcat(g, &relation_matrix(n)))?;
    let image = hcat(f, &relation_matrix(m));
    for v in kernel {
        let head = &v[..m.len()];
        if head.iter().all(Zero::is_zero) {
            continue;
        }
        if solve_dense(image.clone(), head)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::chain_map::mapping_cone;
    use crate::complex::graded::{Generator, GradedComplex};
    use num_bigint::BigInt;
    use std::sync::Arc;

    fn cone_ses(
        c: Arc<GradedComplex<BigInt>>,
        f: &ChainMap<BigInt>,
    ) -> (ChainMap<BigInt>, ChainMap<BigInt>) {
        let cone = Arc::new(mapping_cone(f).unwrap());
        let shifted = Arc::new(f.source().shift(1));
        let i = ChainMap::from_fn(c.clone(), cone.clone(), 0, MapSign::Commute, |id| {
            vec![(format!("tgt:{id}"), BigInt::from(1))]
        })
        .unwrap();
        let p = ChainMap::from_fn(cone, shifted, 0, MapSign::Commute, |id| {
            id.strip_prefix("src:")
                .map(|x| vec![(x.to_string(), BigInt::from(1))])
                .unwrap_or_default()
        })
        .unwrap();
        (i, p)
    }

    #[test]
    fn split_sequence_has_zero_connecting_map() {
        let c = Arc::new(
            GradedComplex::<BigInt>::new(
                vec![Generator::new("a", 1), Generator::new("b", 0), Generator::new("z", 0)],
                vec![("a", "b", BigInt::from(2))],
            )
            .unwrap(),
        );
        let zero = ChainMap::zero(c.clone(), c.clone(), 0, MapSign::Commute);
        let (i, p) = cone_ses(c, &zero);
        let les = les_of_ses(&i, &p).unwrap();
        assert!(les.is_exact());
        assert!(les.connecting_is_zero());
    }

    #[test]
    fn multiplication_by_two_connects() {
        let c = Arc::new(
            GradedComplex::<BigInt>::new(vec![Generator::new("p", 0)], Vec::<(&str, &str, BigInt)>::new())
                .unwrap(),
        );
        let two = ChainMap::from_entries(c.clone(), c.clone(), 0, MapSign::Commute, vec![("p", "p", BigInt::from(2))])
            .unwrap();
        let (i, p) = cone_ses(c, &two);
        let les = les_of_ses(&i, &p).unwrap();
        assert!(les.is_exact());
        // δ : H_1(C[1]) = Z → H_0(C) = Z is multiplication by 2
        assert_eq!(les.connecting[&1], Matrix::from_i64(&[&[2]]));
        assert_eq!(les.b.torsion(0), &[BigInt::from(2)]);
    }

    #[test]
    fn non_exact_input_is_rejected() {
        let c = Arc::new(
            GradedComplex::<BigInt>::new(vec![Generator::new("p", 0)], Vec::<(&str, &str, BigInt)>::new())
                .unwrap(),
        );
        let two = ChainMap::from_entries(c.clone(), c.clone(), 0, MapSign::Commute, vec![("p", "p", BigInt::from(2))])
            .unwrap();
        let id = ChainMap::identity(c);
        let err = les_of_ses(&two, &ChainMap::zero(id.source_arc(), id.target_arc(), 0, MapSign::Commute))
            .unwrap_err();
        assert!(matches!(err, Error::NotExact { degree: 0, .. }));
    }

    #[test]
    fn node_exactness_detects_failure() {
        // Z --0--> Z --0--> 0 is not exact in the middle
        let f = Matrix::<BigInt>::zeros(1, 1);
        let g = Matrix::<BigInt>::zeros(0, 1);
        assert!(!exact_at(&f, &g, &[BigInt::zero()], &[]).unwrap());
        // Z --2--> Z --> Z/2 → 0 is exact in the middle
        let f = Matrix::from_i64(&[&[2]]);
        let g = Matrix::from_i64(&[&[1]]);
        let two = BigInt::from(2);
        assert!(exact_at(&f, &g, &[BigInt::zero()], &[two]).unwrap());
    }
}
