//! Homology over a PID, per degree, from the two adjacent blocks of `∂`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::complex::graded::GradedComplex;
use crate::error::{Error, Result};
use crate::linalg::smith::{invariant_factors, reduce, Track};
use crate::linalg::Matrix;
use crate::ring::Ring;

/// `R^rank ⊕ ⊕ R/(d_i)` with the `d_i` non-unit invariant factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup<R> {
    pub rank: usize,
    pub torsion: Vec<R>,
}

impl<R: Ring> HomologyGroup<R> {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl<R: Ring> fmt::Display for HomologyGroup<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = R::spec();
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 {
                format!("{ring}")
            } else {
                format!("{ring}^{}", self.rank)
            });
        }
        for d in &self.torsion {
            parts.push(format!("{ring}/({d})"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Nonzero homology groups keyed by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport<R> {
    pub groups: BTreeMap<i64, HomologyGroup<R>>,
}

impl<R: Ring> HomologyReport<R> {
    pub fn rank(&self, n: i64) -> usize {
        self.groups.get(&n).map_or(0, |g| g.rank)
    }

    pub fn torsion(&self, n: i64) -> &[R] {
        self.groups.get(&n).map_or(&[], |g| g.torsion.as_slice())
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn ranks(&self) -> BTreeMap<i64, usize> {
        self.groups
            .iter()
            .filter(|(_, g)| g.rank > 0)
            .map(|(n, g)| (*n, g.rank))
            .collect()
    }

    pub fn restrict(&self, lo: i64, hi: i64) -> Self {
        HomologyReport {
            groups: self
                .groups
                .iter()
                .filter(|(n, _)| (lo..=hi).contains(*n))
                .map(|(n, g)| (*n, g.clone()))
                .collect(),
        }
    }
}

impl<R: Ring> fmt::Display for HomologyReport<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            return writeln!(f, "  (all zero)");
        }
        for (n, g) in &self.groups {
            writeln!(f, "  H_{n} = {g}")?;
        }
        Ok(())
    }
}

/// Homology of a degree piece of dimension `dim` with outgoing block `out`
/// (`C_n → C_{n-1}`) and incoming block `inc` (`C_{n+1} → C_n`).
pub(crate) fn group_from_blocks<R: Ring>(
    dim: usize,
    out: Matrix<R>,
    inc: Matrix<R>,
) -> Result<HomologyGroup<R>> {
    let rank_out = invariant_factors(out)?.len();
    let inc = invariant_factors(inc)?;
    let rank_in = inc.len();
    let torsion = inc.into_iter().filter(|d| !d.is_unit()).collect();
    Ok(HomologyGroup {
        rank: dim - rank_out - rank_in,
        torsion,
    })
}

/// Homology of the complex in every degree where it has generators.
pub fn homology<R: Ring>(c: &GradedComplex<R>) -> Result<HomologyReport<R>> {
    match c.degree_bounds() {
        Some((lo, hi)) => homology_in(c, lo, hi),
        None => Ok(HomologyReport {
            groups: BTreeMap::new(),
        }),
    }
}

/// Homology restricted to degrees `lo..=hi`.
pub fn homology_in<R: Ring>(c: &GradedComplex<R>, lo: i64, hi: i64) -> Result<HomologyReport<R>> {
    if !R::spec().admits_snf() {
        return Err(Error::UnsupportedRing(R::spec()));
    }
    let mut groups = BTreeMap::new();
    for n in c.degrees().filter(|n| (lo..=hi).contains(n)) {
        let g = degree_group(c, n)?;
        if !g.is_zero() {
            groups.insert(n, g);
        }
    }
    Ok(HomologyReport { groups })
}

fn degree_group<R: Ring>(c: &GradedComplex<R>, n: i64) -> Result<HomologyGroup<R>> {
    group_from_blocks(c.dim(n), c.boundary_block(n), c.boundary_block(n + 1))
}

/// Explicit homology in one degree: generators, invariant factors, and a
/// coordinate map from cycles to `⊕ R/(d_i)`.
#[derive(Clone, Debug)]
pub struct DegreeModel<R> {
    /// Generator index range of `C_n` inside the complex.
    pub offset: usize,
    pub dim: usize,
    rank_out: usize,
    v_inv: Matrix<R>,
    p: Matrix<R>,
    keep: Vec<usize>,
    /// Factor of each homology generator: zero for free, a non-unit for torsion.
    pub factors: Vec<R>,
    /// Cycle representatives in `C_n` coordinates.
    pub reps: Vec<Vec<R>>,
}

impl<R: Ring> DegreeModel<R> {
    fn new(c: &GradedComplex<R>, n: i64) -> Result<Self> {
        let range = c.range(n);
        let dim = range.len();
        let out = reduce(
            c.boundary_block(n),
            Track {
                v: true,
                v_inv: true,
                ..Track::NONE
            },
        )?;
        let rank_out = out.rank;
        let v = out.v.expect("tracked");
        let v_inv = out.v_inv.expect("tracked");
        let k = dim - rank_out;
        // boundaries expressed in the kernel basis (last k columns of V)
        let inc = v_inv.mul(&c.boundary_block(n + 1));
        let x = inc.select(
            &(rank_out..dim).collect::<Vec<_>>(),
            &(0..inc.cols()).collect::<Vec<_>>(),
        );
        let red = reduce(
            x,
            Track {
                u: true,
                u_inv: true,
                ..Track::NONE
            },
        )?;
        let p = red.u.expect("tracked");
        let p_inv = red.u_inv.expect("tracked");
        let mut keep = Vec::new();
        let mut factors = Vec::new();
        for i in 0..k {
            let d = if i < red.rank {
                red.diagonal[i].clone()
            } else {
                R::zero()
            };
            if d.is_zero() || !d.is_unit() {
                keep.push(i);
                factors.push(d);
            }
        }
        let kernel = v.select(
            &(0..dim).collect::<Vec<_>>(),
            &(rank_out..dim).collect::<Vec<_>>(),
        );
        let reps = keep
            .iter()
            .map(|&i| kernel.mul_vec(&p_inv.column(i)))
            .collect();
        Ok(DegreeModel {
            offset: range.start,
            dim,
            rank_out,
            v_inv,
            p,
            keep,
            factors,
            reps,
        })
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Coordinates of the class of a cycle `z ∈ C_n`, torsion entries reduced.
    pub fn coords(&self, z: &[R]) -> Vec<R> {
        assert_eq!(z.len(), self.dim);
        let w = self.v_inv.mul_vec(z);
        debug_assert!(w[..self.rank_out].iter().all(Zero::is_zero), "not a cycle");
        let pc = self.p.mul_vec(&w[self.rank_out..]);
        self.keep
            .iter()
            .zip(&self.factors)
            .map(|(&i, d)| reduce_mod(&pc[i], d))
            .collect()
    }

    /// Whether `z` is a cycle.
    pub fn is_cycle(&self, z: &[R]) -> bool {
        self.v_inv.mul_vec(z)[..self.rank_out]
            .iter()
            .all(Zero::is_zero)
    }
}

pub(crate) fn reduce_mod<R: Ring>(x: &R, d: &R) -> R {
    if d.is_zero() {
        x.clone()
    } else {
        x.div_rem(d).expect("PID with division").1
    }
}

/// Per-degree homology models for the whole complex.
#[derive(Clone, Debug)]
pub struct HomologyModel<R> {
    pub degrees: BTreeMap<i64, DegreeModel<R>>,
}

impl<R: Ring> HomologyModel<R> {
    pub fn new(c: &GradedComplex<R>) -> Result<Self> {
        if !R::spec().admits_snf() {
            return Err(Error::UnsupportedRing(R::spec()));
        }
        let mut degrees = BTreeMap::new();
        for n in c.degrees() {
            degrees.insert(n, DegreeModel::new(c, n)?);
        }
        Ok(HomologyModel { degrees })
    }

    pub fn degree(&self, n: i64) -> Option<&DegreeModel<R>> {
        self.degrees.get(&n)
    }

    pub fn factors(&self, n: i64) -> Vec<R> {
        self.degrees
            .get(&n)
            .map(|d| d.factors.clone())
            .unwrap_or_default()
    }

    pub fn len(&self, n: i64) -> usize {
        self.degrees.get(&n).map_or(0, DegreeModel::len)
    }

    /// Representative of generator `i` of `H_n` as a full-length vector.
    pub fn full_rep(&self, n: i64, i: usize, total: usize) -> Vec<R> {
        let d = &self.degrees[&n];
        let mut v = vec![R::zero(); total];
        for (k, x) in d.reps[i].iter().enumerate() {
            v[d.offset + k] = x.clone();
        }
        v
    }

    /// Coordinates in `H_n` of a cycle given as a full-length vector.
    pub fn coords_full(&self, n: i64, z: &[R]) -> Vec<R> {
        match self.degrees.get(&n) {
            Some(d) => d.coords(&z[d.offset..d.offset + d.dim]),
            None => Vec::new(),
        }
    }

    pub fn report(&self) -> HomologyReport<R> {
        let groups = self
            .degrees
            .iter()
            .filter(|(_, d)| !d.is_empty())
            .map(|(n, d)| {
                let rank = d.factors.iter().filter(|f| f.is_zero()).count();
                let torsion = d.factors.iter().filter(|f| !f.is_zero()).cloned().collect();
                (*n, HomologyGroup { rank, torsion })
            })
            .collect();
        HomologyReport { groups }
    }
}
