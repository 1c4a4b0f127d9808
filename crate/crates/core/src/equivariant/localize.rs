//! Graded `R[U]`-modules (`deg U = −2`) and their localization at `U`.

use std::fmt;

use crate::complex::homology::{group_from_blocks, HomologyGroup};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ring::Ring;

/// One term `c · U^power · e_generator` of a relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UTerm<R> {
    pub generator: usize,
    pub power: u32,
    pub coeff: R,
}

/// A finitely presented graded `R[U]`-module: generators with degrees and
/// homogeneous relations whose entries are polynomials in `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedUModule<R> {
    pub degrees: Vec<i64>,
    pub relations: Vec<Vec<UTerm<R>>>,
}

impl<R: Ring> GradedUModule<R> {
    /// Free module on generators in the given degrees.
    pub fn free(degrees: Vec<i64>) -> Self {
        GradedUModule {
            degrees,
            relations: Vec::new(),
        }
    }

    /// `R[U] / U^n` on a generator in `degree`.
    pub fn truncated(degree: i64, n: u32) -> Self {
        GradedUModule {
            degrees: vec![degree],
            relations: vec![vec![UTerm {
                generator: 0,
                power: n,
                coeff: R::one(),
            }]],
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let shift = self.degrees.len();
        let mut degrees = self.degrees.clone();
        degrees.extend(&other.degrees);
        let mut relations = self.relations.clone();
        relations.extend(other.relations.iter().map(|r| {
            r.iter()
                .map(|t| UTerm {
                    generator: t.generator + shift,
                    ..t.clone()
                })
                .collect()
        }));
        GradedUModule { degrees, relations }
    }

    /// Degree of a relation, or an error if its terms disagree.
    pub fn relation_degree(&self, index: usize) -> Result<Option<i64>> {
        let mut deg = None;
        for t in &self.relations[index] {
            if t.coeff.is_zero() {
                continue;
            }
            let g = *self
                .degrees
                .get(t.generator)
                .ok_or_else(|| Error::UnknownGenerator(format!("#{}", t.generator)))?;
            let d = g - 2 * i64::from(t.power);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(Error::NonHomogeneousRelation(index)),
                _ => {}
            }
        }
        Ok(deg)
    }
}

/// `M ⊗_{R[U]} R[U, U⁻¹]`: a 2-periodic module determined by its even and odd parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedModule<R> {
    pub even: HomologyGroup<R>,
    pub odd: HomologyGroup<R>,
}

impl<R: Ring> LocalizedModule<R> {
    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    /// The part in degree `n` (as a module over the base ring).
    pub fn in_degree(&self, n: i64) -> &HomologyGroup<R> {
        if n.rem_euclid(2) == 0 {
            &self.even
        } else {
            &self.odd
        }
    }
}

impl<R: Ring> fmt::Display for LocalizedModule<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "  even degrees: {} per degree", self.even)?;
        writeln!(f, "  odd degrees:  {} per degree", self.odd)
    }
}

/// Inverts `U`. Since `U` is a unit of degree −2, each generator can be moved
/// to degree 0 or 1, and each homogeneous relation becomes a relation with
/// coefficients in the base ring; the result is computed by Smith form there.
pub fn localize<R: Ring>(m: &GradedUModule<R>) -> Result<LocalizedModule<R>> {
    if !R::spec().admits_snf() || R::spec().laurent {
        return Err(Error::UnsupportedRing(R::spec()));
    }
    let mut parts = Vec::with_capacity(2);
    for parity in 0..2 {
        let gens: Vec<usize> = (0..m.degrees.len())
            .filter(|&g| m.degrees[g].rem_euclid(2) == parity)
            .collect();
        let mut columns = Vec::new();
        for r in 0..m.relations.len() {
            let Some(deg) = m.relation_degree(r)? else {
                continue;
            };
            if deg.rem_euclid(2) != parity {
                continue;
            }
            let mut col = vec![R::zero(); gens.len()];
            for t in &m.relations[r] {
                let k = gens.binary_search(&t.generator).expect("parity matches degree");
                col[k] = col[k].clone() + t.coeff.clone();
            }
            columns.push(col);
        }
        let rel = Matrix::from_columns(gens.len(), &columns);
        parts.push(group_from_blocks(gens.len(), Matrix::zeros(0, gens.len()), rel)?);
    }
    let odd = parts.pop().expect("two parities");
    let even = parts.pop().expect("two parities");
    Ok(LocalizedModule { even, odd })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Gf2;
    use num_bigint::BigInt;

    #[test]
    fn free_module_localizes_to_laurent_ring() {
        let l = localize(&GradedUModule::<BigInt>::free(vec![-2])).unwrap();
        assert_eq!(l.even.rank, 1);
        assert!(l.odd.is_zero());
    }

    #[test]
    fn u_torsion_dies() {
        for n in 1..=5 {
            assert!(localize(&GradedUModule::<Gf2>::truncated(0, n)).unwrap().is_zero());
        }
    }

    #[test]
    fn mixed_module_keeps_free_part() {
        let m = GradedUModule::<BigInt>::free(vec![0]).direct_sum(&GradedUModule::truncated(3, 3));
        let l = localize(&m).unwrap();
        assert_eq!(l.even.rank, 1);
        assert!(l.odd.is_zero());
    }

    #[test]
    fn integer_torsion_survives() {
        // generator in degree 1 with relation 2·e
        let m = GradedUModule {
            degrees: vec![1],
            relations: vec![vec![UTerm {
                generator: 0,
                power: 0,
                coeff: BigInt::from(2),
            }]],
        };
        let l = localize(&m).unwrap();
        assert_eq!(l.odd.torsion, vec![BigInt::from(2)]);
    }

    #[test]
    fn inhomogeneous_relation_is_rejected() {
        let m = GradedUModule {
            degrees: vec![0, 0],
            relations: vec![vec![
                UTerm {
                    generator: 0,
                    power: 0,
                    coeff: Gf2(true),
                },
                UTerm {
                    generator: 1,
                    power: 1,
                    coeff: Gf2(true),
                },
            ]],
        };
        assert_eq!(localize(&m), Err(Error::NonHomogeneousRelation(0)));
    }
}
