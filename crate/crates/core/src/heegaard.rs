//! Generator combinatorics of Heegaard diagrams: intersection points of
//! `T_α` and `T_β` in the symmetric product, and their signed count.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;

use crate::complex::graded::Generator;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::linalg::{determinant, Matrix};
use crate::novikov::LaurentComplex;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionPoint {
    pub id: String,
    /// `+1` or `-1`.
    pub sign: i8,
}

/// Signed intersection points of `α_i ∩ β_j`, indices from 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeegaardDiagram {
    genus: usize,
    points: BTreeMap<(usize, usize), Vec<IntersectionPoint>>,
}

/// A permutation `σ` together with one point of each `α_i ∩ β_σ(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeegaardGenerator {
    pub sigma: Vec<usize>,
    pub points: Vec<String>,
    /// `sign(σ) · ∏ sign(point)`.
    pub sign: i64,
}

impl HeegaardGenerator {
    pub fn id(&self) -> String {
        self.points.join(",")
    }
}

impl fmt::Display for HeegaardGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sigma: Vec<String> = self.sigma.iter().map(|s| (s + 1).to_string()).collect();
        let sign = if self.sign > 0 { '+' } else { '-' };
        write!(f, "{{{}}} sigma=({}) {}", self.id(), sigma.join(" "), sign)
    }
}

impl HeegaardDiagram {
    /// `points` holds `(i, j, id, sign)` for `α_i ∩ β_j`, indices from 0.
    pub fn new(genus: usize, points: Vec<(usize, usize, String, i8)>) -> Result<Self> {
        if genus == 0 {
            return Err(Error::DimensionMismatch("genus must be at least 1".into()));
        }
        let mut seen = BTreeSet::new();
        let mut map: BTreeMap<(usize, usize), Vec<IntersectionPoint>> = BTreeMap::new();
        for (i, j, id, sign) in points {
            if i >= genus || j >= genus {
                return Err(Error::DimensionMismatch(format!(
                    "point {id} lies on curves ({}, {}) beyond genus {genus}",
                    i + 1,
                    j + 1
                )));
            }
            if sign != 1 && sign != -1 {
                return Err(Error::DimensionMismatch(format!("point {id} has sign {sign}")));
            }
            if !seen.insert(id.clone()) {
                return Err(Error::DuplicateGenerator(id));
            }
            map.entry((i, j)).or_default().push(IntersectionPoint { id, sign });
        }
        for list in map.values_mut() {
            list.sort_by(|a, b| a.id.cmp(&b.id));
        }
        Ok(HeegaardDiagram { genus, points: map })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn points(&self, i: usize, j: usize) -> &[IntersectionPoint] {
        self.points.get(&(i, j)).map_or(&[], Vec::as_slice)
    }

    /// All `(i, j, point)` in canonical order.
    pub fn all_points(&self) -> impl Iterator<Item = (usize, usize, &IntersectionPoint)> + '_ {
        self.points
            .iter()
            .flat_map(|(&(i, j), v)| v.iter().map(move |p| (i, j, p)))
    }

    /// `#(α_i ∩ β_j)` counted with signs.
    pub fn count_matrix(&self) -> Matrix<BigInt> {
        let mut m = Matrix::zeros(self.genus, self.genus);
        for (&(i, j), v) in &self.points {
            let s: i64 = v.iter().map(|p| i64::from(p.sign)).sum();
            m[(i, j)] = BigInt::from(s);
        }
        m
    }
}

fn permutation_sign(sigma: &[usize]) -> i64 {
    let inversions = (0..sigma.len())
        .flat_map(|a| (a + 1..sigma.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| sigma[a] > sigma[b])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Lexicographic in `σ`, then in the chosen point ids.
pub fn enumerate_generators(d: &HeegaardDiagram) -> Vec<HeegaardGenerator> {
    let mut out = Vec::new();
    for sigma in (0..d.genus).permutations(d.genus) {
        let lists: Vec<&[IntersectionPoint]> = (0..d.genus).map(|i| d.points(i, sigma[i])).collect();
        if lists.iter().any(|l| l.is_empty()) {
            continue;
        }
        let psign = permutation_sign(&sigma);
        for choice in lists.iter().map(|l| l.iter()).multi_cartesian_product() {
            let sign = psign * choice.iter().map(|p| i64::from(p.sign)).product::<i64>();
            out.push(HeegaardGenerator {
                sigma: sigma.clone(),
                points: choice.iter().map(|p| p.id.clone()).collect(),
                sign,
            });
        }
    }
    out
}

/// The signed generator count and the determinant of the count matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedCount {
    pub generators: usize,
    pub enumerated: BigInt,
    pub determinant: BigInt,
}

/// Sums the generator signs and checks the total against `det(#(α_i ∩ β_j))`.
pub fn signed_count(d: &HeegaardDiagram) -> Result<SignedCount> {
    let gens = enumerate_generators(d);
    let enumerated: BigInt = gens.iter().map(|g| BigInt::from(g.sign)).sum();
    let det = determinant(&d.count_matrix());
    if enumerated != det {
        return Err(Error::InternalMismatch(format!(
            "enumeration gives {enumerated}, determinant gives {det}"
        )));
    }
    Ok(SignedCount {
        generators: gens.len(),
        enumerated,
        determinant: det,
    })
}

/// The chain group of the diagram as a Laurent complex with zero differential:
/// one `t`-orbit per generator, in the supplied degrees.
pub fn formal_cf_module<R: Ring>(d: &HeegaardDiagram, degrees: &[i64], deg_t: i64) -> Result<LaurentComplex<R>> {
    let gens = enumerate_generators(d);
    if degrees.len() != gens.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} degrees supplied for {} generators",
            degrees.len(),
            gens.len()
        )));
    }
    let gens = gens
        .iter()
        .zip(degrees)
        .map(|(g, &deg)| Generator::new(g.id(), deg))
        .collect();
    LaurentComplex::new(gens, Vec::<(&str, &str, LaurentPoly<R>)>::new(), deg_t)
}

/// Genus one, `p` positive points `p1..pp` on `α ∩ β`.
pub fn lens_space_diagram(p: usize) -> HeegaardDiagram {
    HeegaardDiagram::new(1, (1..=p).map(|k| (0, 0, format!("p{k}"), 1)).collect())
        .expect("valid genus one diagram")
}

/// Genus one with disjoint `α` and `β`.
pub fn s1xs2_diagram() -> HeegaardDiagram {
    HeegaardDiagram::new(1, Vec::new()).expect("valid genus one diagram")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::homology::homology;
    use crate::novikov::CutLevel;
    use crate::ring::Gf2;

    #[test]
    fn genus_one_counts() {
        let l5 = lens_space_diagram(5);
        assert_eq!(enumerate_generators(&l5).len(), 5);
        assert_eq!(signed_count(&l5).unwrap().enumerated, BigInt::from(5));
        assert!(enumerate_generators(&s1xs2_diagram()).is_empty());
        assert_eq!(signed_count(&s1xs2_diagram()).unwrap().determinant, BigInt::from(0));
    }

    #[test]
    fn diagonal_genus_two() {
        let d = HeegaardDiagram::new(2, vec![(0, 0, "a".into(), 1), (1, 1, "b".into(), 1)]).unwrap();
        let gens = enumerate_generators(&d);
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].sigma, vec![0, 1]);
        assert_eq!(gens[0].id(), "a,b");
    }

    #[test]
    fn off_diagonal_points_carry_the_permutation_sign() {
        let d = HeegaardDiagram::new(
            2,
            vec![
                (0, 0, "a".into(), 1),
                (1, 1, "b".into(), 1),
                (0, 1, "c".into(), 1),
                (1, 0, "e".into(), -1),
            ],
        )
        .unwrap();
        // det [[1, 1], [-1, 1]] = 2
        let c = signed_count(&d).unwrap();
        assert_eq!(c.generators, 2);
        assert_eq!(c.enumerated, BigInt::from(2));
    }

    #[test]
    fn invalid_diagrams_are_rejected() {
        assert!(HeegaardDiagram::new(0, vec![]).is_err());
        assert!(HeegaardDiagram::new(1, vec![(0, 1, "a".into(), 1)]).is_err());
        assert_eq!(
            HeegaardDiagram::new(1, vec![(0, 0, "a".into(), 1), (0, 0, "a".into(), -1)]),
            Err(Error::DuplicateGenerator("a".into()))
        );
    }

    #[test]
    fn sphere_diagram_gives_single_orbit() {
        let l = formal_cf_module::<Gf2>(&lens_space_diagram(1), &[0], -2).unwrap();
        assert_eq!(l.len(), 1);
        let hat = homology(&l.hat_complex(CutLevel::default()).unwrap()).unwrap();
        assert_eq!(hat.rank(-2), 1);
        assert!(formal_cf_module::<Gf2>(&lens_space_diagram(2), &[0], -2).is_err());
    }
}
