use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseMatrix};
use crate::ring::{Ring, RingSpec};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub id: String,
    pub degree: i64,
}

impl Generator {
    pub fn new(id: impl Into<String>, degree: i64) -> Self {
        Generator {
            id: id.into(),
            degree,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.id, self.degree)
    }
}

/// Sorts generators canonically by `(degree, id)` and rejects duplicate ids.
pub(crate) fn canonical_order(mut gens: Vec<Generator>) -> Result<(Vec<Generator>, HashMap<String, usize>)> {
    gens.sort_by(|a, b| (a.degree, &a.id).cmp(&(b.degree, &b.id)));
    let mut index = HashMap::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        if index.insert(g.id.clone(), i).is_some() {
            return Err(Error::DuplicateGenerator(g.id.clone()));
        }
    }
    Ok((gens, index))
}

pub(crate) fn degree_ranges(gens: &[Generator]) -> BTreeMap<i64, Range<usize>> {
    let mut ranges: BTreeMap<i64, Range<usize>> = BTreeMap::new();
    for (i, g) in gens.iter().enumerate() {
        ranges
            .entry(g.degree)
            .and_modify(|r| r.end = i + 1)
            .or_insert(i..i + 1);
    }
    ranges
}

/// A finite free graded chain complex.
///
/// Generators are kept in canonical `(degree, id)` order. The differential is
/// stored with rows indexed by sources: entry `(x, y)` is the coefficient of
/// `y` in `∂x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex<R> {
    gens: Vec<Generator>,
    index: HashMap<String, usize>,
    by_degree: BTreeMap<i64, Range<usize>>,
    diff: SparseMatrix<R>,
}

impl<R: Ring> GradedComplex<R> {
    /// Validates degrees and `∂² = 0`.
    pub fn new<S: AsRef<str>>(
        gens: Vec<Generator>,
        entries: impl IntoIterator<Item = (S, S, R)>,
    ) -> Result<Self> {
        let (gens, index) = canonical_order(gens)?;
        let n = gens.len();
        let mut diff = SparseMatrix::new(n, n);
        for (from, to, c) in entries {
            let (from, to) = (from.as_ref(), to.as_ref());
            let i = *index
                .get(from)
                .ok_or_else(|| Error::UnknownGenerator(from.to_string()))?;
            let j = *index
                .get(to)
                .ok_or_else(|| Error::UnknownGenerator(to.to_string()))?;
            if c.is_zero() {
                continue;
            }
            if gens[j].degree != gens[i].degree - 1 {
                return Err(Error::DegreeViolation {
                    from: from.to_string(),
                    to: to.to_string(),
                    detail: format!(
                        "differential must lower degree by 1 ({} -> {})",
                        gens[i].degree, gens[j].degree
                    ),
                });
            }
            diff.add_to(i, j, c);
        }
        Self::from_sorted(gens, index, diff)
    }

    pub(crate) fn from_sorted(
        gens: Vec<Generator>,
        index: HashMap<String, usize>,
        diff: SparseMatrix<R>,
    ) -> Result<Self> {
        let c = GradedComplex {
            by_degree: degree_ranges(&gens),
            gens,
            index,
            diff,
        };
        if let Some(x) = c.square_witness() {
            return Err(Error::NotADifferential(c.gens[x].id.clone()));
        }
        Ok(c)
    }

    fn square_witness(&self) -> Option<usize> {
        let sq = self.diff.mul(&self.diff);
        (0..self.len()).find(|&i| sq.row(i).next().is_some())
    }

    pub fn empty() -> Self {
        GradedComplex {
            gens: Vec::new(),
            index: HashMap::new(),
            by_degree: BTreeMap::new(),
            diff: SparseMatrix::new(0, 0),
        }
    }

    pub fn ring(&self) -> RingSpec {
        R::spec()
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn generator(&self, i: usize) -> &Generator {
        &self.gens[i]
    }

    pub fn diff(&self) -> &SparseMatrix<R> {
        &self.diff
    }

    /// Distinct degrees that carry generators, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.by_degree.keys().copied()
    }

    pub fn degree_bounds(&self) -> Option<(i64, i64)> {
        Some((*self.by_degree.keys().next()?, *self.by_degree.keys().next_back()?))
    }

    /// Index range of the generators in degree `n` (empty if none).
    pub fn range(&self, n: i64) -> Range<usize> {
        self.by_degree.get(&n).cloned().unwrap_or_else(|| {
            // an empty range positioned where degree n would sit
            let at = self.gens.partition_point(|g| g.degree < n);
            at..at
        })
    }

    pub fn dim(&self, n: i64) -> usize {
        self.range(n).len()
    }

    /// `∂_n : C_n → C_{n-1}` as a matrix acting on column vectors.
    pub fn boundary_block(&self, n: i64) -> Matrix<R> {
        self.diff.block(self.range(n), self.range(n - 1)).transpose()
    }

    /// `∂` applied to a full coordinate vector.
    pub fn apply_diff(&self, v: &[R]) -> Vec<R> {
        self.diff.vec_mul(v)
    }

    /// Generator id lookup in the canonical order.
    pub fn ids(&self) -> impl Iterator<Item = &str> + '_ {
        self.gens.iter().map(|g| g.id.as_str())
    }

    /// Degrees shifted by `k`; the differential is negated for odd `k`.
    pub fn shift(&self, k: i64) -> Self {
        let gens: Vec<Generator> = self
            .gens
            .iter()
            .map(|g| Generator::new(g.id.clone(), g.degree + k))
            .collect();
        let diff = if k.rem_euclid(2) == 1 {
            self.diff.neg()
        } else {
            self.diff.clone()
        };
        GradedComplex {
            by_degree: degree_ranges(&gens),
            index: self.index.clone(),
            gens,
            diff,
        }
    }

    /// The same complex with every generator id rewritten by `f`.
    pub fn relabel(&self, f: impl Fn(&str) -> String) -> Result<Self> {
        let mut b = ComplexBuilder::new();
        for g in &self.gens {
            b.generator(f(&g.id), g.degree);
        }
        for (i, j, v) in self.diff.iter() {
            b.entry(f(&self.gens[i].id), f(&self.gens[j].id), v.clone());
        }
        b.build()
    }

    /// Subquotient spanned by the generators with degree in `[lo, hi]`.
    pub fn truncate(&self, lo: i64, hi: i64) -> Self {
        let keep: Vec<usize> = (0..self.len())
            .filter(|&i| (lo..=hi).contains(&self.gens[i].degree))
            .collect();
        let mut pos = HashMap::new();
        for (new, &old) in keep.iter().enumerate() {
            pos.insert(old, new);
        }
        let gens: Vec<Generator> = keep.iter().map(|&i| self.gens[i].clone()).collect();
        let mut diff = SparseMatrix::new(keep.len(), keep.len());
        for (new, &old) in keep.iter().enumerate() {
            for (j, v) in self.diff.row(old) {
                if let Some(&nj) = pos.get(&j) {
                    diff.add_to(new, nj, v.clone());
                }
            }
        }
        let index = gens
            .iter()
            .enumerate()
            .map(|(i, g)| (g.id.clone(), i))
            .collect();
        GradedComplex {
            by_degree: degree_ranges(&gens),
            gens,
            index,
            diff,
        }
    }
}

/// Accumulates generators and differential entries by id, then validates.
#[derive(Clone, Debug)]
pub struct ComplexBuilder<R> {
    gens: Vec<Generator>,
    entries: Vec<(String, String, R)>,
}

impl<R: Ring> Default for ComplexBuilder<R> {
    fn default() -> Self {
        Self::new()
    }
}

impl<R: Ring> ComplexBuilder<R> {
    pub fn new() -> Self {
        ComplexBuilder {
            gens: Vec::new(),
            entries: Vec::new(),
        }
    }

    pub fn generator(&mut self, id: impl Into<String>, degree: i64) -> &mut Self {
        self.gens.push(Generator::new(id, degree));
        self
    }

    pub fn entry(&mut self, from: impl Into<String>, to: impl Into<String>, c: R) -> &mut Self {
        if !c.is_zero() {
            self.entries.push((from.into(), to.into(), c));
        }
        self
    }

    pub fn build(&self) -> Result<GradedComplex<R>> {
        GradedComplex::new(
            self.gens.clone(),
            self.entries
                .iter()
                .map(|(a, b, c)| (a.as_str(), b.as_str(), c.clone())),
        )
    }
}

/// `make_complex`: validated construction from ids, degrees, and `(from, to, coeff)` entries.
pub fn make_complex<R: Ring, S: AsRef<str>>(
    gens: Vec<Generator>,
    entries: impl IntoIterator<Item = (S, S, R)>,
) -> Result<GradedComplex<R>> {
    GradedComplex::new(gens, entries)
}

pub(crate) fn sign<R: Ring>(odd: bool) -> R {
    if odd {
        -R::one()
    } else {
        R::one()
    }
}

pub fn tensor_id(x: &str, y: &str) -> String {
    format!("{x}⊗{y}")
}

/// `C ⊗ D` with `∂(x⊗y) = ∂x⊗y + (-1)^{|x|} x⊗∂y`.
pub fn tensor_product<R: Ring>(c: &GradedComplex<R>, d: &GradedComplex<R>) -> Result<GradedComplex<R>> {
    let mut b = ComplexBuilder::new();
    for x in c.gens() {
        for y in d.gens() {
            b.generator(tensor_id(&x.id, &y.id), x.degree + y.degree);
        }
    }
    for (i, x) in c.gens().iter().enumerate() {
        for y in d.gens() {
            let src = tensor_id(&x.id, &y.id);
            for (k, v) in c.diff().row(i) {
                b.entry(src.clone(), tensor_id(&c.gens()[k].id, &y.id), v.clone());
            }
            let s: R = sign(x.degree.rem_euclid(2) == 1);
            let j = d.index_of(&y.id).expect("own generator");
            for (k, v) in d.diff().row(j) {
                b.entry(
                    src.clone(),
                    tensor_id(&x.id, &d.gens()[k].id),
                    s.clone() * v.clone(),
                );
            }
        }
    }
    b.build()
}

impl<R: Ring> fmt::Display for GradedComplex<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "complex over {} with {} generators", R::spec(), self.len())?;
        for (i, g) in self.gens.iter().enumerate() {
            let terms: Vec<String> = self
                .diff
                .row(i)
                .map(|(j, v)| format!("{}·{}", v, self.gens[j].id))
                .collect();
            if terms.is_empty() {
                writeln!(f, "  d {} = 0", g)?;
            } else {
                writeln!(f, "  d {} = {}", g, terms.join(" + "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Gf2;
    use num_bigint::BigInt;

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn sphere_complex_is_valid() {
        let c = GradedComplex::<BigInt>::new(
            vec![Generator::new("e3", 3), Generator::new("e0", 0)],
            Vec::<(&str, &str, BigInt)>::new(),
        )
        .unwrap();
        assert_eq!(c.gens()[0].id, "e0");
        assert_eq!(c.dim(3), 1);
    }

    #[test]
    fn non_differential_is_rejected_with_witness() {
        let err = GradedComplex::<BigInt>::new(
            vec![
                Generator::new("a", 2),
                Generator::new("b", 1),
                Generator::new("c", 0),
            ],
            vec![("a", "b", z(1)), ("b", "c", z(1))],
        )
        .unwrap_err();
        assert_eq!(err, Error::NotADifferential("a".into()));
    }

    #[test]
    fn degree_violation_is_rejected() {
        let err = GradedComplex::<Gf2>::new(
            vec![Generator::new("a", 2), Generator::new("b", 0)],
            vec![("a", "b", Gf2(true))],
        )
        .unwrap_err();
        assert!(matches!(err, Error::DegreeViolation { .. }));
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let err = GradedComplex::<Gf2>::new(
            vec![Generator::new("a", 0), Generator::new("a", 1)],
            Vec::<(&str, &str, Gf2)>::new(),
        )
        .unwrap_err();
        assert_eq!(err, Error::DuplicateGenerator("a".into()));
    }

    #[test]
    fn shift_round_trips() {
        let c = GradedComplex::<BigInt>::new(
            vec![Generator::new("a", 1), Generator::new("b", 0)],
            vec![("a", "b", z(2))],
        )
        .unwrap();
        assert_eq!(c.shift(0), c);
        assert_eq!(c.shift(3).shift(-3), c);
        assert_eq!(c.shift(1).diff().get(0, 0), None);
        assert_eq!(c.shift(1).diff().get(1, 0), Some(&z(-2)));
    }
}
