//! Complexes over `R[t, t⁻¹]` with `t` acting as a deck transformation of
//! degree `deg_t`, their cut-level flavors, and Laurent-coefficient homology.
//!
//! A generator `x` stands for its whole `t`-orbit; the lift `t^k·x` has degree
//! `|x| + k·deg_t`. A term `c·t^e` in the entry `x → y` means `∂x ∋ c·t^e·y`
//! and must satisfy `|y| + e·deg_t = |x| − 1`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::complex::chain_map::{ChainMap, MapSign};
use crate::complex::graded::{canonical_order, tensor_id, ComplexBuilder, Generator, GradedComplex};
use crate::complex::homology::{group_from_blocks, HomologyReport};
use crate::complex::les::{les_of_ses, LesReport};
use crate::equivariant::jones::Windowed;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::linalg::{Matrix, SparseMatrix};
use crate::ring::Ring;
use crate::window::DegreeWindow;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentComplex<R> {
    gens: Vec<Generator>,
    index: HashMap<String, usize>,
    deg_t: i64,
    diff: SparseMatrix<LaurentPoly<R>>,
}

/// Which `t`-power sits immediately below the cut: the minus flavor is spanned
/// by `t^k·x` with `k ≥ offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CutLevel {
    pub offset: i64,
}

impl Default for CutLevel {
    fn default() -> Self {
        CutLevel { offset: 1 }
    }
}

/// Entries with negative `t`-exponents, as `(from, to, exponent)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiPositivity {
    pub violations: Vec<(String, String, i64)>,
}

impl SemiPositivity {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn make_laurent<R: Ring, S: AsRef<str>>(
    gens: Vec<Generator>,
    entries: impl IntoIterator<Item = (S, S, LaurentPoly<R>)>,
    deg_t: i64,
) -> Result<LaurentComplex<R>> {
    LaurentComplex::new(gens, entries, deg_t)
}

pub fn slice_id(x: &str, k: i64) -> String {
    format!("t^{k}·{x}")
}

impl<R: Ring> LaurentComplex<R> {
    /// `deg_t` must be even and non-positive.
    pub fn new<S: AsRef<str>>(
        gens: Vec<Generator>,
        entries: impl IntoIterator<Item = (S, S, LaurentPoly<R>)>,
        deg_t: i64,
    ) -> Result<Self> {
        if deg_t > 0 || deg_t % 2 != 0 {
            return Err(Error::UnsupportedDeckDegree(deg_t));
        }
        let (gens, index) = canonical_order(gens)?;
        let n = gens.len();
        let mut diff = SparseMatrix::new(n, n);
        for (from, to, p) in entries {
            let (from, to) = (from.as_ref(), to.as_ref());
            let i = *index
                .get(from)
                .ok_or_else(|| Error::UnknownGenerator(from.to_string()))?;
            let j = *index
                .get(to)
                .ok_or_else(|| Error::UnknownGenerator(to.to_string()))?;
            for (e, _) in p.terms() {
                if gens[j].degree + e * deg_t != gens[i].degree - 1 {
                    return Err(Error::DegreeViolation {
                        from: from.to_string(),
                        to: to.to_string(),
                        detail: format!(
                            "term t^{e} sends degree {} to {} (deg t = {deg_t})",
                            gens[i].degree,
                            gens[j].degree + e * deg_t
                        ),
                    });
                }
            }
            diff.add_to(i, j, p);
        }
        let sq = diff.mul(&diff);
        if let Some(x) = (0..n).find(|&i| sq.row(i).next().is_some()) {
            return Err(Error::NotADifferential(gens[x].id.clone()));
        }
        Ok(LaurentComplex {
            gens,
            index,
            deg_t,
            diff,
        })
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

    pub fn deg_t(&self) -> i64 {
        self.deg_t
    }

    pub fn diff(&self) -> &SparseMatrix<LaurentPoly<R>> {
        &self.diff
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Entries `(from, to, poly)` in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (&str, &str, &LaurentPoly<R>)> + '_ {
        self.diff
            .iter()
            .map(|(i, j, p)| (self.gens[i].id.as_str(), self.gens[j].id.as_str(), p))
    }

    pub fn check_semipositive(&self) -> SemiPositivity {
        let violations = self
            .entries()
            .flat_map(|(a, b, p)| {
                p.terms()
                    .filter(|(e, _)| *e < 0)
                    .map(move |(e, _)| (a.to_string(), b.to_string(), e))
            })
            .collect();
        SemiPositivity { violations }
    }

    fn require_semipositive(&self) -> Result<()> {
        let sp = self.check_semipositive();
        match sp.violations.first() {
            None => Ok(()),
            Some((a, b, e)) => Err(Error::SemiPositivityRequired(format!("{a} -> {b} has t^{e}"))),
        }
    }

    fn window_for(&self, window: DegreeWindow) -> Result<DegreeWindow> {
        if self.deg_t == 0 {
            return Err(Error::UnsupportedDeckDegree(0));
        }
        DegreeWindow::new(window.lo, window.hi)
    }

    /// Lifts `t^k·x` with `keep(k)` and degree in the window, with the induced
    /// (sub- or quotient) differential.
    fn materialize(&self, window: DegreeWindow, keep: impl Fn(i64) -> bool, constant_only: bool) -> Result<GradedComplex<R>> {
        let mut b = ComplexBuilder::new();
        let lifts = |i: usize| {
            window
                .exponents(self.gens[i].degree, self.deg_t)
                .filter(|&k| keep(k))
                .collect::<Vec<_>>()
        };
        for (i, g) in self.gens.iter().enumerate() {
            for k in lifts(i) {
                b.generator(slice_id(&g.id, k), g.degree + k * self.deg_t);
            }
        }
        for (i, j, p) in self.diff.iter() {
            for k in lifts(i) {
                for (e, c) in p.terms() {
                    if constant_only && e != 0 {
                        continue;
                    }
                    let target = k + e;
                    if keep(target) && window.contains(self.gens[j].degree + target * self.deg_t) {
                        b.entry(slice_id(&self.gens[i].id, k), slice_id(&self.gens[j].id, target), c.clone());
                    }
                }
            }
        }
        b.build()
    }

    /// All lifts in the window.
    pub fn full_complex(&self, window: DegreeWindow) -> Result<Windowed<R>> {
        let window = self.window_for(window)?;
        Ok(Windowed {
            complex: Arc::new(self.materialize(window, |_| true, false)?),
            window,
        })
    }

    /// The subcomplex spanned by `t^k·x`, `k ≥ offset`.
    pub fn minus_complex(&self, cut: CutLevel, window: DegreeWindow) -> Result<Windowed<R>> {
        self.require_semipositive()?;
        let window = self.window_for(window)?;
        Ok(Windowed {
            complex: Arc::new(self.materialize(window, |k| k >= cut.offset, false)?),
            window,
        })
    }

    /// The quotient by the minus subcomplex, spanned by `t^k·x`, `k < offset`.
    pub fn plus_complex(&self, cut: CutLevel, window: DegreeWindow) -> Result<Windowed<R>> {
        self.require_semipositive()?;
        let window = self.window_for(window)?;
        Ok(Windowed {
            complex: Arc::new(self.materialize(window, |k| k < cut.offset, false)?),
            window,
        })
    }

    /// `minus / t·minus`: the slice `k = offset` with the `t⁰` part of `∂`.
    pub fn hat_complex(&self, cut: CutLevel) -> Result<GradedComplex<R>> {
        self.require_semipositive()?;
        let mut b = ComplexBuilder::new();
        for g in &self.gens {
            b.generator(slice_id(&g.id, cut.offset), g.degree + cut.offset * self.deg_t);
        }
        for (i, j, p) in self.diff.iter() {
            let c = p.coeff(0);
            b.entry(
                slice_id(&self.gens[i].id, cut.offset),
                slice_id(&self.gens[j].id, cut.offset),
                c,
            );
        }
        b.build()
    }

    /// The hat complex materialized through the window (for sequences with windowed terms).
    fn hat_in_window(&self, cut: CutLevel, window: DegreeWindow) -> Result<GradedComplex<R>> {
        self.materialize(window, |k| k == cut.offset, true)
    }
}

impl<R: Ring> fmt::Display for LaurentComplex<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Laurent complex over {} with {} orbit generators, deg t = {}",
            R::spec(),
            self.len(),
            self.deg_t
        )?;
        for (i, g) in self.gens.iter().enumerate() {
            let terms: Vec<String> = self
                .diff
                .row(i)
                .map(|(j, p)| format!("({})·{}", p, self.gens[j].id))
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

/// `0 → minus → full → plus → 0` in a window.
#[derive(Clone, Debug)]
pub struct PairSequence<R> {
    pub minus: Windowed<R>,
    pub full: Windowed<R>,
    pub plus: Windowed<R>,
    pub les: LesReport<R>,
}

fn identity_on_ids<R: Ring>(s: &Arc<GradedComplex<R>>, t: &Arc<GradedComplex<R>>) -> Result<ChainMap<R>> {
    ChainMap::from_fn(s.clone(), t.clone(), 0, MapSign::Commute, |id| vec![(id.to_string(), R::one())])
}

pub fn pair_les<R: Ring>(l: &LaurentComplex<R>, cut: CutLevel, window: DegreeWindow) -> Result<PairSequence<R>> {
    let minus = l.minus_complex(cut, window)?;
    let full = l.full_complex(window)?;
    let plus = l.plus_complex(cut, window)?;
    let i = identity_on_ids(&minus.complex, &full.complex)?;
    let p = identity_on_ids(&full.complex, &plus.complex)?;
    let les = les_of_ses(&i, &p)?;
    Ok(PairSequence { minus, full, plus, les })
}

/// `0 → minus_{c+1} → minus_c → hat_c → 0`, the one-slice difference between
/// adjacent cut levels.
pub fn slice_sequence<R: Ring>(l: &LaurentComplex<R>, cut: CutLevel, window: DegreeWindow) -> Result<LesReport<R>> {
    let next = CutLevel {
        offset: cut.offset + 1,
    };
    let upper = l.minus_complex(next, window)?;
    let lower = l.minus_complex(cut, window)?;
    let hat = Arc::new(l.hat_in_window(cut, lower.window)?);
    let i = identity_on_ids(&upper.complex, &lower.complex)?;
    let p = identity_on_ids(&lower.complex, &hat)?;
    les_of_ses(&i, &p)
}

/// Homology over `R[t, t⁻¹]` (a PID when `R` is a field).
///
/// Multiplication by `t` identifies degrees modulo `|deg_t|`, so for
/// `deg_t ≠ 0` the report is keyed by the residue `0 ≤ r < |deg_t|`.
pub fn laurent_homology<R: Ring>(l: &LaurentComplex<R>) -> Result<HomologyReport<LaurentPoly<R>>> {
    if !LaurentPoly::<R>::spec().admits_snf() {
        return Err(Error::UnsupportedRing(LaurentPoly::<R>::spec()));
    }
    let m = -l.deg_t;
    let mut groups = BTreeMap::new();
    if m == 0 {
        let c = GradedComplex::new(
            l.gens.clone(),
            l.entries().map(|(a, b, p)| (a, b, p.clone())),
        )?;
        return crate::complex::homology::homology(&c);
    }
    // lift each orbit to the representative of degree |x| mod m
    let residue = |g: &Generator| g.degree.rem_euclid(m);
    let lift = |g: &Generator| (g.degree - residue(g)) / m;
    let mut by_residue: Vec<Vec<usize>> = vec![Vec::new(); m as usize];
    for (i, g) in l.gens.iter().enumerate() {
        by_residue[residue(g) as usize].push(i);
    }
    let position: HashMap<usize, usize> = by_residue
        .iter()
        .flat_map(|v| v.iter().enumerate().map(|(p, &i)| (i, p)))
        .collect();
    // out[r]: C_r → C_{r-1 mod m}, column convention
    let mut out: Vec<Matrix<LaurentPoly<R>>> = (0..m as usize)
        .map(|r| {
            let below = (r + m as usize - 1) % m as usize;
            Matrix::zeros(by_residue[below].len(), by_residue[r].len())
        })
        .collect();
    for (i, j, p) in l.diff.iter() {
        let (gi, gj) = (&l.gens[i], &l.gens[j]);
        let r = residue(gi) as usize;
        out[r][(position[&j], position[&i])] = p.shift(lift(gi) - lift(gj));
    }
    for r in 0..m as usize {
        let next = (r + 1) % m as usize;
        let g = group_from_blocks(by_residue[r].len(), out[r].clone(), out[next].clone())?;
        if !g.is_zero() {
            groups.insert(r as i64, g);
        }
    }
    Ok(HomologyReport { groups })
}

/// `S_U` over the Laurent ring with `U = t`: generators `x⊗1`, `x⊗y`, and
/// `∂(x⊗1) = ∂x⊗1 + t·x⊗y`, `∂(x⊗y) = −∂x⊗y`.
pub fn su_of_laurent<R: Ring>(l: &LaurentComplex<R>) -> Result<LaurentComplex<R>> {
    if l.deg_t != -2 {
        return Err(Error::UnsupportedDeckDegree(l.deg_t));
    }
    let mut gens = Vec::with_capacity(2 * l.len());
    for g in &l.gens {
        gens.push(Generator::new(tensor_id(&g.id, "1"), g.degree));
        gens.push(Generator::new(tensor_id(&g.id, "y"), g.degree + 1));
    }
    let mut entries = Vec::new();
    for (a, b, p) in l.entries() {
        entries.push((tensor_id(a, "1"), tensor_id(b, "1"), p.clone()));
        entries.push((tensor_id(a, "y"), tensor_id(b, "y"), -p.clone()));
    }
    for g in &l.gens {
        entries.push((tensor_id(&g.id, "1"), tensor_id(&g.id, "y"), LaurentPoly::t_pow(1)));
    }
    LaurentComplex::new(gens, entries, l.deg_t)
}

/// One orbit generator in `degree` with zero differential.
pub fn single_orbit<R: Ring>(degree: i64, deg_t: i64) -> Result<LaurentComplex<R>> {
    LaurentComplex::new(
        vec![Generator::new("x", degree)],
        Vec::<(&str, &str, LaurentPoly<R>)>::new(),
        deg_t,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::homology::homology;
    use crate::ring::Gf2;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn one_plus_t() -> LaurentPoly<Gf2> {
        LaurentPoly::from_terms([(0, Gf2(true)), (1, Gf2(true))])
    }

    fn pair() -> LaurentComplex<Gf2> {
        LaurentComplex::new(
            vec![Generator::new("a", 1), Generator::new("b", 0)],
            vec![("a", "b", one_plus_t())],
            0,
        )
        .unwrap()
    }

    fn w(lo: i64, hi: i64) -> DegreeWindow {
        DegreeWindow::new(lo, hi).unwrap()
    }

    #[test]
    fn degree_inconsistent_term_is_rejected() {
        let err = LaurentComplex::new(
            vec![Generator::new("a", 1), Generator::new("b", 0)],
            vec![("a", "b", LaurentPoly::<Gf2>::t_pow(-1))],
            -2,
        )
        .unwrap_err();
        assert!(matches!(err, Error::DegreeViolation { .. }));
        assert_eq!(
            single_orbit::<Gf2>(0, 3).unwrap_err(),
            Error::UnsupportedDeckDegree(3)
        );
    }

    #[test]
    fn semipositivity_reports_violations() {
        assert!(pair().check_semipositive().is_ok());
        let l = LaurentComplex::new(
            vec![Generator::new("a", 1), Generator::new("b", 0)],
            vec![("a", "b", LaurentPoly::<Gf2>::t_pow(-1))],
            0,
        )
        .unwrap();
        assert_eq!(l.check_semipositive().violations, vec![("a".into(), "b".into(), -1)]);
        assert!(matches!(l.hat_complex(CutLevel::default()), Err(Error::SemiPositivityRequired(_))));
    }

    #[test]
    fn single_orbit_flavors() {
        let l = single_orbit::<BigInt>(0, -2).unwrap();
        let cut = CutLevel::default();
        let minus = l.minus_complex(cut, w(-12, 12)).unwrap().homology().unwrap();
        assert_eq!(minus.ranks().keys().copied().collect::<Vec<_>>(), vec![-10, -8, -6, -4, -2]);
        let plus = l.plus_complex(cut, w(-12, 12)).unwrap().homology().unwrap();
        assert_eq!(plus.ranks().keys().copied().collect::<Vec<_>>(), vec![0, 2, 4, 6, 8, 10]);
        let hat = homology(&l.hat_complex(cut).unwrap()).unwrap();
        assert_eq!(hat.ranks(), BTreeMap::from([(-2, 1)]));
        let les = pair_les(&l, cut, w(-12, 12)).unwrap().les;
        assert!(les.is_exact());
        assert!(les.connecting_is_zero());
    }

    #[test]
    fn hat_takes_the_constant_term() {
        let hat = pair().hat_complex(CutLevel::default()).unwrap();
        assert!(homology(&hat).unwrap().is_zero());
    }

    #[test]
    fn laurent_homology_examples() {
        let h = laurent_homology(&single_orbit::<Gf2>(0, -2).unwrap()).unwrap();
        assert_eq!(h.rank(0), 1);
        let h = laurent_homology(&pair()).unwrap();
        assert_eq!(h.rank(0), 0);
        assert_eq!(h.torsion(0), &[one_plus_t()]);
        assert!(!h.groups.contains_key(&1));
        // a(1) → t·b(2) with deg t = -2: the entry is a unit
        let cone = LaurentComplex::new(
            vec![Generator::new("a", 1), Generator::new("b", 2)],
            vec![("a", "b", LaurentPoly::<BigRational>::t_pow(1))],
            -2,
        )
        .unwrap();
        assert!(laurent_homology(&cone).unwrap().is_zero());
        assert_eq!(
            laurent_homology(&single_orbit::<BigInt>(0, -2).unwrap()).unwrap_err(),
            Error::UnsupportedRing(LaurentPoly::<BigInt>::spec())
        );
    }

    #[test]
    fn bundle_over_laurent_complex_is_acyclic() {
        let s = su_of_laurent(&single_orbit::<Gf2>(0, -2).unwrap()).unwrap();
        assert!(laurent_homology(&s).unwrap().is_zero());
    }

    #[test]
    fn slice_sequence_is_exact() {
        let l = LaurentComplex::new(
            vec![Generator::new("a", 1), Generator::new("b", 2)],
            vec![("a", "b", LaurentPoly::<BigInt>::t_pow(1))],
            -2,
        )
        .unwrap();
        let les = slice_sequence(&l, CutLevel::default(), w(-10, 10)).unwrap();
        assert!(les.is_exact());
    }

    #[test]
    fn zero_deck_degree_has_no_windowed_flavors() {
        assert_eq!(
            pair().minus_complex(CutLevel::default(), w(-4, 4)).unwrap_err(),
            Error::UnsupportedDeckDegree(0)
        );
    }
}
