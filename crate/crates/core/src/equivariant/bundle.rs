//! U-complexes, J-complexes and the algebraic circle bundle `S_U(C)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::complex::chain_map::{matrices_equal, ChainMap, MapSign};
use crate::complex::graded::{tensor_id, ComplexBuilder, GradedComplex};
use crate::complex::homology::{HomologyModel, HomologyReport};
use crate::complex::les::{les_of_ses, LesReport};
use crate::error::{Error, Result};
use crate::linalg::{rank, Matrix, SparseMatrix};
use crate::ring::Ring;

/// A complex with a degree −2 chain endomorphism `U`.
#[derive(Clone, Debug)]
pub struct UComplex<R> {
    base: Arc<GradedComplex<R>>,
    u: ChainMap<R>,
}

impl<R: Ring> UComplex<R> {
    pub fn new(u: ChainMap<R>) -> Result<Self> {
        if u.source() != u.target() {
            return Err(Error::DimensionMismatch("U must be an endomorphism".into()));
        }
        if u.degree() != -2 || u.sign() != MapSign::Commute {
            return Err(Error::DimensionMismatch("U must be a commuting map of degree -2".into()));
        }
        u.ensure_chain_map()?;
        Ok(UComplex {
            base: u.source_arc(),
            u,
        })
    }

    pub fn from_entries<S: AsRef<str>>(
        base: GradedComplex<R>,
        entries: impl IntoIterator<Item = (S, S, R)>,
    ) -> Result<Self> {
        let base = Arc::new(base);
        Self::new(ChainMap::from_entries(base.clone(), base, -2, MapSign::Commute, entries)?)
    }

    /// `U = 0`.
    pub fn trivial(base: GradedComplex<R>) -> Self {
        let base = Arc::new(base);
        UComplex {
            u: ChainMap::zero(base.clone(), base.clone(), -2, MapSign::Commute),
            base,
        }
    }

    pub fn base(&self) -> &GradedComplex<R> {
        &self.base
    }

    pub fn base_arc(&self) -> Arc<GradedComplex<R>> {
        self.base.clone()
    }

    pub fn u(&self) -> &ChainMap<R> {
        &self.u
    }
}

/// A complex with a degree +1 map `J` satisfying `∂J + J∂ = 0` and `J² = 0`.
#[derive(Clone, Debug)]
pub struct JComplex<R> {
    base: Arc<GradedComplex<R>>,
    j: ChainMap<R>,
}

impl<R: Ring> JComplex<R> {
    pub fn new(j: ChainMap<R>) -> Result<Self> {
        if j.source() != j.target() {
            return Err(Error::DimensionMismatch("J must be an endomorphism".into()));
        }
        if j.degree() != 1 || j.sign() != MapSign::Anticommute {
            return Err(Error::DimensionMismatch("J must be an anticommuting map of degree 1".into()));
        }
        j.ensure_chain_map()?;
        let sq = j.matrix().mul(j.matrix());
        if let Some((x, _, _)) = sq.iter().next() {
            return Err(Error::JSquareNonzero(j.source().generator(x).id.clone()));
        }
        Ok(JComplex {
            base: j.source_arc(),
            j,
        })
    }

    pub fn from_entries<S: AsRef<str>>(
        base: GradedComplex<R>,
        entries: impl IntoIterator<Item = (S, S, R)>,
    ) -> Result<Self> {
        let base = Arc::new(base);
        Self::new(ChainMap::from_entries(base.clone(), base, 1, MapSign::Anticommute, entries)?)
    }

    pub fn base(&self) -> &GradedComplex<R> {
        &self.base
    }

    pub fn base_arc(&self) -> Arc<GradedComplex<R>> {
        self.base.clone()
    }

    pub fn j(&self) -> &ChainMap<R> {
        &self.j
    }
}

pub(crate) fn one_id(x: &str) -> String {
    tensor_id(x, "1")
}

pub(crate) fn y_id(x: &str) -> String {
    tensor_id(x, "y")
}

/// `S_U(C) = C ⊗ R[y]/(y²)` with `∂(x⊗1) = ∂x⊗1 + Ux⊗y`, `∂(x⊗y) = -∂x⊗y`,
/// and `J` = multiplication by `y`.
pub fn s_bundle<R: Ring>(c: &UComplex<R>) -> Result<JComplex<R>> {
    let base = c.base();
    let mut b = ComplexBuilder::new();
    for g in base.gens() {
        b.generator(one_id(&g.id), g.degree);
        b.generator(y_id(&g.id), g.degree + 1);
    }
    for (i, j, v) in base.diff().iter() {
        let (x, z) = (&base.generator(i).id, &base.generator(j).id);
        b.entry(one_id(x), one_id(z), v.clone());
        b.entry(y_id(x), y_id(z), -v.clone());
    }
    for (i, j, v) in c.u().matrix().iter() {
        b.entry(one_id(&base.generator(i).id), y_id(&base.generator(j).id), v.clone());
    }
    let s = Arc::new(b.build()?);
    let j = ChainMap::from_fn(s.clone(), s, 1, MapSign::Anticommute, |id| {
        id.strip_suffix("⊗1")
            .map(|x| vec![(y_id(x), R::one())])
            .unwrap_or_default()
    })?;
    JComplex::new(j)
}

/// The induced `U_*` on homology, one matrix per source degree.
pub fn umap_on_homology<R: Ring>(c: &UComplex<R>) -> Result<BTreeMap<i64, Matrix<R>>> {
    let m = HomologyModel::new(c.base())?;
    Ok(c.u().induced(&m, &m))
}

/// The cone short exact sequence `0 → C·y → S_U(C) → C·1 → 0` and its LES.
#[derive(Clone, Debug)]
pub struct ConeComparison<R> {
    pub les: LesReport<R>,
    /// `U_*` on `H(C)`, keyed by source degree.
    pub u_star: BTreeMap<i64, Matrix<R>>,
    /// The map induced by `x ↦ Ux⊗y`, in the same bases as the connecting map.
    pub expected: BTreeMap<i64, Matrix<R>>,
    /// `+1` or `-1` when the connecting map equals `±expected`.
    pub sign: Option<i8>,
}

impl<R: Ring> ConeComparison<R> {
    pub fn holds(&self) -> bool {
        self.sign.is_some() && self.les.is_exact()
    }
}

impl<R: Ring> fmt::Display for ConeComparison<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cone sequence 0 -> C.y -> S_U(C) -> C -> 0")?;
        write!(f, "{}", self.les)?;
        for (n, m) in &self.u_star {
            if m.rows() > 0 && m.cols() > 0 {
                writeln!(f, "  U_* : H_{} -> H_{}  {:?}", n, n - 2, rows_of(m))?;
            }
        }
        match self.sign {
            Some(1) => writeln!(f, "  connecting map = +U_*"),
            Some(_) => writeln!(f, "  connecting map = -U_*"),
            None => writeln!(f, "  connecting map differs from U_*"),
        }
    }
}

pub(crate) fn rows_of<R: Ring>(m: &Matrix<R>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(ToString::to_string).collect())
        .collect()
}

/// Runs the cone sequence of `S_U(C)` and compares its connecting map with `U_*`.
pub fn cone_compare<R: Ring>(c: &UComplex<R>) -> Result<ConeComparison<R>> {
    let s = s_bundle(c)?;
    let s_arc = s.base_arc();
    let cy = Arc::new(c.base().shift(1).relabel(y_id)?);
    let c1 = c.base_arc();
    let i = ChainMap::from_fn(cy.clone(), s_arc.clone(), 0, MapSign::Commute, |id| vec![(id.to_string(), R::one())])?;
    let p = ChainMap::from_fn(s_arc, c1.clone(), 0, MapSign::Commute, |id| {
        id.strip_suffix("⊗1")
            .map(|x| vec![(x.to_string(), R::one())])
            .unwrap_or_default()
    })?;
    let les = les_of_ses(&i, &p)?;
    // x ↦ Ux⊗y anticommutes with the differentials of C and C·y
    let phi = ChainMap::from_fn(c1.clone(), cy.clone(), -1, MapSign::Anticommute, |id| {
        let k = c.base().index_of(id).expect("own generator");
        c.u()
            .matrix()
            .row(k)
            .map(|(j, v)| (y_id(&c.base().generator(j).id), v.clone()))
            .collect()
    })?;
    phi.ensure_chain_map()?;
    let mc = HomologyModel::new(&c1)?;
    let my = HomologyModel::new(&cy)?;
    let expected = phi.induced(&mc, &my);
    let neg: BTreeMap<i64, Matrix<R>> = expected.iter().map(|(k, m)| (*k, m.neg())).collect();
    let neg = reduce_all(&neg, &my, -1);
    let sign = if matrices_equal(&les.connecting, &expected) {
        Some(1)
    } else if matrices_equal(&les.connecting, &neg) {
        Some(-1)
    } else {
        None
    };
    Ok(ConeComparison {
        les,
        u_star: c.u().induced(&mc, &mc),
        expected,
        sign,
    })
}

// Reduces each torsion row of the maps into `H_{n+shift}` modulo its factor.
fn reduce_all<R: Ring>(
    maps: &BTreeMap<i64, Matrix<R>>,
    target: &HomologyModel<R>,
    shift: i64,
) -> BTreeMap<i64, Matrix<R>> {
    maps.iter()
        .map(|(&n, m)| {
            let factors = target.factors(n + shift);
            let mut m = m.clone();
            for (r, d) in factors.iter().enumerate() {
                for c in 0..m.cols() {
                    m[(r, c)] = crate::complex::homology::reduce_mod(&m[(r, c)], d);
                }
            }
            (n, m)
        })
        .collect()
}

/// Over a field, checks `dim H_n(S_U C) = dim coker U_*^{n+1} + dim ker U_*^{n}`.
pub fn gysin_check<R: Ring>(c: &UComplex<R>) -> Result<bool> {
    if !R::spec().is_field() {
        return Err(Error::UnsupportedRing(R::spec()));
    }
    let hs = crate::complex::homology::homology(s_bundle(c)?.base())?;
    let hc = crate::complex::homology::homology(c.base())?;
    let u_star = umap_on_homology(c)?;
    let urank = |n: i64| -> Result<usize> {
        match u_star.get(&n) {
            Some(m) => rank(m.clone()),
            None => Ok(0),
        }
    };
    let (lo, hi) = match c.base().degree_bounds() {
        Some((lo, hi)) => (lo, hi + 1),
        None => return Ok(hs.is_zero()),
    };
    for n in lo..=hi {
        let want = hc.rank(n - 1) - urank(n + 1)? + hc.rank(n) - urank(n)?;
        if hs.rank(n) != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lifts `f: C₁ → C₂` with `f U₁ − U₂ f = ∂h + h∂` to `S_U(C₁) → S_U(C₂)`:
/// `x⊗1 ↦ f(x)⊗1 − h(x)⊗y`, `x⊗y ↦ f(x)⊗y`. The lift commutes with `J`.
pub fn lift_map_su<R: Ring>(
    f: &ChainMap<R>,
    c1: &UComplex<R>,
    c2: &UComplex<R>,
    h: Option<&SparseMatrix<R>>,
) -> Result<(ChainMap<R>, JComplex<R>, JComplex<R>)> {
    if f.source() != c1.base() || f.target() != c2.base() {
        return Err(Error::DimensionMismatch("map does not connect the given U-complexes".into()));
    }
    if f.degree() != 0 || f.sign() != MapSign::Commute {
        return Err(Error::DimensionMismatch("lifted maps must commute and have degree 0".into()));
    }
    f.ensure_chain_map()?;
    let zero = SparseMatrix::new(c1.base().len(), c2.base().len());
    let h = h.unwrap_or(&zero);
    if h.rows() != zero.rows() || h.cols() != zero.cols() {
        return Err(Error::DimensionMismatch("homotopy has the wrong shape".into()));
    }
    for (i, j, _) in h.iter() {
        if c2.base().generator(j).degree != c1.base().generator(i).degree - 1 {
            return Err(Error::NotIntertwining(c1.base().generator(i).id.clone()));
        }
    }
    let lhs = c1.u().matrix().mul(f.matrix()).sub(&f.matrix().mul(c2.u().matrix()));
    let rhs = h.mul(c2.base().diff()).add(&c1.base().diff().mul(h));
    let defect = lhs.sub(&rhs);
    if let Some((x, _, _)) = defect.iter().next() {
        return Err(Error::NotIntertwining(c1.base().generator(x).id.clone()));
    }
    let (s1, s2) = (s_bundle(c1)?, s_bundle(c2)?);
    let mut entries = Vec::new();
    for (i, j, v) in f.matrix().iter() {
        let (x, z) = (&c1.base().generator(i).id, &c2.base().generator(j).id);
        entries.push((one_id(x), one_id(z), v.clone()));
        entries.push((y_id(x), y_id(z), v.clone()));
    }
    for (i, j, v) in h.iter() {
        let (x, z) = (&c1.base().generator(i).id, &c2.base().generator(j).id);
        entries.push((one_id(x), y_id(z), -v.clone()));
    }
    let lifted = ChainMap::from_entries(s1.base_arc(), s2.base_arc(), 0, MapSign::Commute, entries)?;
    lifted.ensure_chain_map()?;
    Ok((lifted, s1, s2))
}

/// Whether `F ∘ J₁ = J₂ ∘ F`.
pub fn preserves_j<R: Ring>(f: &ChainMap<R>, s1: &JComplex<R>, s2: &JComplex<R>) -> bool {
    s1.j().matrix().mul(f.matrix()) == f.matrix().mul(s2.j().matrix())
}

/// Homology of the bundle, for reports.
pub fn bundle_homology<R: Ring>(c: &UComplex<R>) -> Result<HomologyReport<R>> {
    crate::complex::homology::homology(s_bundle(c)?.base())
}

/// The cellular complex of `CPⁿ` (one cell in each even degree `0..=2n`) with
/// `U` lowering the cell degree by two.
pub fn cpn_ucomplex<R: Ring>(n: usize) -> Result<UComplex<R>> {
    let mut b = ComplexBuilder::new();
    for k in 0..=n {
        b.generator(format!("c{}", 2 * k), 2 * k as i64);
    }
    let base = b.build()?;
    UComplex::from_entries(
        base,
        (1..=n).map(|k| (format!("c{}", 2 * k), format!("c{}", 2 * k - 2), R::one())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::graded::Generator;
    use crate::complex::homology::homology;
    use crate::ring::Gf2;
    use num_bigint::BigInt;
    use std::collections::BTreeMap;

    #[test]
    fn hopf_bundle_over_cp1() {
        let c = cpn_ucomplex::<BigInt>(1).unwrap();
        let h = bundle_homology(&c).unwrap();
        assert_eq!(h.ranks(), BTreeMap::from([(0, 1), (3, 1)]));
        assert!(h.groups.values().all(|g| g.torsion.is_empty()));
        let u = umap_on_homology(&c).unwrap();
        assert_eq!(u[&2], Matrix::from_i64(&[&[1]]));
    }

    #[test]
    fn trivial_bundle_doubles_homology() {
        let base = GradedComplex::<Gf2>::new(
            vec![Generator::new("a", 0), Generator::new("b", 2)],
            Vec::<(&str, &str, Gf2)>::new(),
        )
        .unwrap();
        let h = bundle_homology(&UComplex::trivial(base)).unwrap();
        assert_eq!(h.ranks(), BTreeMap::from([(0, 1), (1, 1), (2, 1), (3, 1)]));
    }

    #[test]
    fn acyclic_base_gives_acyclic_bundle() {
        let base = GradedComplex::<BigInt>::new(
            vec![Generator::new("a", 1), Generator::new("b", 0)],
            vec![("a", "b", BigInt::from(1))],
        )
        .unwrap();
        assert!(bundle_homology(&UComplex::trivial(base)).unwrap().is_zero());
    }

    #[test]
    fn j_has_the_expected_shape() {
        let s = s_bundle(&cpn_ucomplex::<BigInt>(2).unwrap()).unwrap();
        assert_eq!(s.base().len(), 6);
        assert_eq!(s.j().matrix().nnz(), 3);
    }

    #[test]
    fn cone_comparison_on_cp1() {
        let c = cpn_ucomplex::<BigInt>(1).unwrap();
        let cmp = cone_compare(&c).unwrap();
        assert!(cmp.holds());
        assert_eq!(cmp.sign, Some(1));
        assert_eq!(cmp.les.connecting[&2], Matrix::from_i64(&[&[1]]));
    }

    #[test]
    fn cone_comparison_with_zero_u() {
        let base = GradedComplex::<BigInt>::new(
            vec![Generator::new("a", 0), Generator::new("b", 2)],
            Vec::<(&str, &str, BigInt)>::new(),
        )
        .unwrap();
        let cmp = cone_compare(&UComplex::trivial(base)).unwrap();
        assert!(cmp.holds());
        assert!(cmp.les.connecting_is_zero());
    }

    #[test]
    fn gysin_counts_match() {
        for n in 1..=3 {
            assert!(gysin_check(&cpn_ucomplex::<Gf2>(n).unwrap()).unwrap());
        }
    }

    #[test]
    fn identity_lift_is_identity() {
        let c = cpn_ucomplex::<BigInt>(2).unwrap();
        let id = ChainMap::identity(c.base_arc());
        let (lift, s1, s2) = lift_map_su(&id, &c, &c, None).unwrap();
        assert!(lift.equals(&ChainMap::identity(s1.base_arc())));
        assert!(preserves_j(&lift, &s1, &s2));
    }

    #[test]
    fn non_intertwining_map_is_rejected() {
        let c = cpn_ucomplex::<BigInt>(1).unwrap();
        let zero_u = UComplex::trivial(c.base().clone());
        let id = ChainMap::identity(c.base_arc());
        let err = lift_map_su(&id, &c, &zero_u, None).unwrap_err();
        assert!(matches!(err, Error::NotIntertwining(_)));
    }

    #[test]
    fn homotopy_corrected_lift_is_a_chain_map() {
        // C = (a1 -> b0) acyclic plus z2 and w0; U sends z to w.
        // f = identity, U₂ = U + (∂h + h∂) for h: z ↦ a.
        let base = GradedComplex::<BigInt>::new(
            vec![
                Generator::new("a", 1),
                Generator::new("b", 0),
                Generator::new("z", 2),
                Generator::new("w", 0),
            ],
            vec![("a", "b", BigInt::from(1))],
        )
        .unwrap();
        let c1 = UComplex::from_entries(base.clone(), vec![("z", "w", BigInt::from(1))]).unwrap();
        // ∂h + h∂ sends z ↦ ∂a = b, so U₂ = U − (z ↦ b)
        let c2 = UComplex::from_entries(
            base.clone(),
            vec![("z", "w", BigInt::from(1)), ("z", "b", BigInt::from(-1))],
        )
        .unwrap();
        let mut h = SparseMatrix::new(4, 4);
        h.add_to(base.index_of("z").unwrap(), base.index_of("a").unwrap(), BigInt::from(1));
        let id = ChainMap::identity(c1.base_arc());
        let (lift, s1, s2) = lift_map_su(&id, &c1, &c2, Some(&h)).unwrap();
        assert!(lift.is_chain_map().ok);
        assert!(preserves_j(&lift, &s1, &s2));
        assert_eq!(homology(s1.base()).unwrap(), homology(s2.base()).unwrap());
    }
}
