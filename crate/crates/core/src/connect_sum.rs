//! Fiber products `S_{U₁+U₂}(C₁ ⊗ C₂)` and the flavored complexes
//! `S_{U+u}(C ⊗ V^•)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::complex::chain_map::{find_chain_homotopy, verify_homotopy, ChainMap, MapSign};
use crate::complex::graded::{tensor_id, tensor_product, ComplexBuilder, GradedComplex};
use crate::complex::homology::{HomologyModel, HomologyReport};
use crate::equivariant::bundle::{one_id, s_bundle, y_id, JComplex, UComplex};
use crate::equivariant::jones::{jones_flavor, Flavor, Windowed};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseMatrix};
use crate::ring::Ring;
use crate::window::DegreeWindow;

/// `C₁ ⊗ C₂` with `U = U₁⊗1 + 1⊗U₂`.
#[derive(Clone, Debug)]
pub struct ProductUComplex<R> {
    pub first: UComplex<R>,
    pub second: UComplex<R>,
    pub product: UComplex<R>,
    /// `U₁ ⊗ 1` on the tensor product.
    pub u1: ChainMap<R>,
    /// `1 ⊗ U₂` on the tensor product.
    pub u2: ChainMap<R>,
}

pub fn product_ucomplex<R: Ring>(c1: &UComplex<R>, c2: &UComplex<R>) -> Result<ProductUComplex<R>> {
    let base = Arc::new(tensor_product(c1.base(), c2.base())?);
    // U has even degree, so 1⊗U₂ carries no Koszul sign
    let mut e1 = Vec::new();
    let mut e2 = Vec::new();
    for x in c1.base().gens() {
        let xi = c1.base().index_of(&x.id).expect("own generator");
        for y in c2.base().gens() {
            let yi = c2.base().index_of(&y.id).expect("own generator");
            let src = tensor_id(&x.id, &y.id);
            for (k, v) in c1.u().matrix().row(xi) {
                e1.push((src.clone(), tensor_id(&c1.base().generator(k).id, &y.id), v.clone()));
            }
            for (k, v) in c2.u().matrix().row(yi) {
                e2.push((src.clone(), tensor_id(&x.id, &c2.base().generator(k).id), v.clone()));
            }
        }
    }
    let u1 = ChainMap::from_entries(base.clone(), base.clone(), -2, MapSign::Commute, e1)?;
    let u2 = ChainMap::from_entries(base.clone(), base.clone(), -2, MapSign::Commute, e2)?;
    u1.ensure_chain_map()?;
    u2.ensure_chain_map()?;
    let product = UComplex::new(u1.add(&u2)?)?;
    Ok(ProductUComplex {
        first: c1.clone(),
        second: c2.clone(),
        product,
        u1,
        u2,
    })
}

/// `V^•` as a U-complex in base degrees `lo..=hi`: `u^k` in degree `−2k`,
/// `∂ = 0`, `U = ` multiplication by `u` (zero when it leaves the flavor).
fn v_flavor<R: Ring>(flavor: Flavor, lo: i64, hi: i64) -> Result<UComplex<R>> {
    let mut b = ComplexBuilder::new();
    let mut entries = Vec::new();
    let range = DegreeWindow { lo, hi }.exponents(0, -2);
    for k in range.clone() {
        if flavor.has_exponent(k) {
            b.generator(format!("u^{k}"), -2 * k);
            if flavor.has_exponent(k + 1) && range.contains(&(k + 1)) {
                entries.push((format!("u^{k}"), format!("u^{}", k + 1), R::one()));
            }
        }
    }
    UComplex::from_entries(b.build()?, entries)
}

/// Restricts a U-complex to base degrees `lo..=hi`; `U` stays a chain map.
fn truncate_u<R: Ring>(c: &UComplex<R>, lo: i64, hi: i64) -> Result<UComplex<R>> {
    let t = Arc::new(c.base().truncate(lo, hi));
    UComplex::new(c.u().restrict_to(t.clone(), t)?)
}

/// The materialized `S_{U+u}(C ⊗ V^flavor)` in a window, with the bookkeeping
/// needed to act on it by `t = 1⊗u` and by `U⊗1`.
#[derive(Clone, Debug)]
pub struct FlavoredProduct<R> {
    pub windowed: Windowed<R>,
    pub bundle: Arc<JComplex<R>>,
    pub flavor: Flavor,
}

pub fn flavored_product<R: Ring>(c: &UComplex<R>, flavor: Flavor, window: DegreeWindow) -> Result<FlavoredProduct<R>> {
    let window = DegreeWindow::new(window.lo, window.hi)?;
    let (lo, hi) = (window.lo - 1, window.hi);
    let (cmin, cmax) = c.base().degree_bounds().unwrap_or((0, 0));
    // V degrees needed: lo - cmax ..= hi - cmin
    let v = v_flavor::<R>(flavor, lo - cmax, hi - cmin)?;
    let p = product_ucomplex(c, &v)?;
    let base = truncate_u(&p.product, lo, hi)?;
    let s = s_bundle(&base)?;
    let complex = Arc::new(s.base().truncate(window.lo, window.hi));
    Ok(FlavoredProduct {
        windowed: Windowed { complex, window },
        bundle: Arc::new(s),
        flavor,
    })
}

/// `S_{U+u}(C ⊗ V^flavor)` materialized in the window.
pub fn s_otimes<R: Ring>(c: &UComplex<R>, flavor: Flavor, window: DegreeWindow) -> Result<Windowed<R>> {
    Ok(flavored_product(c, flavor, window)?.windowed)
}

/// Side-by-side homology of `E^•(S_U C)` and `S_{U+u}(C ⊗ V^•)`.
#[derive(Clone, Debug)]
pub struct IdentityReport<R> {
    pub flavor: Flavor,
    pub window: DegreeWindow,
    pub jones_side: HomologyReport<R>,
    pub product_side: HomologyReport<R>,
    pub mismatches: Vec<i64>,
}

impl<R: Ring> IdentityReport<R> {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl<R: Ring> fmt::Display for IdentityReport<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.window.safe_range();
        writeln!(f, "flavor {} on degrees {}..={}", self.flavor, lo, hi)?;
        writeln!(f, "  {:>5}  {:<18} S_(U+u)(C x V)", "n", "E(S_U C)")?;
        for n in (lo..=hi).rev() {
            let g = |r: &HomologyReport<R>| r.groups.get(&n).map_or_else(|| "0".to_string(), ToString::to_string);
            let (a, b) = (g(&self.jones_side), g(&self.product_side));
            if a != "0" || b != "0" {
                writeln!(f, "  {:>5}  {:<18} {}", n, a, b)?;
            }
        }
        if self.holds() {
            writeln!(f, "  tables agree")
        } else {
            writeln!(f, "  tables differ in degrees {:?}", self.mismatches)
        }
    }
}

/// Computes both sides of `E^• S_U(C) = S_{U+u}(C ⊗ V^•)` independently and
/// compares graded ranks and torsion on the safe range.
pub fn verify_e_su_identity<R: Ring>(c: &UComplex<R>, flavor: Flavor, window: DegreeWindow) -> Result<IdentityReport<R>> {
    let s = s_bundle(c)?;
    let jones_side = jones_flavor(&s, flavor, window)?.homology()?;
    let product_side = s_otimes(c, flavor, window)?.homology()?;
    let (lo, hi) = window.safe_range();
    let mismatches = (lo..=hi)
        .filter(|n| jones_side.groups.get(n) != product_side.groups.get(n))
        .collect();
    Ok(IdentityReport {
        flavor,
        window,
        jones_side,
        product_side,
        mismatches,
    })
}

/// Comparison of the deck action `t = 1⊗u` with `−U⊗1` on `H(S_{U+u}(C ⊗ V^•))`.
#[derive(Clone, Debug)]
pub struct ActionReport<R> {
    pub flavor: Flavor,
    pub window: DegreeWindow,
    pub t_action: BTreeMap<i64, Matrix<R>>,
    pub u_action: BTreeMap<i64, Matrix<R>>,
    pub mismatches: Vec<i64>,
}

impl<R: Ring> ActionReport<R> {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl<R: Ring> fmt::Display for ActionReport<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "t-action vs -U-action, flavor {}", self.flavor)?;
        for (n, m) in &self.t_action {
            if m.rows() > 0 && m.cols() > 0 {
                writeln!(f, "  H_{} -> H_{}: {}x{} matrices", n, n - 2, m.rows(), m.cols())?;
            }
        }
        if self.holds() {
            writeln!(f, "  actions agree on homology")
        } else {
            writeln!(f, "  actions differ in degrees {:?}", self.mismatches)
        }
    }
}

// Splits `x⊗u^k` (with `⊗1` or `⊗y` appended by the bundle) into its parts.
fn split_flavored(id: &str) -> Option<(&str, i64, &str)> {
    let (body, tail) = id.rsplit_once('⊗')?;
    let (x, k) = body.rsplit_once("⊗u^")?;
    Some((x, k.parse().ok()?, tail))
}

/// Compares `t_*` with `−(U⊗1)_*` on the safe range. Requires field coefficients.
pub fn u_vs_t_action<R: Ring>(c: &UComplex<R>, flavor: Flavor, window: DegreeWindow) -> Result<ActionReport<R>> {
    if !R::spec().is_field() {
        return Err(Error::UnsupportedRing(R::spec()));
    }
    let fp = flavored_product(c, flavor, window)?;
    let x = fp.windowed.complex.clone();
    let base = c.base();
    let t = ChainMap::from_fn(x.clone(), x.clone(), -2, MapSign::Commute, |id| {
        let Some((g, k, tail)) = split_flavored(id) else {
            return Vec::new();
        };
        if !flavor.has_exponent(k + 1) {
            return Vec::new();
        }
        vec![(format!("{}⊗{tail}", tensor_id(g, &format!("u^{}", k + 1))), R::one())]
    })?;
    let u = ChainMap::from_fn(x.clone(), x.clone(), -2, MapSign::Commute, |id| {
        let Some((g, k, tail)) = split_flavored(id) else {
            return Vec::new();
        };
        let gi = base.index_of(g).expect("generator of C");
        c.u()
            .matrix()
            .row(gi)
            .map(|(j, v)| {
                let z = &base.generator(j).id;
                (format!("{}⊗{tail}", tensor_id(z, &format!("u^{k}"))), -v.clone())
            })
            .collect()
    })?;
    t.ensure_chain_map()?;
    u.ensure_chain_map()?;
    let model = HomologyModel::new(&x)?;
    let t_action = t.induced(&model, &model);
    let u_action = u.induced(&model, &model);
    let (lo, hi) = fp.windowed.window.safe_range();
    let mismatches = t_action
        .keys()
        .copied()
        .filter(|&n| (lo..=hi).contains(&n) && (lo..=hi).contains(&(n - 2)))
        .filter(|n| t_action.get(n) != u_action.get(n))
        .collect();
    let keep = |m: BTreeMap<i64, Matrix<R>>| -> BTreeMap<i64, Matrix<R>> {
        m.into_iter()
            .filter(|(n, _)| (lo..=hi).contains(n) && (lo..=hi).contains(&(n - 2)))
            .collect()
    };
    Ok(ActionReport {
        flavor,
        window: fp.windowed.window,
        t_action: keep(t_action),
        u_action: keep(u_action),
        mismatches,
    })
}

/// The closed-form homotopy between `U₁⊗1` and `−1⊗U₂` lifted to `S_{U₁+U₂}(C₁⊗C₂)`.
#[derive(Clone, Debug)]
pub struct NullHomotopy<R> {
    pub bundle: JComplex<R>,
    /// `U₁⊗1` acting on both columns of the bundle.
    pub f: ChainMap<R>,
    /// `−(1⊗U₂)` acting on both columns of the bundle.
    pub g: ChainMap<R>,
    /// `H(ξ⊗1) = 0`, `H(ξ⊗y) = ξ⊗1`.
    pub h: SparseMatrix<R>,
}

impl<R: Ring> NullHomotopy<R> {
    /// `∂H + H∂ = f − g`.
    pub fn verify(&self) -> bool {
        verify_homotopy(&self.f, &self.g, &self.h)
    }

    /// Solves for a homotopy independently and checks it.
    pub fn cross_check(&self) -> Result<bool> {
        Ok(match find_chain_homotopy(&self.f, &self.g)? {
            Some(h) => verify_homotopy(&self.f, &self.g, &h),
            None => false,
        })
    }
}

fn lift_to_bundle<R: Ring>(m: &ChainMap<R>, s: &Arc<GradedComplex<R>>, scale: R) -> Result<ChainMap<R>> {
    let base = m.source();
    let mut entries = Vec::new();
    for (i, j, v) in m.matrix().iter() {
        let (x, z) = (&base.generator(i).id, &base.generator(j).id);
        entries.push((one_id(x), one_id(z), scale.clone() * v.clone()));
        entries.push((y_id(x), y_id(z), scale.clone() * v.clone()));
    }
    ChainMap::from_entries(s.clone(), s.clone(), m.degree(), MapSign::Commute, entries)
}

pub fn explicit_null_homotopy<R: Ring>(p: &ProductUComplex<R>) -> Result<NullHomotopy<R>> {
    let bundle = s_bundle(&p.product)?;
    let s = bundle.base_arc();
    let f = lift_to_bundle(&p.u1, &s, R::one())?;
    let g = lift_to_bundle(&p.u2, &s, -R::one())?;
    let mut h = SparseMatrix::new(s.len(), s.len());
    for g0 in p.product.base().gens() {
        let from = s.index_of(&y_id(&g0.id)).expect("bundle generator");
        let to = s.index_of(&one_id(&g0.id)).expect("bundle generator");
        h.add_to(from, to, R::one());
    }
    Ok(NullHomotopy { bundle, f, g, h })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::graded::Generator;
    use crate::equivariant::bundle::cpn_ucomplex;
    use crate::ring::Gf2;
    use num_bigint::BigInt;

    fn unit<R: Ring>() -> UComplex<R> {
        UComplex::trivial(
            GradedComplex::new(vec![Generator::new("e", 0)], Vec::<(&str, &str, R)>::new()).unwrap(),
        )
    }

    fn w(lo: i64, hi: i64) -> DegreeWindow {
        DegreeWindow::new(lo, hi).unwrap()
    }

    #[test]
    fn unit_factor_is_neutral() {
        let c = cpn_ucomplex::<BigInt>(2).unwrap();
        let p = product_ucomplex(&c, &unit()).unwrap();
        assert_eq!(p.product.base().len(), c.base().len());
        assert_eq!(p.product.u().matrix().nnz(), c.u().matrix().nnz());
    }

    #[test]
    fn unit_complex_gives_flavor_pattern() {
        let c = unit::<Gf2>();
        let minus = s_otimes(&c, Flavor::Minus, w(-12, 12)).unwrap().homology().unwrap();
        // ∂(u^k⊗1) = u^{k+1}⊗y, so only u^0⊗y survives
        assert_eq!(minus.ranks(), BTreeMap::from([(1, 1)]));
        let identity = verify_e_su_identity(&c, Flavor::Minus, w(-12, 12)).unwrap();
        assert!(identity.holds());
        assert_eq!(minus, identity.jones_side);
    }

    #[test]
    fn identity_holds_for_cp1_in_all_flavors() {
        let c = cpn_ucomplex::<BigInt>(1).unwrap();
        for flavor in Flavor::MAIN {
            let r = verify_e_su_identity(&c, flavor, w(-10, 10)).unwrap();
            assert!(r.holds(), "{r}");
        }
    }

    #[test]
    fn infty_flavor_of_acyclic_base_is_acyclic() {
        let base = GradedComplex::<Gf2>::new(
            vec![Generator::new("a", 1), Generator::new("b", 0)],
            vec![("a", "b", Gf2(true))],
        )
        .unwrap();
        let h = s_otimes(&UComplex::trivial(base), Flavor::Infty, w(-8, 8)).unwrap().homology().unwrap();
        assert!(h.is_zero());
    }

    #[test]
    fn t_and_u_actions_agree_for_cp1() {
        let c = cpn_ucomplex::<Gf2>(1).unwrap();
        for flavor in Flavor::MAIN {
            let r = u_vs_t_action(&c, flavor, w(-10, 10)).unwrap();
            assert!(r.holds(), "{r}");
        }
    }

    #[test]
    fn null_homotopy_for_cp1_squared() {
        let c = cpn_ucomplex::<Gf2>(1).unwrap();
        let p = product_ucomplex(&c, &c).unwrap();
        let n = explicit_null_homotopy(&p).unwrap();
        assert!(n.f.is_chain_map().ok && n.g.is_chain_map().ok);
        assert!(n.verify());
        assert!(n.cross_check().unwrap());
    }

    #[test]
    fn null_homotopy_over_integers() {
        let c = cpn_ucomplex::<BigInt>(1).unwrap();
        let p = product_ucomplex(&c, &c).unwrap();
        assert!(explicit_null_homotopy(&p).unwrap().verify());
    }
}
