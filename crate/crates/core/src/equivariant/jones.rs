//! Jones's equivariant flavors `E^•(S) = (S ⊗ V^•, ∂ ⊗ 1 + J ⊗ u)` with `deg u = −2`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::complex::chain_map::{ChainMap, MapSign};
use crate::complex::graded::{ComplexBuilder, GradedComplex};
use crate::complex::homology::{homology_in, HomologyReport};
use crate::complex::les::{les_of_ses, LesReport};
use crate::equivariant::bundle::{preserves_j, JComplex};
use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::window::DegreeWindow;

/// Which power series module `V^•` is tensored in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    /// `R[u]`
    Minus,
    /// `R[u, u⁻¹]`
    Infty,
    /// `R[u, u⁻¹] / uR[u]`
    Plus,
    /// `uR[u]`, the subcomplex in the fundamental sequence
    UMinus,
}

impl Flavor {
    pub const MAIN: [Flavor; 3] = [Flavor::Minus, Flavor::Infty, Flavor::Plus];

    /// Whether `u^k` is a generator of `V^•`.
    pub fn has_exponent(self, k: i64) -> bool {
        match self {
            Flavor::Minus => k >= 0,
            Flavor::Infty => true,
            Flavor::Plus => k <= 0,
            Flavor::UMinus => k >= 1,
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Flavor::Minus => "minus",
            Flavor::Infty => "infty",
            Flavor::Plus => "plus",
            Flavor::UMinus => "uminus",
        };
        f.write_str(s)
    }
}

impl FromStr for Flavor {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "minus" | "-" => Ok(Flavor::Minus),
            "infty" | "inf" | "infinity" => Ok(Flavor::Infty),
            "plus" | "+" => Ok(Flavor::Plus),
            "uminus" => Ok(Flavor::UMinus),
            _ => Err(format!("unknown flavor `{s}` (expected minus, infty or plus)")),
        }
    }
}

/// A finite window of an unbounded complex, with homology trusted on the safe range.
#[derive(Clone, Debug)]
pub struct Windowed<R> {
    pub complex: Arc<GradedComplex<R>>,
    pub window: DegreeWindow,
}

impl<R: Ring> Windowed<R> {
    pub fn homology(&self) -> Result<HomologyReport<R>> {
        let (lo, hi) = self.window.safe_range();
        homology_in(&self.complex, lo, hi)
    }
}

pub fn u_power_id(x: &str, k: i64) -> String {
    format!("{x}·u^{k}")
}

/// Materializes `E^flavor(S)` in the window. The `u^{k+1}` term of the
/// differential is dropped when `k + 1` leaves the flavor's exponent range.
pub fn jones_flavor<R: Ring>(s: &JComplex<R>, flavor: Flavor, window: DegreeWindow) -> Result<Windowed<R>> {
    let window = DegreeWindow::new(window.lo, window.hi)?;
    let base = s.base();
    let mut b = ComplexBuilder::new();
    for g in base.gens() {
        for k in window.exponents(g.degree, -2) {
            if flavor.has_exponent(k) {
                b.generator(u_power_id(&g.id, k), g.degree - 2 * k);
            }
        }
    }
    let keep = |x: &GradedComplex<R>, i: usize, k: i64| {
        flavor.has_exponent(k) && window.contains(x.generator(i).degree - 2 * k)
    };
    for (i, j, v) in base.diff().iter() {
        for k in window.exponents(base.generator(i).degree, -2) {
            if keep(base, i, k) && keep(base, j, k) {
                b.entry(
                    u_power_id(&base.generator(i).id, k),
                    u_power_id(&base.generator(j).id, k),
                    v.clone(),
                );
            }
        }
    }
    for (i, j, v) in s.j().matrix().iter() {
        for k in window.exponents(base.generator(i).degree, -2) {
            if keep(base, i, k) && keep(base, j, k + 1) {
                b.entry(
                    u_power_id(&base.generator(i).id, k),
                    u_power_id(&base.generator(j).id, k + 1),
                    v.clone(),
                );
            }
        }
    }
    Ok(Windowed {
        complex: Arc::new(b.build()?),
        window,
    })
}

/// The map `x·u^k ↦ F(x)·u^k` induced by a `J`-preserving chain map.
pub fn jones_map<R: Ring>(
    f: &ChainMap<R>,
    s1: &JComplex<R>,
    s2: &JComplex<R>,
    e1: &Windowed<R>,
    e2: &Windowed<R>,
) -> Result<ChainMap<R>> {
    if f.degree() != 0 || f.sign() != MapSign::Commute {
        return Err(Error::DimensionMismatch("flavor maps need a commuting degree 0 map".into()));
    }
    f.ensure_chain_map()?;
    if !preserves_j(f, s1, s2) {
        let witness = (0..s1.base().len())
            .find(|&i| {
                let mut e = vec![R::zero(); s1.base().len()];
                e[i] = R::one();
                f.apply(&s1.j().apply(&e)) != s2.j().apply(&f.apply(&e))
            })
            .map(|i| s1.base().generator(i).id.clone())
            .unwrap_or_default();
        return Err(Error::NotIntertwining(witness));
    }
    let mut entries = Vec::new();
    for (i, j, v) in f.matrix().iter() {
        let (x, z) = (&s1.base().generator(i).id, &s2.base().generator(j).id);
        let deg = s1.base().generator(i).degree;
        for k in e1.window.exponents(deg, -2) {
            let (a, b) = (u_power_id(x, k), u_power_id(z, k));
            if e1.complex.index_of(&a).is_some() && e2.complex.index_of(&b).is_some() {
                entries.push((a, b, v.clone()));
            }
        }
    }
    let m = ChainMap::from_entries(e1.complex.clone(), e2.complex.clone(), 0, MapSign::Commute, entries)?;
    m.ensure_chain_map()?;
    Ok(m)
}

/// `0 → uE⁻(S) → E^∞(S) → E⁺(S) → 0` in a window, with its long exact sequence.
#[derive(Clone, Debug)]
pub struct FundamentalSequence<R> {
    pub sub: Windowed<R>,
    pub infty: Windowed<R>,
    pub plus: Windowed<R>,
    pub les: LesReport<R>,
}

impl<R: Ring> FundamentalSequence<R> {
    pub fn exact_on_safe_range(&self) -> bool {
        let (lo, hi) = self.infty.window.safe_range();
        self.les.is_exact_in(lo, hi)
    }
}

pub fn fundamental_ses<R: Ring>(s: &JComplex<R>, window: DegreeWindow) -> Result<FundamentalSequence<R>> {
    let sub = jones_flavor(s, Flavor::UMinus, window)?;
    let infty = jones_flavor(s, Flavor::Infty, window)?;
    let plus = jones_flavor(s, Flavor::Plus, window)?;
    let i = ChainMap::from_fn(sub.complex.clone(), infty.complex.clone(), 0, MapSign::Commute, |id| {
        vec![(id.to_string(), R::one())]
    })?;
    let p = ChainMap::from_fn(infty.complex.clone(), plus.complex.clone(), 0, MapSign::Commute, |id| {
        vec![(id.to_string(), R::one())]
    })?;
    let les = les_of_ses(&i, &p)?;
    Ok(FundamentalSequence { sub, infty, plus, les })
}

/// The free circle: `z0` in degree 0, `z1` in degree 1, `∂ = 0`, `J z0 = z1`.
pub fn free_circle<R: Ring>() -> Result<JComplex<R>> {
    let mut b = ComplexBuilder::new();
    b.generator("z0", 0).generator("z1", 1);
    JComplex::from_entries(b.build()?, vec![("z0", "z1", R::one())])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::graded::Generator;
    use crate::ring::Gf2;
    use num_bigint::BigInt;
    use std::collections::BTreeMap;

    fn w(lo: i64, hi: i64) -> DegreeWindow {
        DegreeWindow::new(lo, hi).unwrap()
    }

    #[test]
    fn flavor_parsing() {
        assert_eq!("minus".parse::<Flavor>(), Ok(Flavor::Minus));
        assert_eq!("infty".parse::<Flavor>(), Ok(Flavor::Infty));
        assert!("hat".parse::<Flavor>().is_err());
    }

    #[test]
    fn free_circle_flavors() {
        let s = free_circle::<BigInt>().unwrap();
        let plus = jones_flavor(&s, Flavor::Plus, w(-20, 4)).unwrap().homology().unwrap();
        assert_eq!(plus.ranks(), BTreeMap::from([(0, 1)]));
        assert!(plus.torsion(0).is_empty());
        let infty = jones_flavor(&s, Flavor::Infty, w(-20, 4)).unwrap().homology().unwrap();
        assert!(infty.is_zero());
        let minus = jones_flavor(&s, Flavor::Minus, w(-20, 4)).unwrap().homology().unwrap();
        assert_eq!(minus.ranks(), BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn zero_j_gives_polynomial_tensor() {
        let base = GradedComplex::<Gf2>::new(vec![Generator::new("x", 0)], Vec::<(&str, &str, Gf2)>::new())
            .unwrap();
        let s = JComplex::from_entries(base, Vec::<(&str, &str, Gf2)>::new()).unwrap();
        let minus = jones_flavor(&s, Flavor::Minus, w(-10, 10)).unwrap().homology().unwrap();
        assert_eq!(
            minus.ranks(),
            BTreeMap::from([(-8, 1), (-6, 1), (-4, 1), (-2, 1), (0, 1)])
        );
    }

    #[test]
    fn small_window_is_rejected() {
        let s = free_circle::<Gf2>().unwrap();
        let err = jones_flavor(&s, Flavor::Plus, DegreeWindow { lo: 0, hi: 2 }).unwrap_err();
        assert_eq!(err, Error::WindowTooSmall { lo: 0, hi: 2 });
    }

    #[test]
    fn fundamental_sequence_of_free_circle() {
        let s = free_circle::<BigInt>().unwrap();
        let f = fundamental_ses(&s, w(-12, 12)).unwrap();
        assert!(f.les.is_exact());
        assert!(f.exact_on_safe_range());
    }
}
