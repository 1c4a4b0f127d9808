use num_rational::BigRational;
use proptest::prelude::*;

use floer_algebra::complex::homology::homology;
use floer_algebra::novikov::{laurent_homology, pair_les, single_orbit, slice_sequence, su_of_laurent, CutLevel};
use floer_algebra::random::{random_laurent, seeded, RandomRing, Shape};
use floer_algebra::{DegreeWindow, Gf2, LaurentPoly};

fn shape() -> Shape {
    Shape {
        max_generators: 10,
        ..Shape::default()
    }
}

fn window() -> DegreeWindow {
    DegreeWindow::new(-12, 12).unwrap()
}

fn acyclic_bar<R: RandomRing>(seed: u64) -> Result<(), TestCaseError> {
    let l = random_laurent::<R, _>(&mut seeded(seed), shape(), -2).unwrap();
    prop_assert!(laurent_homology(&su_of_laurent(&l).unwrap()).unwrap().is_zero());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_complexes_are_semipositive(seed in any::<u64>()) {
        let l = random_laurent::<Gf2, _>(&mut seeded(seed), shape(), -2).unwrap();
        prop_assert!(l.check_semipositive().is_ok());
        prop_assert!(l.diff().mul(l.diff()).is_zero());
    }

    #[test]
    fn bar_construction_is_acyclic(seed in any::<u64>()) {
        acyclic_bar::<Gf2>(seed)?;
        acyclic_bar::<BigRational>(seed)?;
    }

    #[test]
    fn laurent_euler_characteristic(seed in any::<u64>()) {
        // over F[t, t⁻¹] with deg t = −2, residues are parities
        let l = random_laurent::<Gf2, _>(&mut seeded(seed), shape(), -2).unwrap();
        let h = laurent_homology(&l).unwrap();
        let chi: i64 = h.ranks().iter().map(|(r, n)| if *r == 0 { *n as i64 } else { -(*n as i64) }).sum();
        let expected: i64 = l.gens().iter().map(|g| if g.degree.rem_euclid(2) == 0 { 1 } else { -1 }).sum();
        prop_assert_eq!(chi, expected);
    }

    #[test]
    fn pair_sequence_is_exact(seed in any::<u64>(), offset in -2i64..=2) {
        let l = random_laurent::<Gf2, _>(&mut seeded(seed), shape(), -2).unwrap();
        let cut = CutLevel { offset };
        prop_assert!(pair_les(&l, cut, window()).unwrap().les.is_exact());
    }

    #[test]
    fn slice_sequence_is_exact(seed in any::<u64>(), offset in -2i64..=2) {
        let l = random_laurent::<BigRational, _>(&mut seeded(seed), shape(), -2).unwrap();
        let cut = CutLevel { offset };
        prop_assert!(slice_sequence(&l, cut, window()).unwrap().is_exact());
    }

    #[test]
    fn full_flavor_is_periodic(seed in any::<u64>()) {
        let l = random_laurent::<Gf2, _>(&mut seeded(seed), shape(), -2).unwrap();
        let full = l.full_complex(window()).unwrap().homology().unwrap();
        let (lo, hi) = window().safe_range();
        for n in lo..=hi - 2 {
            prop_assert_eq!(full.rank(n), full.rank(n + 2));
        }
    }
}

#[test]
fn one_orbit_flavors() {
    let l = single_orbit::<Gf2>(0, -2).unwrap();
    let p = pair_les(&l, CutLevel::default(), window()).unwrap();
    let minus = p.minus.homology().unwrap();
    let plus = p.plus.homology().unwrap();
    assert_eq!(minus.rank(-2), 1);
    assert_eq!(minus.rank(0), 0);
    assert_eq!(plus.rank(0), 1);
    assert_eq!(plus.rank(-2), 0);
    let hat = homology(&l.hat_complex(CutLevel::default()).unwrap()).unwrap();
    assert_eq!(hat.ranks(), [(-2, 1)].into_iter().collect());
}

#[test]
fn negative_exponents_are_rejected_by_filtered_flavors() {
    use floer_algebra::complex::graded::Generator;
    let l = floer_algebra::novikov::make_laurent::<Gf2, _>(
        vec![Generator::new("a", 1), Generator::new("b", -2)],
        [("a", "b", LaurentPoly::t_pow(-1))],
        -2,
    )
    .unwrap();
    assert!(!l.check_semipositive().is_ok());
    assert!(l.minus_complex(CutLevel::default(), window()).is_err());
    assert!(l.full_complex(window()).is_ok());
}
