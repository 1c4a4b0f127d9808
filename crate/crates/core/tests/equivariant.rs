use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use floer_algebra::complex::homology::{homology, HomologyModel};
use floer_algebra::equivariant::{
    bundle_homology, cone_compare, gysin_check, jones_flavor, jones_map, lift_map_su, localize, s_bundle,
    umap_on_homology, Flavor, GradedUModule, UComplex,
};
use floer_algebra::linalg::{rank, Matrix};
use floer_algebra::random::{random_complex, random_quasi_iso, random_ucomplex, seeded, RandomRing, Shape};
use floer_algebra::{DegreeWindow, Gf2};

fn shape() -> Shape {
    Shape {
        max_generators: 10,
        ..Shape::default()
    }
}

/// Whether each degree block of the induced map is a square invertible matrix.
fn is_iso_on_homology<R: RandomRing>(m: &std::collections::BTreeMap<i64, Matrix<R>>, lo: i64, hi: i64) -> bool {
    m.iter()
        .filter(|(n, _)| (lo..=hi).contains(*n))
        .all(|(_, b)| b.rows() == b.cols() && rank(b.clone()).unwrap() == b.rows())
}

fn naturality<R: RandomRing>(seed: u64) -> Result<(), TestCaseError> {
    let q = random_quasi_iso::<R, _>(&mut seeded(seed), shape()).unwrap();
    let (f, s1, s2) = lift_map_su(&q.map, &q.source, &q.target, None).unwrap();
    let w = DegreeWindow::new(-14, 14).unwrap();
    let (lo, hi) = w.safe_range();
    for flavor in Flavor::MAIN {
        let e1 = jones_flavor(&s1, flavor, w).unwrap();
        let e2 = jones_flavor(&s2, flavor, w).unwrap();
        let g = jones_map(&f, &s1, &s2, &e1, &e2).unwrap();
        let induced = g.induced(&HomologyModel::new(&e1.complex).unwrap(), &HomologyModel::new(&e2.complex).unwrap());
        prop_assert!(is_iso_on_homology(&induced, lo, hi), "flavor {}", flavor);
        prop_assert_eq!(e1.homology().unwrap().ranks(), e2.homology().unwrap().ranks());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn quasi_isomorphisms_induce_isomorphisms_of_flavors(seed in any::<u64>()) {
        naturality::<Gf2>(seed)?;
        naturality::<BigRational>(seed)?;
    }

    #[test]
    fn lifted_maps_are_quasi_isomorphisms(seed in any::<u64>()) {
        let q = random_quasi_iso::<Gf2, _>(&mut seeded(seed), shape()).unwrap();
        let (f, s1, s2) = lift_map_su(&q.map, &q.source, &q.target, None).unwrap();
        let induced = f.induced(&HomologyModel::new(s1.base()).unwrap(), &HomologyModel::new(s2.base()).unwrap());
        prop_assert!(is_iso_on_homology(&induced, i64::MIN, i64::MAX));
    }

    #[test]
    fn u_star_is_functorial(seed in any::<u64>()) {
        let c = random_ucomplex::<BigRational, _>(&mut seeded(seed), shape()).unwrap();
        let model = HomologyModel::new(c.base()).unwrap();
        let u = umap_on_homology(&c).unwrap();
        let u2 = c.u().then(c.u()).unwrap().induced(&model, &model);
        for (n, block) in &u2 {
            let composed = match (u.get(n), u.get(&(n - 2))) {
                (Some(a), Some(b)) => b.mul(a),
                _ => Matrix::zeros(model.len(n - 4), model.len(*n)),
            };
            prop_assert_eq!(block, &composed);
        }
    }

    #[test]
    fn j_squares_to_zero(seed in any::<u64>()) {
        let c = random_ucomplex::<BigInt, _>(&mut seeded(seed), shape()).unwrap();
        let s = s_bundle(&c).unwrap();
        prop_assert!(s.j().matrix().mul(s.j().matrix()).is_zero());
        prop_assert!(s.j().is_chain_map().ok);
    }

    #[test]
    fn cone_sequence_connects_by_u(seed in any::<u64>()) {
        let c = random_ucomplex::<BigInt, _>(&mut seeded(seed), shape()).unwrap();
        prop_assert!(cone_compare(&c).unwrap().holds());
        let c = random_ucomplex::<BigRational, _>(&mut seeded(seed), shape()).unwrap();
        prop_assert!(gysin_check(&c).unwrap());
    }

    #[test]
    fn zero_u_splits_the_bundle(seed in any::<u64>()) {
        let c = random_complex::<Gf2, _>(&mut seeded(seed), shape()).unwrap();
        let h = bundle_homology(&UComplex::trivial(c.complex.clone())).unwrap();
        let base = homology(&c.complex).unwrap();
        let mut expected = base.ranks();
        for (n, r) in base.ranks() {
            *expected.entry(n + 1).or_insert(0) += r;
        }
        prop_assert_eq!(h.ranks(), expected);
    }

    #[test]
    fn localization_keeps_free_parts(
        free in prop::collection::vec(-6i64..=6, 0..5),
        torsion in prop::collection::vec((-6i64..=6, 1u32..=4), 0..5),
    ) {
        let mut m = GradedUModule::<BigInt>::free(free.clone());
        for (d, n) in &torsion {
            m = m.direct_sum(&GradedUModule::truncated(*d, *n));
        }
        let l = localize(&m).unwrap();
        let even = free.iter().filter(|d| d.rem_euclid(2) == 0).count();
        prop_assert_eq!(l.even.rank, even);
        prop_assert_eq!(l.odd.rank, free.len() - even);
        prop_assert!(l.even.torsion.is_empty() && l.odd.torsion.is_empty());
    }
}

#[test]
fn localization_sees_integer_torsion_in_relations() {
    // generator e in degree 0 with relation 2·e = 0, which U does not kill
    let mut m = GradedUModule::<BigInt>::free(vec![0]);
    m.relations.push(vec![floer_algebra::equivariant::UTerm {
        generator: 0,
        power: 0,
        coeff: BigInt::from(2),
    }]);
    let l = localize(&m).unwrap();
    assert_eq!(l.even.rank, 0);
    assert_eq!(l.even.torsion, vec![BigInt::from(2)]);
    assert!(l.in_degree(-4).torsion == l.even.torsion);
}

#[test]
fn free_action_on_s5_has_quotient_cp2() {
    let c = floer_algebra::equivariant::cpn_ucomplex::<Gf2>(2).unwrap();
    let w = DegreeWindow::new(-16, 16).unwrap();
    let s = s_bundle(&c).unwrap();
    let plus = jones_flavor(&s, Flavor::Plus, w).unwrap().homology().unwrap();
    assert_eq!(plus.ranks(), [(0, 1), (2, 1), (4, 1)].into_iter().collect());
    let infty = jones_flavor(&s, Flavor::Infty, w).unwrap().homology().unwrap();
    assert!(infty.is_zero());
}
