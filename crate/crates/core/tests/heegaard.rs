use itertools::Itertools;
use num_bigint::BigInt;
use proptest::prelude::*;

use floer_algebra::heegaard::{enumerate_generators, formal_cf_module, lens_space_diagram, signed_count, HeegaardDiagram};
use floer_algebra::linalg::determinant;
use floer_algebra::novikov::laurent_homology;
use floer_algebra::random::{random_diagram, seeded};
use floer_algebra::Gf2;

/// Permanent of the unsigned point counts: the number of generators.
fn permanent(d: &HeegaardDiagram) -> usize {
    let g = d.genus();
    (0..g)
        .permutations(g)
        .map(|s| (0..g).map(|i| d.points(i, s[i]).len()).product::<usize>())
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generator_count_is_the_permanent(seed in any::<u64>(), genus in 1usize..=4, max_points in 1usize..=3) {
        let d = random_diagram(&mut seeded(seed), genus, max_points);
        let gens = enumerate_generators(&d);
        prop_assert_eq!(gens.len(), permanent(&d));
        prop_assert!(gens.iter().map(|g| g.id()).all_unique());
    }

    #[test]
    fn signed_count_is_the_determinant(seed in any::<u64>(), genus in 1usize..=4) {
        let d = random_diagram(&mut seeded(seed), genus, 3);
        let c = signed_count(&d).unwrap();
        prop_assert_eq!(&c.enumerated, &determinant(&d.count_matrix()));
        prop_assert_eq!(c.enumerated, c.determinant);
    }

    #[test]
    fn formal_module_is_free_on_generators(seed in any::<u64>()) {
        let d = random_diagram(&mut seeded(seed), 3, 2);
        let n = enumerate_generators(&d).len();
        let m = formal_cf_module::<Gf2>(&d, &vec![0; n], -2).unwrap();
        prop_assert_eq!(m.len(), n);
        prop_assert_eq!(laurent_homology(&m).unwrap().ranks().values().sum::<usize>(), n);
    }
}

#[test]
fn lens_spaces() {
    for p in 1..=9usize {
        let d = lens_space_diagram(p);
        assert_eq!(enumerate_generators(&d).len(), p);
        assert_eq!(signed_count(&d).unwrap().enumerated, BigInt::from(p));
    }
}

#[test]
fn malformed_diagrams_are_rejected() {
    assert!(HeegaardDiagram::new(0, vec![]).is_err());
    assert!(HeegaardDiagram::new(1, vec![(1, 0, "x".into(), 1)]).is_err());
    assert!(HeegaardDiagram::new(1, vec![(0, 0, "x".into(), 2)]).is_err());
    assert!(HeegaardDiagram::new(1, vec![(0, 0, "x".into(), 1), (0, 0, "x".into(), -1)]).is_err());
}
