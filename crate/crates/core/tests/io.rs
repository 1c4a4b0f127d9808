use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use floer_algebra::cli::{golden_file, golden_file_names};
use floer_algebra::equivariant::s_bundle;
use floer_algebra::io::{
    emit_any, emit_complex, emit_diagram_file, parse_complex_as, parse_complex_file, parse_diagram_file, ComplexObject,
    DiagramFile,
};
use floer_algebra::random::{random_complex, random_diagram, random_laurent, random_ucomplex, seeded, RandomRing, Shape};
use floer_algebra::{Error, Gf2};

fn round_trip<R: RandomRing>(obj: ComplexObject<R>) -> Result<(), TestCaseError> {
    let text = emit_complex(&obj);
    let back = parse_complex_as::<R>(&text).unwrap();
    prop_assert_eq!(back.kind(), obj.kind());
    prop_assert_eq!(back.base(), obj.base());
    if let (ComplexObject::Laurent(a), ComplexObject::Laurent(b)) = (&obj, &back) {
        prop_assert_eq!(a, b);
    }
    prop_assert_eq!(emit_complex(&back), text);
    Ok(())
}

fn all_kinds<R: RandomRing>(seed: u64) -> Result<(), TestCaseError> {
    let mut rng = seeded(seed);
    let shape = Shape::default();
    round_trip(ComplexObject::Plain(random_complex::<R, _>(&mut rng, shape).unwrap().complex))?;
    let u = random_ucomplex::<R, _>(&mut rng, shape).unwrap();
    round_trip(ComplexObject::J(s_bundle(&u).unwrap()))?;
    round_trip(ComplexObject::U(u))?;
    round_trip(ComplexObject::Laurent(random_laurent::<R, _>(&mut rng, shape, -2).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn complex_files_round_trip(seed in any::<u64>()) {
        all_kinds::<Gf2>(seed)?;
        all_kinds::<BigInt>(seed)?;
        all_kinds::<BigRational>(seed)?;
    }

    #[test]
    fn diagram_files_round_trip(seed in any::<u64>(), genus in 1usize..=3, deg_t in -4i64..=0) {
        let f = DiagramFile { diagram: random_diagram(&mut seeded(seed), genus, 2), degrees: None, deg_t };
        prop_assert_eq!(parse_diagram_file(&emit_diagram_file(&f)).unwrap(), f);
    }

    #[test]
    fn parser_never_panics(text in "[a-z0-9 ^\\-\n#/]{0,200}") {
        let _ = parse_complex_file(&text);
        let _ = parse_diagram_file(&text);
    }
}

#[test]
fn golden_inputs_are_canonical_after_one_pass() {
    let mut seen = 0;
    for name in golden_file_names() {
        let text = golden_file(name).unwrap();
        if name.ends_with(".cx") {
            let once = emit_any(&parse_complex_file(text).unwrap());
            assert_eq!(emit_any(&parse_complex_file(&once).unwrap()), once, "{name}");
        } else {
            let once = emit_diagram_file(&parse_diagram_file(text).unwrap());
            assert_eq!(emit_diagram_file(&parse_diagram_file(&once).unwrap()), once, "{name}");
        }
        seen += 1;
    }
    assert_eq!(seen, 6);
}

#[test]
fn errors_point_at_the_line() {
    let text = "ring Z\ngenerators\n  a 0\n  b 1\ndifferential\n  b c 1\n";
    match parse_complex_file(text) {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 6),
        other => panic!("expected a parse error, got {other:?}"),
    }
    let text = "ring Z\ngenerators\n  a 0\n  b 1\ndifferential\n  b a x\n";
    assert!(matches!(parse_complex_file(text), Err(Error::Parse { line: 6, .. })));
}

#[test]
fn validation_errors_pass_through() {
    // ∂² ≠ 0
    let text = "ring Z\ngenerators\n  a 2\n  b 1\n  c 0\ndifferential\n  a b 1\n  b c 1\n";
    assert!(matches!(parse_complex_file(text), Err(e) if !matches!(e, Error::Parse { .. })));
}

#[test]
fn ring_must_match() {
    let text = "ring Z2\ngenerators\n  a 0\n";
    assert!(matches!(parse_complex_as::<BigInt>(text), Err(Error::RingMismatch(..))));
    assert!(parse_complex_as::<Gf2>(text).is_ok());
}
