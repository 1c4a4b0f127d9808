//! Seeded random complexes with known homology, for property checks of
//! your own constructions.

use num_bigint::BigInt;

use floer_algebra::complex::homology::homology;
use floer_algebra::equivariant::cone_compare;
use floer_algebra::random::{random_complex, random_laurent, random_ucomplex, seeded, torsion_order, Shape};
use floer_algebra::Gf2;

fn main() -> floer_algebra::Result<()> {
    let mut rng = seeded(2024);
    let shape = Shape::default();

    let rc = random_complex::<BigInt, _>(&mut rng, shape)?;
    let h = homology(&rc.complex)?;
    println!("{} generators after {} basis changes", rc.complex.len(), shape.basis_changes);
    println!("predicted ranks {:?}, computed {:?}", rc.expected_ranks(), h.ranks());
    for n in -4..=3 {
        let (want, got) = (torsion_order(&rc.expected_torsion(n)), torsion_order(h.torsion(n)));
        if want != BigInt::from(1) || got != BigInt::from(1) {
            println!("torsion order in degree {n}: predicted {want}, computed {got}");
        }
    }

    let passing = (0..20)
        .filter(|_| {
            random_ucomplex::<Gf2, _>(&mut rng, shape)
                .and_then(|c| cone_compare(&c))
                .is_ok_and(|c| c.holds())
        })
        .count();
    println!("cone comparison holds on {passing} of 20 random U-complexes");

    let l = random_laurent::<Gf2, _>(&mut rng, shape, -2)?;
    println!("{l}");
    Ok(())
}
