//! Builds a few complexes by hand and reads off their homology.

use num_bigint::BigInt;

use floer_algebra::complex::chain_map::{mapping_cone, ChainMap};
use floer_algebra::complex::graded::{tensor_product, ComplexBuilder};
use floer_algebra::complex::homology::homology;
use floer_algebra::Gf2;

fn main() -> floer_algebra::Result<()> {
    // cellular chains of RP³: ∂e2 = 2·e1
    let rp3 = ComplexBuilder::<BigInt>::new()
        .generator("e0", 0)
        .generator("e1", 1)
        .generator("e2", 2)
        .generator("e3", 3)
        .entry("e2", "e1", BigInt::from(2))
        .build()?;
    println!("H(RP³; ℤ):\n{}", homology(&rp3)?);

    let rp3_mod2 = ComplexBuilder::<Gf2>::new()
        .generator("e0", 0)
        .generator("e1", 1)
        .generator("e2", 2)
        .generator("e3", 3)
        .build()?;
    println!("H(RP³; ℤ/2):\n{}", homology(&rp3_mod2)?);

    let square = tensor_product(&rp3, &rp3)?;
    println!("H(RP³ × RP³; ℤ) has {} generators at chain level:\n{}", square.len(), homology(&square)?);

    println!("H(RP³[2]):\n{}", homology(&rp3.shift(2))?);

    let cone = mapping_cone(&ChainMap::identity(rp3))?;
    println!("cone of the identity is acyclic: {}", homology(&cone)?.is_zero());
    Ok(())
}
