//! The circle bundle S_U(C) of a U-complex. For the cellular chains of CP^n
//! with U the cap product with the hyperplane class, S_U is the Hopf bundle
//! and its homology is that of S^{2n+1}.

use num_bigint::BigInt;
use num_rational::BigRational;

use floer_algebra::equivariant::{bundle_homology, cone_compare, cpn_ucomplex, gysin_check, s_bundle};

fn main() -> floer_algebra::Result<()> {
    for n in 1..=3 {
        let c = cpn_ucomplex::<BigInt>(n)?;
        println!("S_U(CP^{n}):\n{}", bundle_homology(&c)?);
    }

    let c = cpn_ucomplex::<BigInt>(1)?;
    let s = s_bundle(&c)?;
    println!("bundle of CP¹ has {} generators; J is:\n{}", s.base().len(), s.j().matrix().to_dense());

    let cmp = cone_compare(&c)?;
    println!("{cmp}");
    println!("connecting map equals U_*: {}", cmp.holds());
    // the Gysin rank count needs a field
    println!("Gysin ranks agree over ℚ: {}", gysin_check(&cpn_ucomplex::<BigRational>(1)?)?);
    Ok(())
}
