//! Tensor products of U-complexes and the identities behind the connected
//! sum formula: E S_U(C) against S_{U+u}(C ⊗ V), the deck transformation,
//! and the explicit homotopy between U₁⊗1 and −1⊗U₂.

use num_bigint::BigInt;
use num_rational::BigRational;

use floer_algebra::connect_sum::{explicit_null_homotopy, product_ucomplex, u_vs_t_action, verify_e_su_identity};
use floer_algebra::equivariant::{cpn_ucomplex, Flavor};
use floer_algebra::DegreeWindow;

fn main() -> floer_algebra::Result<()> {
    let c = cpn_ucomplex::<BigInt>(1)?;
    let window = DegreeWindow::new(-12, 12)?;
    let q = cpn_ucomplex::<BigRational>(1)?;
    for flavor in Flavor::MAIN {
        println!("{}", verify_e_su_identity(&c, flavor, window)?);
        // comparing the two actions on homology needs a field
        println!("{}", u_vs_t_action(&q, flavor, window)?);
    }

    let p = product_ucomplex(&c, &cpn_ucomplex::<BigInt>(2)?)?;
    println!("CP¹ ⊗ CP² has {} generators", p.product.base().len());
    let nh = explicit_null_homotopy(&p)?;
    println!("closed-form homotopy verifies: {}", nh.verify());
    println!("solver finds one too: {}", nh.cross_check()?);
    Ok(())
}
