//! Inverting U in a graded R[U]-module keeps the free part and kills the
//! U-torsion.

use num_bigint::BigInt;

use floer_algebra::equivariant::{localize, GradedUModule};

fn main() -> floer_algebra::Result<()> {
    let free = GradedUModule::<BigInt>::free(vec![-2]);
    println!("uℤ[u]:\n{}", localize(&free)?);

    for n in 1..=3 {
        println!("ℤ[u]/u^{n}:\n{}", localize(&GradedUModule::<BigInt>::truncated(0, n))?);
    }

    let mixed = GradedUModule::<BigInt>::free(vec![0, 1])
        .direct_sum(&GradedUModule::truncated(2, 4))
        .direct_sum(&GradedUModule::truncated(-3, 1));
    let l = localize(&mixed)?;
    println!("ℤ[u] ⊕ ℤ[u][1] ⊕ torsion:\n{l}");
    println!("degree -7 part: {}", l.in_degree(-7));
    Ok(())
}
