//! A Laurent complex over R[t, t⁻¹] filtered by t-power: the minus, full,
//! plus and hat flavors, the pair sequence, and the acyclic bar construction.

use num_bigint::BigInt;

use floer_algebra::complex::graded::Generator;
use floer_algebra::complex::homology::homology;
use floer_algebra::novikov::{laurent_homology, make_laurent, pair_les, single_orbit, su_of_laurent, CutLevel};
use floer_algebra::{DegreeWindow, Gf2, LaurentPoly};

fn main() -> floer_algebra::Result<()> {
    let orbit = single_orbit::<BigInt>(0, -2)?;
    let window = DegreeWindow::new(-12, 12)?;
    let cut = CutLevel::default();
    let pair = pair_les(&orbit, cut, window)?;
    println!("minus:\n{}", pair.minus.homology()?);
    println!("full:\n{}", pair.full.homology()?);
    println!("plus:\n{}", pair.plus.homology()?);
    println!("hat:\n{}", homology(&orbit.hat_complex(cut)?)?);
    println!("pair sequence exact: {}", pair.les.is_exact());

    // ∂a = (1 + t)·b is invertible over F₂(t) but not over F₂[t, t⁻¹];
    // a non-monomial entry is only homogeneous when deg t = 0
    let l = make_laurent::<Gf2, _>(
        vec![Generator::new("a", 1), Generator::new("b", 0)],
        [("a", "b", LaurentPoly::from_terms([(0, Gf2(true)), (1, Gf2(true))]))],
        0,
    )?;
    println!("{l}");
    println!("Laurent homology:\n{}", laurent_homology(&l)?);
    println!("S_u of the orbit:\n{}", laurent_homology(&su_of_laurent(&single_orbit::<Gf2>(0, -2)?)?)?);
    Ok(())
}
