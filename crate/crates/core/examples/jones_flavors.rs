//! Flavors of the Jones construction on a J-complex, computed in a finite
//! degree window, and the fundamental exact sequence relating them.

use num_bigint::BigInt;

use floer_algebra::equivariant::{free_circle, fundamental_ses, jones_flavor, Flavor};
use floer_algebra::DegreeWindow;

fn main() -> floer_algebra::Result<()> {
    let s = free_circle::<BigInt>()?;
    let window = DegreeWindow::new(-20, 4)?;
    println!("window {window}, homology trusted on {:?}", window.safe_range());
    for flavor in Flavor::MAIN {
        let e = jones_flavor(&s, flavor, window)?;
        println!("E^{flavor} of the free circle:\n{}", e.homology()?);
    }

    let f = fundamental_ses(&s, window)?;
    println!("fundamental sequence exact on the safe range: {}", f.exact_on_safe_range());
    Ok(())
}
