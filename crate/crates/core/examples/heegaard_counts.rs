//! Generators of a Heegaard diagram are matchings of α and β curves; their
//! signed count is the determinant of the intersection matrix.

use floer_algebra::heegaard::{enumerate_generators, lens_space_diagram, s1xs2_diagram, signed_count, HeegaardDiagram};

fn main() -> floer_algebra::Result<()> {
    for p in 1..=5 {
        let c = signed_count(&lens_space_diagram(p))?;
        println!("L({p},1): {} generators, signed count {}", c.generators, c.enumerated);
    }
    println!("S¹×S²: signed count {}", signed_count(&s1xs2_diagram())?.enumerated);

    let d = HeegaardDiagram::new(
        2,
        vec![
            (0, 0, "a".into(), 1),
            (0, 0, "b".into(), -1),
            (0, 1, "c".into(), 1),
            (1, 0, "d".into(), 1),
            (1, 1, "e".into(), 1),
        ],
    )?;
    println!("intersection matrix:\n{}", d.count_matrix());
    for g in enumerate_generators(&d) {
        println!("  {g}");
    }
    let c = signed_count(&d)?;
    println!("enumerated {} = determinant {}", c.enumerated, c.determinant);
    Ok(())
}
