//! Reading and writing the plain-text complex and diagram formats.

use floer_algebra::io::{emit_any, emit_diagram_file, parse_complex_file, parse_diagram_file};

const HOPF: &str = "\
ring Z
# CP¹ with U the cap product by the hyperplane class
generators
  c0 0
  c2 2
umap
  c2 c0 1
";

const LAURENT: &str = "\
ring Z2
deg_t 0
generators
  a 1
  b 0
differential
  a b 1
  a b 1 t^1
";

const DIAGRAM: &str = "\
genus 1
point 1 1 x +
point 1 1 y +
point 1 1 z -
";

fn main() -> floer_algebra::Result<()> {
    for text in [HOPF, LAURENT] {
        let c = parse_complex_file(text)?;
        println!("read a {} over {}; canonical form:\n{}", c.kind(), c.ring(), emit_any(&c));
    }
    let d = parse_diagram_file(DIAGRAM)?;
    print!("{}", emit_diagram_file(&d));

    match parse_complex_file("ring Z\ngenerators\n  a 0\ndifferential\n  a q 1\n") {
        Err(e) => println!("error: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
