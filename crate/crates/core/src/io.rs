//! Plain-text file formats.
//!
//! A complex file (`.cx`) is line oriented; `#` starts a comment.
//!
//! ```text
//! file      := header section*
//! header    := "ring" ("Z2" | "Z" | "Q") ["deg_t" INT]
//! section   := "generators" (ID INT)*
//!            | "differential" entry*
//!            | "umap" entry*
//!            | "jmap" entry*
//! entry     := ID ID COEFF ["t^" INT]
//! ```
//!
//! An entry `x y c` means `y` occurs in the image of `x` with coefficient `c`.
//! A `deg_t` line makes the file a Laurent complex, in which case each entry
//! may carry a `t^k` factor and `umap`/`jmap` are not allowed. `umap` gives a
//! U-complex, `jmap` a J-complex; a file has at most one of them.
//!
//! A diagram file (`.hd`) lists signed intersection points, curves numbered from 1:
//!
//! ```text
//! genus 2
//! point 1 1 a +
//! point 2 2 b -
//! degrees 0      # optional, one per generator in enumeration order
//! deg_t -2       # optional
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::complex::graded::{Generator, GradedComplex};
use crate::equivariant::{JComplex, UComplex};
use crate::error::{Error, Result};
use crate::heegaard::{enumerate_generators, HeegaardDiagram};
use crate::laurent::LaurentPoly;
use crate::linalg::SparseMatrix;
use crate::novikov::LaurentComplex;
use crate::ring::{BaseRing, Gf2, Ring, RingSpec};

/// The object a complex file describes, over a fixed ring.
#[derive(Clone, Debug)]
pub enum ComplexObject<R> {
    Plain(GradedComplex<R>),
    U(UComplex<R>),
    J(JComplex<R>),
    Laurent(LaurentComplex<R>),
}

impl<R: Ring> ComplexObject<R> {
    pub fn kind(&self) -> &'static str {
        match self {
            ComplexObject::Plain(_) => "complex",
            ComplexObject::U(_) => "U-complex",
            ComplexObject::J(_) => "J-complex",
            ComplexObject::Laurent(_) => "Laurent complex",
        }
    }

    /// The underlying complex, if the object is not a Laurent complex.
    pub fn base(&self) -> Option<&GradedComplex<R>> {
        match self {
            ComplexObject::Plain(c) => Some(c),
            ComplexObject::U(c) => Some(c.base()),
            ComplexObject::J(c) => Some(c.base()),
            ComplexObject::Laurent(_) => None,
        }
    }
}

/// A parsed complex file with its ring made explicit.
#[derive(Clone, Debug)]
pub enum AnyComplex {
    Z2(ComplexObject<Gf2>),
    Z(ComplexObject<BigInt>),
    Q(ComplexObject<BigRational>),
}

impl AnyComplex {
    pub fn ring(&self) -> BaseRing {
        match self {
            AnyComplex::Z2(_) => BaseRing::Zmod2,
            AnyComplex::Z(_) => BaseRing::Z,
            AnyComplex::Q(_) => BaseRing::Q,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            AnyComplex::Z2(o) => o.kind(),
            AnyComplex::Z(o) => o.kind(),
            AnyComplex::Q(o) => o.kind(),
        }
    }
}

/// Runs a generic expression on whichever ring an [`AnyComplex`] carries.
#[macro_export]
macro_rules! with_ring {
    ($any:expr, $obj:ident => $body:expr) => {
        match $any {
            $crate::io::AnyComplex::Z2($obj) => $body,
            $crate::io::AnyComplex::Z($obj) => $body,
            $crate::io::AnyComplex::Q($obj) => $body,
        }
    };
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Section {
    Generators,
    Differential,
    UMap,
    JMap,
}

#[derive(Debug)]
struct RawEntry {
    line: usize,
    from: String,
    to: String,
    coeff: String,
    t_exp: Option<i64>,
}

#[derive(Debug, Default)]
struct RawFile {
    ring: Option<BaseRing>,
    deg_t: Option<i64>,
    generators: Vec<(usize, String, i64)>,
    differential: Vec<RawEntry>,
    umap: Option<Vec<RawEntry>>,
    jmap: Option<Vec<RawEntry>>,
}

fn significant_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = l.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn parse_int(line: usize, s: &str, what: &str) -> Result<i64> {
    s.parse()
        .map_err(|_| parse_err(line, format!("malformed {what} `{s}`")))
}

fn parse_t_power(line: usize, s: &str) -> Result<i64> {
    match s {
        "t" => Ok(1),
        _ => match s.strip_prefix("t^") {
            Some(k) => parse_int(line, k, "t exponent"),
            None => Err(parse_err(line, format!("expected `t^k`, found `{s}`"))),
        },
    }
}

fn lex(text: &str) -> Result<RawFile> {
    let mut raw = RawFile::default();
    let mut section: Option<Section> = None;
    let mut seen_sections = BTreeSet::new();
    for (line, tok) in significant_lines(text) {
        let header = match (tok[0], tok.len()) {
            ("generators", 1) => Some(Section::Generators),
            ("differential", 1) => Some(Section::Differential),
            ("umap", 1) => Some(Section::UMap),
            ("jmap", 1) => Some(Section::JMap),
            _ => None,
        };
        if let Some(s) = header {
            if !seen_sections.insert(tok[0]) {
                return Err(parse_err(line, format!("section `{}` appears twice", tok[0])));
            }
            match s {
                Section::UMap => raw.umap = Some(Vec::new()),
                Section::JMap => raw.jmap = Some(Vec::new()),
                _ => {}
            }
            section = Some(s);
            continue;
        }
        match tok[0] {
            "ring" => {
                if tok.len() != 2 {
                    return Err(parse_err(line, "expected `ring Z2|Z|Q`"));
                }
                if raw.ring.is_some() {
                    return Err(parse_err(line, "ring given twice"));
                }
                raw.ring = Some(tok[1].parse().map_err(|e: String| parse_err(line, e))?);
                continue;
            }
            "deg_t" => {
                if tok.len() != 2 {
                    return Err(parse_err(line, "expected `deg_t k`"));
                }
                if raw.deg_t.is_some() {
                    return Err(parse_err(line, "deg_t given twice"));
                }
                raw.deg_t = Some(parse_int(line, tok[1], "deg_t")?);
                continue;
            }
            _ => {}
        }
        let Some(s) = section else {
            return Err(parse_err(line, format!("unexpected `{}` before any section", tok[0])));
        };
        if s == Section::Generators {
            if tok.len() != 2 {
                return Err(parse_err(line, "expected `id degree`"));
            }
            raw.generators
                .push((line, tok[0].to_string(), parse_int(line, tok[1], "degree")?));
            continue;
        }
        if !(3..=4).contains(&tok.len()) {
            return Err(parse_err(line, "expected `from to coefficient [t^k]`"));
        }
        let entry = RawEntry {
            line,
            from: tok[0].to_string(),
            to: tok[1].to_string(),
            coeff: tok[2].to_string(),
            t_exp: tok.get(3).map(|t| parse_t_power(line, t)).transpose()?,
        };
        match s {
            Section::Differential => raw.differential.push(entry),
            Section::UMap => raw.umap.as_mut().expect("section opened").push(entry),
            Section::JMap => raw.jmap.as_mut().expect("section opened").push(entry),
            Section::Generators => unreachable!(),
        }
    }
    Ok(raw)
}

fn typed_entries<R: Ring>(
    raw: &[RawEntry],
    known: &BTreeSet<&str>,
    allow_t: bool,
) -> Result<Vec<(String, String, R, i64)>> {
    raw.iter()
        .map(|e| {
            for id in [&e.from, &e.to] {
                if !known.contains(id.as_str()) {
                    return Err(parse_err(e.line, format!("unknown generator `{id}`")));
                }
            }
            if e.t_exp.is_some() && !allow_t {
                return Err(parse_err(e.line, "t^k factor outside a Laurent complex (add a deg_t line)"));
            }
            let c = R::parse_coeff(&e.coeff)
                .ok_or_else(|| parse_err(e.line, format!("malformed coefficient `{}`", e.coeff)))?;
            Ok((e.from.clone(), e.to.clone(), c, e.t_exp.unwrap_or(0)))
        })
        .collect()
}

fn build<R: Ring>(raw: &RawFile) -> Result<ComplexObject<R>> {
    let mut known = BTreeSet::new();
    for (line, id, _) in &raw.generators {
        if !known.insert(id.as_str()) {
            return Err(parse_err(*line, format!("duplicate generator `{id}`")));
        }
    }
    let gens: Vec<Generator> = raw
        .generators
        .iter()
        .map(|(_, id, d)| Generator::new(id.clone(), *d))
        .collect();
    let laurent = raw.deg_t.is_some();
    let diff = typed_entries::<R>(&raw.differential, &known, laurent)?;
    if let Some(deg_t) = raw.deg_t {
        if let Some(e) = raw.umap.iter().chain(&raw.jmap).flatten().next() {
            return Err(parse_err(e.line, "umap/jmap are not allowed in a Laurent complex"));
        }
        let entries = diff
            .into_iter()
            .map(|(a, b, c, k)| (a, b, LaurentPoly::monomial(c, k)));
        return Ok(ComplexObject::Laurent(LaurentComplex::new(gens, entries, deg_t)?));
    }
    if raw.umap.is_some() && raw.jmap.is_some() {
        let line = raw.jmap.iter().flatten().map(|e| e.line).next().unwrap_or(0);
        return Err(parse_err(line, "a file may carry umap or jmap, not both"));
    }
    let base = GradedComplex::new(gens, diff.into_iter().map(|(a, b, c, _)| (a, b, c)))?;
    if let Some(u) = &raw.umap {
        let u = typed_entries::<R>(u, &known, false)?;
        return Ok(ComplexObject::U(UComplex::from_entries(
            base,
            u.into_iter().map(|(a, b, c, _)| (a, b, c)),
        )?));
    }
    if let Some(j) = &raw.jmap {
        let j = typed_entries::<R>(j, &known, false)?;
        return Ok(ComplexObject::J(JComplex::from_entries(
            base,
            j.into_iter().map(|(a, b, c, _)| (a, b, c)),
        )?));
    }
    Ok(ComplexObject::Plain(base))
}

pub fn parse_complex_file(text: &str) -> Result<AnyComplex> {
    let raw = lex(text)?;
    let ring = raw
        .ring
        .ok_or_else(|| parse_err(1, "missing `ring` line"))?;
    Ok(match ring {
        BaseRing::Zmod2 => AnyComplex::Z2(build(&raw)?),
        BaseRing::Z => AnyComplex::Z(build(&raw)?),
        BaseRing::Q => AnyComplex::Q(build(&raw)?),
    })
}

/// Parses a file that must be over the ring `R`.
pub fn parse_complex_as<R: Ring>(text: &str) -> Result<ComplexObject<R>> {
    let raw = lex(text)?;
    match raw.ring {
        Some(r) if r == R::spec().base => build(&raw),
        Some(r) => Err(Error::RingMismatch(RingSpec::new(r, false), R::spec())),
        None => Err(parse_err(1, "missing `ring` line")),
    }
}

fn emit_generators(out: &mut String, gens: &[Generator]) {
    out.push_str("generators\n");
    for g in gens {
        let _ = writeln!(out, "  {} {}", g.id, g.degree);
    }
}

fn emit_entries<R: Ring>(out: &mut String, name: &str, m: &SparseMatrix<R>, gens: &[Generator]) {
    if m.is_zero() {
        return;
    }
    let _ = writeln!(out, "{name}");
    emit_body(out, m, gens);
}

/// Canonical text: generators in (degree, id) order, entries in matrix order.
pub fn emit_complex<R: Ring>(obj: &ComplexObject<R>) -> String {
    let mut out = format!("ring {}\n", R::spec().base);
    match obj {
        ComplexObject::Laurent(l) => {
            let _ = writeln!(out, "deg_t {}", l.deg_t());
            emit_generators(&mut out, l.gens());
            if !l.diff().is_zero() {
                out.push_str("differential\n");
                for (a, b, p) in l.entries() {
                    for (e, c) in p.terms() {
                        if e == 0 {
                            let _ = writeln!(out, "  {a} {b} {c}");
                        } else {
                            let _ = writeln!(out, "  {a} {b} {c} t^{e}");
                        }
                    }
                }
            }
        }
        _ => {
            let base = obj.base().expect("not Laurent");
            emit_generators(&mut out, base.gens());
            emit_entries(&mut out, "differential", base.diff(), base.gens());
            match obj {
                ComplexObject::U(u) => {
                    out.push_str("umap\n");
                    emit_body(&mut out, u.u().matrix(), base.gens());
                }
                ComplexObject::J(j) => {
                    out.push_str("jmap\n");
                    emit_body(&mut out, j.j().matrix(), base.gens());
                }
                _ => {}
            }
        }
    }
    out
}

fn emit_body<R: Ring>(out: &mut String, m: &SparseMatrix<R>, gens: &[Generator]) {
    for (i, j, v) in m.iter() {
        let _ = writeln!(out, "  {} {} {}", gens[i].id, gens[j].id, v);
    }
}

pub fn emit_any(c: &AnyComplex) -> String {
    with_ring!(c, o => emit_complex(o))
}

/// A diagram file: the diagram, optional generator degrees, and `deg t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramFile {
    pub diagram: HeegaardDiagram,
    pub degrees: Option<Vec<i64>>,
    pub deg_t: i64,
}

pub fn parse_diagram_file(text: &str) -> Result<DiagramFile> {
    let mut genus = None;
    let mut points = Vec::new();
    let mut degrees: Option<(usize, Vec<i64>)> = None;
    let mut deg_t = None;
    for (line, tok) in significant_lines(text) {
        match tok[0] {
            "genus" if tok.len() == 2 => {
                if genus.is_some() {
                    return Err(parse_err(line, "genus given twice"));
                }
                let g = parse_int(line, tok[1], "genus")?;
                if g < 1 {
                    return Err(parse_err(line, "genus must be at least 1"));
                }
                genus = Some(g as usize);
            }
            "point" if tok.len() == 5 => {
                let i = parse_int(line, tok[1], "alpha index")?;
                let j = parse_int(line, tok[2], "beta index")?;
                let sign = match tok[4] {
                    "+" | "+1" => 1,
                    "-" | "-1" => -1,
                    s => return Err(parse_err(line, format!("malformed sign `{s}`"))),
                };
                points.push((line, i, j, tok[3].to_string(), sign));
            }
            "degrees" => {
                if degrees.is_some() {
                    return Err(parse_err(line, "degrees given twice"));
                }
                let d = tok[1..]
                    .iter()
                    .map(|s| parse_int(line, s, "degree"))
                    .collect::<Result<Vec<_>>>()?;
                degrees = Some((line, d));
            }
            "deg_t" if tok.len() == 2 => {
                if deg_t.is_some() {
                    return Err(parse_err(line, "deg_t given twice"));
                }
                deg_t = Some(parse_int(line, tok[1], "deg_t")?);
            }
            _ => return Err(parse_err(line, format!("unrecognized line starting with `{}`", tok[0]))),
        }
    }
    let genus = genus.ok_or_else(|| parse_err(1, "missing `genus` line"))?;
    let mut ids = BTreeSet::new();
    let mut checked = Vec::with_capacity(points.len());
    for (line, i, j, id, sign) in points {
        let range = 1..=genus as i64;
        if !range.contains(&i) || !range.contains(&j) {
            return Err(parse_err(line, format!("curve index out of range 1..{genus}")));
        }
        if !ids.insert(id.clone()) {
            return Err(parse_err(line, format!("duplicate point `{id}`")));
        }
        checked.push(((i - 1) as usize, (j - 1) as usize, id, sign));
    }
    let diagram = HeegaardDiagram::new(genus, checked)?;
    if let Some((line, d)) = &degrees {
        let n = enumerate_generators(&diagram).len();
        if d.len() != n {
            return Err(parse_err(*line, format!("{} degrees for {n} generators", d.len())));
        }
    }
    Ok(DiagramFile {
        diagram,
        degrees: degrees.map(|(_, d)| d),
        deg_t: deg_t.unwrap_or(-2),
    })
}

pub fn emit_diagram_file(f: &DiagramFile) -> String {
    let mut out = format!("genus {}\n", f.diagram.genus());
    for (i, j, p) in f.diagram.all_points() {
        let sign = if p.sign > 0 { '+' } else { '-' };
        let _ = writeln!(out, "point {} {} {} {sign}", i + 1, j + 1, p.id);
    }
    if let Some(d) = &f.degrees {
        let d: Vec<String> = d.iter().map(i64::to_string).collect();
        let _ = writeln!(out, "degrees {}", d.join(" "));
    }
    let _ = writeln!(out, "deg_t {}", f.deg_t);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const CP1: &str = "\
# CP^1 with U mapping the top cell to the bottom
ring Z
generators
  c2 2
  c0 0
umap
  c2 c0 1
";

    #[test]
    fn parses_u_complex() {
        let c = parse_complex_file(CP1).unwrap();
        assert_eq!(c.ring(), BaseRing::Z);
        assert_eq!(c.kind(), "U-complex");
        let text = emit_any(&c);
        assert!(text.starts_with("ring Z\ngenerators\n  c0 0\n  c2 2\numap\n"));
        assert_eq!(emit_any(&parse_complex_file(&text).unwrap()), text);
    }

    #[test]
    fn parses_laurent_complex() {
        let text = "ring Z2\ndeg_t -2\ngenerators\n a 1\n b 0\ndifferential\n a b 1\n a b 1 t^0\n";
        let c = parse_complex_file(text).unwrap();
        // the two entries cancel mod 2
        let AnyComplex::Z2(ComplexObject::Laurent(l)) = &c else {
            panic!("expected a Laurent complex");
        };
        assert!(l.diff().is_zero());
        let text = "ring Z\ndeg_t -2\ngenerators\n a 1\n b 2\ndifferential\n a b 3 t^1\n";
        let out = emit_any(&parse_complex_file(text).unwrap());
        assert_eq!(out, "ring Z\ndeg_t -2\ngenerators\n  a 1\n  b 2\ndifferential\n  a b 3 t^1\n");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "ring Z\ngenerators\n x 0\n y 1\ndifferential\n y x 1.5\n";
        assert_eq!(
            parse_complex_file(bad).unwrap_err(),
            parse_err(6, "malformed coefficient `1.5`")
        );
        let Error::Parse { line, .. } = parse_complex_file("ring Z\ngenerators\n x 0\ndifferential\n x z 1\n").unwrap_err()
        else {
            panic!("expected a parse error");
        };
        assert_eq!(line, 5);
        assert!(matches!(
            parse_complex_file("generators\n x 0\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_complex_file("ring Z\ngenerators\n x 0\n y 1\ndifferential\n y x 1 t^1\n"),
            Err(Error::Parse { line: 6, .. })
        ));
        assert!(matches!(
            parse_complex_file("ring Z\nx 0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn validation_errors_pass_through() {
        let err = parse_complex_file("ring Z\ngenerators\n x 0\n y 0\ndifferential\n y x 1\n").unwrap_err();
        assert!(matches!(err, Error::DegreeViolation { .. }));
    }

    #[test]
    fn ring_mismatch_is_reported() {
        assert!(matches!(parse_complex_as::<Gf2>(CP1), Err(Error::RingMismatch(..))));
        assert!(parse_complex_as::<BigInt>(CP1).is_ok());
    }

    #[test]
    fn diagram_round_trip() {
        let text = "genus 2\npoint 1 1 a +\npoint 2 2 b -\ndegrees 3\n";
        let f = parse_diagram_file(text).unwrap();
        assert_eq!(f.deg_t, -2);
        assert_eq!(f.degrees, Some(vec![3]));
        let out = emit_diagram_file(&f);
        assert_eq!(parse_diagram_file(&out).unwrap(), f);
        assert!(matches!(
            parse_diagram_file("genus 1\npoint 1 2 a +\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_diagram_file("genus 1\npoint 1 1 a +\ndegrees 0 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
    }
}
