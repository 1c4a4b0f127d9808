//! The `floer` command line: argument parsing, per-command reports and the
//! golden corpus.
//!
//! Every report ends with one `CHECK <name> PASS|FAIL` line per check. Exit
//! status is 0 when all checks pass, 1 when one fails, 2 for usage and input
//! errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::complex::chain_map::{mapping_cone, ChainMap};
use crate::complex::graded::GradedComplex;
use crate::complex::homology::{homology, HomologyReport};
use crate::connect_sum::{explicit_null_homotopy, product_ucomplex, u_vs_t_action, verify_e_su_identity};
use crate::equivariant::bundle::rows_of;
use crate::equivariant::{
    cone_compare, fundamental_ses, gysin_check, jones_flavor, s_bundle, umap_on_homology, Flavor, JComplex, UComplex,
};
use crate::error::{Error, Result};
use crate::heegaard::{enumerate_generators, formal_cf_module, signed_count};
use crate::io::{parse_complex_file, parse_diagram_file, AnyComplex, ComplexObject, DiagramFile};
use crate::laurent::LaurentPoly;
use crate::novikov::{laurent_homology, pair_les, slice_sequence, su_of_laurent, CutLevel, LaurentComplex};
use crate::ring::{Gf2, Ring};
use crate::window::DegreeWindow;
use crate::with_ring;

#[derive(Debug, Parser)]
#[command(name = "floer", version, about = "Exact chain-level computations for S^1-bundles, equivariant flavors and Novikov filtrations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Homology of a complex file.
    Homology { file: PathBuf },
    /// The circle bundle S_U(C) of a U-complex and its cone sequence.
    Sbundle { file: PathBuf },
    /// A Jones flavor of a J-complex (or of S_U of a U-complex) in a window.
    Jones {
        file: PathBuf,
        #[arg(long, default_value = "minus")]
        flavor: Flavor,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true, default_values_t = [-12, 12])]
        window: Vec<i64>,
    },
    /// Filtered flavors of a Laurent complex and the pair sequence.
    Flavors {
        file: PathBuf,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        cut: i64,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true, default_values_t = [-12, 12])]
        window: Vec<i64>,
    },
    /// Fiber product of two U-complexes and its flavored identity.
    Consum {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long, default_value = "minus")]
        flavor: Flavor,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true, default_values_t = [-12, 12])]
        window: Vec<i64>,
    },
    /// Generators and signed count of a Heegaard diagram file.
    Heegaard { file: PathBuf },
    /// Runs every applicable check on a complex or diagram file.
    Verify { file: PathBuf },
    /// Recomputes the built-in golden corpus and compares with the stored reports.
    Golden,
}

/// Exit status and the text destined for standard output and standard error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: impl std::fmt::Display) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

#[derive(Default)]
struct Report {
    out: String,
    checks: Vec<(String, bool)>,
}

impl Report {
    fn line(&mut self, s: impl std::fmt::Display) {
        let _ = writeln!(self.out, "{s}");
    }

    fn block(&mut self, s: impl std::fmt::Display) {
        let _ = write!(self.out, "{s}");
    }

    fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push((name.into(), ok));
    }

    /// Records a check whose computation may fail; a failure counts as FAIL
    /// and its message is kept in the report.
    fn check_result(&mut self, name: impl Into<String>, r: Result<bool>) {
        let name = name.into();
        match r {
            Ok(ok) => self.check(name, ok),
            Err(e) => {
                self.line(format!("  {name}: {e}"));
                self.check(name, false);
            }
        }
    }

    fn finish(mut self) -> Outcome {
        for (name, ok) in &self.checks {
            let _ = writeln!(self.out, "CHECK {name} {}", if *ok { "PASS" } else { "FAIL" });
        }
        let code = if self.checks.iter().all(|(_, ok)| *ok) { 0 } else { 1 };
        Outcome {
            code,
            stdout: self.out,
            stderr: String::new(),
        }
    }
}

/// Coefficient rings the command line runs on. Checks that need a field run
/// over `ℚ` when the file is over `ℤ`.
trait CliRing: Ring {
    fn gysin(c: &UComplex<Self>) -> Result<bool>;
    fn t_action(c: &UComplex<Self>, flavor: Flavor, window: DegreeWindow) -> Result<bool>;
    fn mc_bar(l: &LaurentComplex<Self>) -> Result<bool>;
}

fn mc_bar_direct<R: Ring>(l: &LaurentComplex<R>) -> Result<bool> {
    Ok(laurent_homology(&su_of_laurent(l)?)?.is_zero())
}

impl CliRing for Gf2 {
    fn gysin(c: &UComplex<Self>) -> Result<bool> {
        gysin_check(c)
    }

    fn t_action(c: &UComplex<Self>, flavor: Flavor, window: DegreeWindow) -> Result<bool> {
        Ok(u_vs_t_action(c, flavor, window)?.holds())
    }

    fn mc_bar(l: &LaurentComplex<Self>) -> Result<bool> {
        mc_bar_direct(l)
    }
}

impl CliRing for BigRational {
    fn gysin(c: &UComplex<Self>) -> Result<bool> {
        gysin_check(c)
    }

    fn t_action(c: &UComplex<Self>, flavor: Flavor, window: DegreeWindow) -> Result<bool> {
        Ok(u_vs_t_action(c, flavor, window)?.holds())
    }

    fn mc_bar(l: &LaurentComplex<Self>) -> Result<bool> {
        mc_bar_direct(l)
    }
}

fn to_rational_complex(c: &GradedComplex<BigInt>) -> Result<GradedComplex<BigRational>> {
    let gens = c.gens();
    GradedComplex::new(
        gens.to_vec(),
        c.diff()
            .iter()
            .map(|(i, j, v)| (gens[i].id.clone(), gens[j].id.clone(), BigRational::from(v.clone()))),
    )
}

fn to_rational_u(c: &UComplex<BigInt>) -> Result<UComplex<BigRational>> {
    let gens = c.base().gens();
    UComplex::from_entries(
        to_rational_complex(c.base())?,
        c.u()
            .matrix()
            .iter()
            .map(|(i, j, v)| (gens[i].id.clone(), gens[j].id.clone(), BigRational::from(v.clone()))),
    )
}

impl CliRing for BigInt {
    fn gysin(c: &UComplex<Self>) -> Result<bool> {
        gysin_check(&to_rational_u(c)?)
    }

    fn t_action(c: &UComplex<Self>, flavor: Flavor, window: DegreeWindow) -> Result<bool> {
        Ok(u_vs_t_action(&to_rational_u(c)?, flavor, window)?.holds())
    }

    fn mc_bar(l: &LaurentComplex<Self>) -> Result<bool> {
        let q = LaurentComplex::new(
            l.gens().to_vec(),
            l.entries().map(|(a, b, p)| {
                (
                    a.to_string(),
                    b.to_string(),
                    LaurentPoly::from_terms(p.terms().map(|(e, c)| (e, BigRational::from(c.clone())))),
                )
            }),
            l.deg_t(),
        )?;
        mc_bar_direct(&q)
    }
}

/// Supplies file contents by path.
trait Source {
    fn read(&self, path: &Path) -> std::result::Result<String, String>;
}

struct FileSystem;

impl Source for FileSystem {
    fn read(&self, path: &Path) -> std::result::Result<String, String> {
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match cli.command {
        Command::Golden => golden(),
        cmd => execute(&cmd, &FileSystem),
    }
}

fn window_of(w: &[i64]) -> Result<DegreeWindow> {
    DegreeWindow::new(w[0], w[1])
}

fn load_complex(src: &dyn Source, path: &Path) -> std::result::Result<AnyComplex, Outcome> {
    let text = src.read(path).map_err(Outcome::usage)?;
    parse_complex_file(&text).map_err(|e| Outcome::usage(format!("{}: {e}", file_name(path))))
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

fn execute(cmd: &Command, src: &dyn Source) -> Outcome {
    let run = || -> std::result::Result<Outcome, Outcome> {
        let mut rep = Report::default();
        match cmd {
            Command::Homology { file } => {
                let c = load_complex(src, file)?;
                with_ring!(&c, o => homology_cmd(o, &mut rep)).map_err(Outcome::usage)?;
            }
            Command::Sbundle { file } => {
                let c = load_complex(src, file)?;
                with_ring!(&c, o => sbundle_cmd(o, &mut rep)).map_err(Outcome::usage)?;
            }
            Command::Jones { file, flavor, window } => {
                let c = load_complex(src, file)?;
                let w = window_of(window).map_err(Outcome::usage)?;
                with_ring!(&c, o => jones_cmd(o, *flavor, w, &mut rep)).map_err(Outcome::usage)?;
            }
            Command::Flavors { file, cut, window } => {
                let c = load_complex(src, file)?;
                let w = window_of(window).map_err(Outcome::usage)?;
                let cut = CutLevel { offset: *cut };
                with_ring!(&c, o => flavors_cmd(o, cut, w, &mut rep)).map_err(Outcome::usage)?;
            }
            Command::Consum {
                file1,
                file2,
                flavor,
                window,
            } => {
                let a = load_complex(src, file1)?;
                let b = load_complex(src, file2)?;
                let w = window_of(window).map_err(Outcome::usage)?;
                let r = match (&a, &b) {
                    (AnyComplex::Z2(x), AnyComplex::Z2(y)) => consum_cmd(x, y, *flavor, w, &mut rep),
                    (AnyComplex::Z(x), AnyComplex::Z(y)) => consum_cmd(x, y, *flavor, w, &mut rep),
                    (AnyComplex::Q(x), AnyComplex::Q(y)) => consum_cmd(x, y, *flavor, w, &mut rep),
                    _ => Err(Error::DimensionMismatch(format!(
                        "files are over different rings ({} and {})",
                        a.ring(),
                        b.ring()
                    ))),
                };
                r.map_err(Outcome::usage)?;
            }
            Command::Heegaard { file } => {
                let text = src.read(file).map_err(Outcome::usage)?;
                let d = parse_diagram_file(&text).map_err(|e| Outcome::usage(format!("{}: {e}", file_name(file))))?;
                heegaard_cmd(&d, &mut rep).map_err(Outcome::usage)?;
            }
            Command::Verify { file } => {
                let text = src.read(file).map_err(Outcome::usage)?;
                let is_diagram = text
                    .lines()
                    .map(|l| l.split('#').next().unwrap_or("").trim())
                    .find(|l| !l.is_empty())
                    .is_some_and(|l| l.starts_with("genus"));
                if is_diagram {
                    let d = parse_diagram_file(&text).map_err(|e| Outcome::usage(format!("{}: {e}", file_name(file))))?;
                    heegaard_cmd(&d, &mut rep).map_err(Outcome::usage)?;
                } else {
                    let c = parse_complex_file(&text).map_err(|e| Outcome::usage(format!("{}: {e}", file_name(file))))?;
                    with_ring!(&c, o => verify_cmd(o, &mut rep)).map_err(Outcome::usage)?;
                }
            }
            Command::Golden => unreachable!("handled by dispatch"),
        }
        Ok(rep.finish())
    };
    run().unwrap_or_else(|e| e)
}

fn homology_table<R: Ring>(rep: &mut Report, title: &str, h: &HomologyReport<R>) {
    rep.line(title);
    rep.block(h);
}

fn u_star_lines<R: Ring>(rep: &mut Report, c: &UComplex<R>) -> Result<()> {
    rep.line("U_* on homology");
    let maps = umap_on_homology(c)?;
    let mut any = false;
    for (n, m) in &maps {
        if m.rows() > 0 && m.cols() > 0 {
            rep.line(format!("  H_{n} -> H_{}: {:?}", n - 2, rows_of(m)));
            any = true;
        }
    }
    if !any {
        rep.line("  (zero)");
    }
    Ok(())
}

fn homology_cmd<R: CliRing>(o: &ComplexObject<R>, rep: &mut Report) -> Result<()> {
    match o {
        ComplexObject::Laurent(l) => {
            rep.block(l);
            match laurent_homology(l) {
                Ok(h) => {
                    let m = -l.deg_t();
                    rep.line(format!("homology over {}", LaurentPoly::<R>::spec()));
                    if h.is_zero() {
                        rep.line("  (all zero)");
                    }
                    for (r, g) in &h.groups {
                        if m == 0 {
                            rep.line(format!("  H_{r} = {g}"));
                        } else {
                            rep.line(format!("  degrees = {r} mod {m}: {g}"));
                        }
                    }
                }
                Err(Error::UnsupportedRing(spec)) => {
                    rep.line(format!("homology over {spec}: not computed (not a principal ideal domain)"));
                }
                Err(e) => return Err(e),
            }
            let hat = homology(&l.hat_complex(CutLevel::default())?)?;
            homology_table(rep, "hat flavor (cut offset 1)", &hat);
        }
        _ => {
            let base = o.base().expect("not Laurent");
            rep.block(base);
            homology_table(rep, "homology", &homology(base)?);
            if let ComplexObject::U(u) = o {
                u_star_lines(rep, u)?;
            }
        }
    }
    rep.check("boundary_squared_zero", true);
    Ok(())
}

fn require_u<R: Ring>(o: &ComplexObject<R>) -> Result<&UComplex<R>> {
    match o {
        ComplexObject::U(u) => Ok(u),
        other => Err(Error::DimensionMismatch(format!(
            "this command needs a U-complex (a file with a umap section), found a {}",
            other.kind()
        ))),
    }
}

fn sbundle_cmd<R: CliRing>(o: &ComplexObject<R>, rep: &mut Report) -> Result<()> {
    let c = require_u(o)?;
    homology_table(rep, "homology of C", &homology(c.base())?);
    u_star_lines(rep, c)?;
    let s = s_bundle(c)?;
    homology_table(rep, "homology of S_U(C)", &homology(s.base())?);
    rep.check("j_squared_zero", true);
    cone_checks(c, rep);
    Ok(())
}

fn cone_checks<R: CliRing>(c: &UComplex<R>, rep: &mut Report) {
    match cone_compare(c) {
        Ok(cmp) => {
            rep.block(&cmp);
            rep.check("cone_les_exact", cmp.les.is_exact());
            rep.check("connecting_map_is_u", cmp.sign.is_some());
        }
        Err(e) => {
            rep.line(format!("  cone sequence: {e}"));
            rep.check("cone_les_exact", false);
            rep.check("connecting_map_is_u", false);
        }
    }
    rep.check_result("gysin_ranks", R::gysin(c));
}

fn jones_cmd<R: CliRing>(o: &ComplexObject<R>, flavor: Flavor, window: DegreeWindow, rep: &mut Report) -> Result<()> {
    let s: JComplex<R> = match o {
        ComplexObject::J(j) => j.clone(),
        ComplexObject::U(u) => {
            rep.line("using the J-complex S_U(C)");
            s_bundle(u)?
        }
        other => {
            return Err(Error::DimensionMismatch(format!(
                "this command needs a J-complex or a U-complex, found a {}",
                other.kind()
            )))
        }
    };
    let e = jones_flavor(&s, flavor, window)?;
    let (lo, hi) = window.safe_range();
    rep.line(format!(
        "E^{flavor} in window {window} ({} generators), homology on degrees {lo}..={hi}",
        e.complex.len()
    ));
    rep.block(e.homology()?);
    let f = fundamental_ses(&s, window)?;
    rep.line("fundamental sequence 0 -> uE^- -> E^infty -> E^+ -> 0");
    rep.block(f.les.restrict(lo, hi));
    rep.check("fundamental_les_exact", f.les.is_exact());
    if let ComplexObject::U(u) = o {
        let id = verify_e_su_identity(u, flavor, window)?;
        rep.block(&id);
        rep.check(format!("e_su_identity_{flavor}"), id.holds());
    }
    Ok(())
}

fn require_laurent<R: Ring>(o: &ComplexObject<R>) -> Result<&LaurentComplex<R>> {
    match o {
        ComplexObject::Laurent(l) => Ok(l),
        other => Err(Error::DimensionMismatch(format!(
            "this command needs a Laurent complex (a file with a deg_t line), found a {}",
            other.kind()
        ))),
    }
}

fn flavor_table<R: Ring>(rep: &mut Report, columns: &[(&str, &HomologyReport<R>)], lo: i64, hi: i64) {
    let mut header = format!("  {:>5}", "n");
    for (name, _) in columns {
        let _ = write!(header, "  {name:<12}");
    }
    rep.line(header.trim_end());
    for n in (lo..=hi).rev() {
        let mut row = format!("  {n:>5}");
        for (_, h) in columns {
            let g = h.groups.get(&n).map_or_else(|| "0".to_string(), ToString::to_string);
            let _ = write!(row, "  {g:<12}");
        }
        rep.line(row.trim_end());
    }
}

fn flavors_cmd<R: CliRing>(o: &ComplexObject<R>, cut: CutLevel, window: DegreeWindow, rep: &mut Report) -> Result<()> {
    let l = require_laurent(o)?;
    rep.block(l);
    let sp = l.check_semipositive();
    for (a, b, e) in &sp.violations {
        rep.line(format!("  negative power t^{e} in {a} -> {b}"));
    }
    rep.check("semipositive", sp.is_ok());
    if !sp.is_ok() {
        return Ok(());
    }
    let pair = pair_les(l, cut, window)?;
    let (lo, hi) = window.safe_range();
    let minus = pair.minus.homology()?;
    let full = pair.full.homology()?;
    let plus = pair.plus.homology()?;
    let hat = homology(&l.hat_complex(cut)?)?;
    rep.line(format!(
        "flavors with cut offset {} in window {window}, degrees {lo}..={hi}",
        cut.offset
    ));
    flavor_table(rep, &[("minus", &minus), ("infty", &full), ("plus", &plus)], lo, hi);
    homology_table(rep, "hat", &hat);
    rep.line("pair sequence 0 -> minus -> infty -> plus -> 0");
    rep.block(pair.les.restrict(lo, hi));
    rep.check("pair_les_exact", pair.les.is_exact());
    rep.check_result("slice_les_exact", slice_sequence(l, cut, window).map(|s| s.is_exact()));
    if l.deg_t() == -2 {
        rep.check_result("mc_bar_acyclic", R::mc_bar(l));
    }
    Ok(())
}

fn consum_cmd<R: CliRing>(
    a: &ComplexObject<R>,
    b: &ComplexObject<R>,
    flavor: Flavor,
    window: DegreeWindow,
    rep: &mut Report,
) -> Result<()> {
    let p = product_ucomplex(require_u(a)?, require_u(b)?)?;
    rep.line(format!("product with {} generators, U = U1 x 1 + 1 x U2", p.product.base().len()));
    homology_table(rep, "homology of C1 x C2", &homology(p.product.base())?);
    let id = verify_e_su_identity(&p.product, flavor, window)?;
    rep.block(&id);
    rep.check(format!("e_su_identity_{flavor}"), id.holds());
    let nh = explicit_null_homotopy(&p)?;
    rep.check("null_homotopy_explicit", nh.verify());
    rep.check_result("null_homotopy_solver", nh.cross_check());
    rep.check_result(format!("t_action_{flavor}"), R::t_action(&p.product, flavor, window));
    Ok(())
}

fn permanent(counts: &[Vec<usize>]) -> usize {
    use itertools::Itertools;
    let g = counts.len();
    (0..g)
        .permutations(g)
        .map(|s| (0..g).map(|i| counts[i][s[i]]).product::<usize>())
        .sum()
}

fn heegaard_cmd(f: &DiagramFile, rep: &mut Report) -> Result<()> {
    let d = &f.diagram;
    let gens = enumerate_generators(d);
    rep.line(format!("genus {} diagram, {} generators", d.genus(), gens.len()));
    for g in &gens {
        rep.line(format!("  {g}"));
    }
    rep.line("signed intersection counts #(alpha_i, beta_j)");
    rep.block(d.count_matrix());
    match signed_count(d) {
        Ok(c) => {
            rep.line(format!("signed count {} = determinant {}", c.enumerated, c.determinant));
            rep.check("determinant_formula", true);
        }
        Err(Error::InternalMismatch(m)) => {
            rep.line(format!("signed count mismatch: {m}"));
            rep.check("determinant_formula", false);
        }
        Err(e) => return Err(e),
    }
    let counts: Vec<Vec<usize>> = (0..d.genus())
        .map(|i| (0..d.genus()).map(|j| d.points(i, j).len()).collect())
        .collect();
    rep.check("generator_count_is_permanent", permanent(&counts) == gens.len());
    if let Some(deg) = &f.degrees {
        let l = formal_cf_module::<BigInt>(d, deg, f.deg_t)?;
        rep.line(format!("chain group as a Laurent complex, deg t = {}", f.deg_t));
        homology_table(rep, "hat flavor (cut offset 1)", &homology(&l.hat_complex(CutLevel::default())?)?);
    }
    Ok(())
}

const VERIFY_WINDOW: (i64, i64) = (-12, 12);

fn plain_checks<R: CliRing>(c: &GradedComplex<R>, rep: &mut Report) -> Result<()> {
    let h = homology(c)?;
    homology_table(rep, "homology", &h);
    rep.check("boundary_squared_zero", true);
    let shifted = homology(&c.shift(1))?;
    let moved: BTreeMap<i64, _> = h.groups.iter().map(|(n, g)| (n + 1, g.clone())).collect();
    rep.check("shift_homology", shifted.groups == moved);
    let euler_chain: i64 = c.degrees().map(|n| if n.rem_euclid(2) == 0 { 1 } else { -1 }).sum();
    let euler_homology: i64 = h
        .groups
        .iter()
        .map(|(n, g)| if n.rem_euclid(2) == 0 { g.rank as i64 } else { -(g.rank as i64) })
        .sum();
    rep.check("euler_characteristic", euler_chain == euler_homology);
    rep.check_result(
        "cone_of_identity_acyclic",
        mapping_cone(&ChainMap::identity(c.clone())).and_then(|k| homology(&k)).map(|h| h.is_zero()),
    );
    Ok(())
}

fn verify_cmd<R: CliRing>(o: &ComplexObject<R>, rep: &mut Report) -> Result<()> {
    let window = DegreeWindow::new(VERIFY_WINDOW.0, VERIFY_WINDOW.1)?;
    rep.line(format!("{} over {}", o.kind(), R::spec()));
    match o {
        ComplexObject::Plain(c) => plain_checks(c, rep)?,
        ComplexObject::J(j) => {
            plain_checks(j.base(), rep)?;
            rep.check("j_squared_zero", true);
            rep.check_result("fundamental_les_exact", fundamental_ses(j, window).map(|f| f.les.is_exact()));
        }
        ComplexObject::U(u) => {
            plain_checks(u.base(), rep)?;
            u_star_lines(rep, u)?;
            rep.check("u_chain_map", u.u().is_chain_map().ok);
            let s = s_bundle(u)?;
            homology_table(rep, "homology of S_U(C)", &homology(s.base())?);
            cone_checks(u, rep);
            rep.check_result("fundamental_les_exact", fundamental_ses(&s, window).map(|f| f.les.is_exact()));
            for flavor in Flavor::MAIN {
                rep.check_result(
                    format!("e_su_identity_{flavor}"),
                    verify_e_su_identity(u, flavor, window).map(|r| r.holds()),
                );
            }
            for flavor in Flavor::MAIN {
                rep.check_result(format!("t_action_{flavor}"), R::t_action(u, flavor, window));
            }
        }
        ComplexObject::Laurent(l) => {
            let sp = l.check_semipositive();
            rep.check("semipositive", sp.is_ok());
            if sp.is_ok() && l.deg_t() != 0 {
                let cut = CutLevel::default();
                rep.check_result("pair_les_exact", pair_les(l, cut, window).map(|p| p.les.is_exact()));
                rep.check_result("slice_les_exact", slice_sequence(l, cut, window).map(|s| s.is_exact()));
            }
            if l.deg_t() == -2 {
                rep.check_result("mc_bar_acyclic", R::mc_bar(l));
            }
        }
    }
    Ok(())
}

/// One stored report: the command, its input files and the expected output.
struct GoldenCase {
    name: &'static str,
    args: &'static [&'static str],
    expected: &'static str,
}

const GOLDEN_FILES: &[(&str, &str)] = &[
    ("s1xs2_sK.cx", include_str!("../golden/s1xs2_sK.cx")),
    ("cp1_hopf.cx", include_str!("../golden/cp1_hopf.cx")),
    ("free_circle.cx", include_str!("../golden/free_circle.cx")),
    ("torsion.cx", include_str!("../golden/torsion.cx")),
    ("lens_5.hd", include_str!("../golden/lens_5.hd")),
    ("s1xs2.hd", include_str!("../golden/s1xs2.hd")),
];

const GOLDEN_CASES: &[GoldenCase] = &[
    GoldenCase {
        name: "s1xs2_sK.flavors",
        args: &["flavors", "s1xs2_sK.cx", "--cut", "1", "--window", "-12", "12"],
        expected: include_str!("../golden/s1xs2_sK.flavors.expected"),
    },
    GoldenCase {
        name: "cp1_hopf.sbundle",
        args: &["sbundle", "cp1_hopf.cx"],
        expected: include_str!("../golden/cp1_hopf.sbundle.expected"),
    },
    GoldenCase {
        name: "cp1_hopf.verify",
        args: &["verify", "cp1_hopf.cx"],
        expected: include_str!("../golden/cp1_hopf.verify.expected"),
    },
    GoldenCase {
        name: "free_circle.jones",
        args: &["jones", "free_circle.cx", "--flavor", "plus", "--window", "-20", "4"],
        expected: include_str!("../golden/free_circle.jones.expected"),
    },
    GoldenCase {
        name: "torsion.homology",
        args: &["homology", "torsion.cx"],
        expected: include_str!("../golden/torsion.homology.expected"),
    },
    GoldenCase {
        name: "cp1_cp1.consum",
        args: &["consum", "cp1_hopf.cx", "cp1_hopf.cx", "--flavor", "minus", "--window", "-12", "12"],
        expected: include_str!("../golden/cp1_cp1.consum.expected"),
    },
    GoldenCase {
        name: "lens_5.heegaard",
        args: &["heegaard", "lens_5.hd"],
        expected: include_str!("../golden/lens_5.heegaard.expected"),
    },
    GoldenCase {
        name: "s1xs2.heegaard",
        args: &["heegaard", "s1xs2.hd"],
        expected: include_str!("../golden/s1xs2.heegaard.expected"),
    },
];

struct Embedded;

impl Source for Embedded {
    fn read(&self, path: &Path) -> std::result::Result<String, String> {
        let name = file_name(path);
        GOLDEN_FILES
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, t)| (*t).to_string())
            .ok_or_else(|| format!("no golden file named {name}"))
    }
}

/// The contents of a golden input file, by name.
pub fn golden_file(name: &str) -> Option<&'static str> {
    GOLDEN_FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Names of the golden input files.
pub fn golden_file_names() -> impl Iterator<Item = &'static str> {
    GOLDEN_FILES.iter().map(|(n, _)| *n)
}

/// Runs a command against the embedded golden inputs.
pub fn run_embedded(args: &[&str]) -> Outcome {
    let argv = std::iter::once("floer").chain(args.iter().copied());
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(&cli.command, &Embedded),
        Err(e) => Outcome::usage(e),
    }
}

/// Graded ranks of the four filtered flavors of the one-orbit model in
/// window `[-12, 12]`, deck degree −2, cut offset 1.
pub struct GoldenTable {
    pub safe: (i64, i64),
    pub minus: BTreeMap<i64, usize>,
    pub infty: BTreeMap<i64, usize>,
    pub plus: BTreeMap<i64, usize>,
    pub hat: BTreeMap<i64, usize>,
    pub torsion_free: bool,
}

impl GoldenTable {
    /// `minus = uR[u]`, `infty = R[u, u⁻¹]`, `plus = R[u, u⁻¹]/uR[u]`, `hat = R` in degree −2.
    pub fn matches_expected(&self) -> bool {
        let (lo, hi) = self.safe;
        let evens = |a: i64, b: i64| -> BTreeMap<i64, usize> {
            (a..=b).filter(|n| n.rem_euclid(2) == 0).map(|n| (n, 1)).collect()
        };
        self.torsion_free
            && self.minus == evens(lo, -2)
            && self.infty == evens(lo, hi)
            && self.plus == evens(0, hi)
            && self.hat == BTreeMap::from([(-2, 1)])
    }
}

pub fn golden_table() -> Result<GoldenTable> {
    let text = golden_file("s1xs2_sK.cx").expect("embedded");
    let ComplexObject::Laurent(l) = crate::io::parse_complex_as::<BigInt>(text)? else {
        return Err(Error::DimensionMismatch("golden model is not a Laurent complex".into()));
    };
    let window = DegreeWindow::new(-12, 12)?;
    let pair = pair_les(&l, CutLevel::default(), window)?;
    let (minus, infty, plus) = (pair.minus.homology()?, pair.full.homology()?, pair.plus.homology()?);
    let hat = homology(&l.hat_complex(CutLevel::default())?)?;
    let torsion_free = [&minus, &infty, &plus, &hat]
        .iter()
        .all(|h| h.groups.values().all(|g| g.torsion.is_empty()));
    Ok(GoldenTable {
        safe: window.safe_range(),
        minus: minus.ranks(),
        infty: infty.ranks(),
        plus: plus.ranks(),
        hat: hat.ranks(),
        torsion_free,
    })
}

fn first_difference(a: &str, b: &str) -> Option<(usize, String, String)> {
    let (mut la, mut lb) = (a.lines(), b.lines());
    for n in 1.. {
        match (la.next(), lb.next()) {
            (None, None) => return None,
            (x, y) if x == y => continue,
            (x, y) => return Some((n, x.unwrap_or("<end>").to_string(), y.unwrap_or("<end>").to_string())),
        }
    }
    None
}

fn golden() -> Outcome {
    let mut rep = Report::default();
    rep.line("filtered flavors of the one-orbit model, window [-12, 12], deg t = -2, cut offset 1");
    match golden_table() {
        Ok(t) => {
            let (lo, hi) = t.safe;
            rep.line(format!("  {:>5}  {:<6} {:<6} {:<6} {}", "n", "minus", "infty", "plus", "hat"));
            for n in (lo..=hi).rev() {
                let r = |m: &BTreeMap<i64, usize>| m.get(&n).copied().unwrap_or(0);
                rep.line(format!(
                    "  {:>5}  {:<6} {:<6} {:<6} {}",
                    n,
                    r(&t.minus),
                    r(&t.infty),
                    r(&t.plus),
                    r(&t.hat)
                ));
            }
            rep.check("golden_table", t.matches_expected());
        }
        Err(e) => {
            rep.line(format!("  {e}"));
            rep.check("golden_table", false);
        }
    }
    rep.line("stored reports");
    for case in GOLDEN_CASES {
        let got = run_embedded(case.args);
        let ok = got.code == 0 && got.stdout == case.expected;
        match first_difference(&got.stdout, case.expected) {
            None if got.code == 0 => rep.line(format!("  {:<20} match", case.name)),
            None => rep.line(format!("  {:<20} exit {}", case.name, got.code)),
            Some((n, x, y)) => {
                rep.line(format!("  {:<20} differs at line {n}", case.name));
                rep.line(format!("    got:      {x}"));
                rep.line(format!("    expected: {y}"));
            }
        }
        rep.check(format!("golden_{}", case.name), ok);
    }
    rep.finish()
}

/// Stored golden reports, for regenerating or inspecting them: `(name, args, expected)`.
pub fn golden_cases() -> impl Iterator<Item = (&'static str, &'static [&'static str], &'static str)> {
    GOLDEN_CASES.iter().map(|c| (c.name, c.args, c.expected))
}
