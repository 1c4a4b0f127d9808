//! Seeded random objects with known structure, for property tests and batch checks.
//!
//! Complexes are direct sums of elementary pieces (a single generator, or
//! `a → b` with a nonzero coefficient) followed by a random change of basis,
//! so `∂² = 0` holds by construction and the homology is known in advance.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::chain_map::{mapping_cone, ChainMap, MapSign};
use crate::complex::graded::{Generator, GradedComplex};
use crate::equivariant::UComplex;
use crate::error::Result;
use crate::heegaard::HeegaardDiagram;
use crate::laurent::LaurentPoly;
use crate::linalg::{kernel_basis, Matrix, SparseMatrix};
use crate::novikov::LaurentComplex;
use crate::ring::{Gf2, Ring};

pub type TestRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rings with small random elements.
pub trait RandomRing: Ring {
    /// A small element, possibly zero.
    fn small<G: Rng + ?Sized>(rng: &mut G) -> Self;

    fn unit<G: Rng + ?Sized>(rng: &mut G) -> Self;

    /// A nonzero coefficient for an `a → b` piece; non-units are allowed.
    fn pair_coefficient<G: Rng + ?Sized>(rng: &mut G) -> Self;
}

impl RandomRing for Gf2 {
    fn small<G: Rng + ?Sized>(rng: &mut G) -> Self {
        Gf2(rng.gen())
    }

    fn unit<G: Rng + ?Sized>(_rng: &mut G) -> Self {
        Gf2(true)
    }

    fn pair_coefficient<G: Rng + ?Sized>(_rng: &mut G) -> Self {
        Gf2(true)
    }
}

impl RandomRing for BigInt {
    fn small<G: Rng + ?Sized>(rng: &mut G) -> Self {
        BigInt::from(rng.gen_range(-2..=2))
    }

    fn unit<G: Rng + ?Sized>(rng: &mut G) -> Self {
        BigInt::from(*[-1, 1].choose(rng).expect("nonempty"))
    }

    fn pair_coefficient<G: Rng + ?Sized>(rng: &mut G) -> Self {
        BigInt::from(*[1, -1, 1, 2, -2, 3, 4, 6].choose(rng).expect("nonempty"))
    }
}

impl RandomRing for BigRational {
    fn small<G: Rng + ?Sized>(rng: &mut G) -> Self {
        BigRational::new(BigInt::from(rng.gen_range(-2..=2)), BigInt::from(rng.gen_range(1..=3)))
    }

    fn unit<G: Rng + ?Sized>(rng: &mut G) -> Self {
        let n = rng.gen_range(1..=3) * if rng.gen() { 1 } else { -1 };
        BigRational::new(BigInt::from(n), BigInt::from(rng.gen_range(1..=3)))
    }

    fn pair_coefficient<G: Rng + ?Sized>(rng: &mut G) -> Self {
        Self::unit(rng)
    }
}

/// One summand of a random complex before the change of basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Piece<R> {
    Free { degree: i64 },
    /// `a → c·b` with `|a| = degree`, `|b| = degree - 1`.
    Pair { degree: i64, coeff: R },
}

#[derive(Clone, Debug)]
pub struct RandomComplex<R> {
    pub complex: GradedComplex<R>,
    pub pieces: Vec<Piece<R>>,
}

impl<R: Ring> RandomComplex<R> {
    /// Free rank per degree predicted by the pieces.
    pub fn expected_ranks(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for p in &self.pieces {
            if let Piece::Free { degree } = p {
                *m.entry(*degree).or_insert(0) += 1;
            }
        }
        m
    }

    /// Non-unit pair coefficients landing in degree `n`: the torsion of `H_n`
    /// as a list of cyclic orders.
    pub fn expected_torsion(&self, n: i64) -> Vec<R> {
        self.pieces
            .iter()
            .filter_map(|p| match p {
                Piece::Pair { degree, coeff } if degree - 1 == n && !coeff.is_unit() => Some(coeff.clone()),
                _ => None,
            })
            .collect()
    }
}

/// Shape of a random complex.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_generators: usize,
    pub min_degree: i64,
    pub max_degree: i64,
    pub basis_changes: usize,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_generators: 10,
            min_degree: -3,
            max_degree: 3,
            basis_changes: 12,
        }
    }
}

/// Dense data for a complex and maps into and out of it, kept in step under
/// changes of basis.
struct Frame<R> {
    gens: Vec<Generator>,
    diff: Matrix<R>,
    endos: Vec<Matrix<R>>,
    /// Maps into the frame's complex, rows indexed by their source.
    incoming: Vec<Matrix<R>>,
}

impl<R: Ring> Frame<R> {
    /// New basis `e_i + c e_j` for `i ≠ j` of equal degree: `M ↦ P M P⁻¹`
    /// with `P = 1 + c E_ij`.
    fn change_basis<G: Rng + ?Sized>(&mut self, rng: &mut G, steps: usize, coeff: impl Fn(&mut G) -> R) {
        let n = self.gens.len();
        if n < 2 {
            return;
        }
        for _ in 0..steps {
            let i = rng.gen_range(0..n);
            let same: Vec<usize> = (0..n)
                .filter(|&j| j != i && self.gens[j].degree == self.gens[i].degree)
                .collect();
            let Some(&j) = same.choose(rng) else {
                continue;
            };
            let c = coeff(rng);
            for m in std::iter::once(&mut self.diff).chain(self.endos.iter_mut()) {
                m.add_row_multiple(i, j, &c);
                m.add_col_multiple(j, i, &-c.clone());
            }
            for m in &mut self.incoming {
                m.add_col_multiple(j, i, &-c.clone());
            }
        }
    }

    fn complex(&self) -> Result<GradedComplex<R>> {
        GradedComplex::new(self.gens.clone(), dense_entries(&self.gens, &self.gens, &self.diff))
    }
}

fn dense_entries<R: Ring>(src: &[Generator], tgt: &[Generator], m: &Matrix<R>) -> Vec<(String, String, R)> {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !m[(i, j)].is_zero() {
                out.push((src[i].id.clone(), tgt[j].id.clone(), m[(i, j)].clone()));
            }
        }
    }
    out
}

fn random_frame<R: RandomRing, G: Rng + ?Sized>(rng: &mut G, shape: Shape, prefix: &str) -> (Frame<R>, Vec<Piece<R>>) {
    let mut gens = Vec::new();
    let mut pieces = Vec::new();
    let mut pairs = Vec::new();
    let target = rng.gen_range(1..=shape.max_generators.max(1));
    while gens.len() < target {
        let room = target - gens.len();
        let degree = rng.gen_range(shape.min_degree..=shape.max_degree);
        if room >= 2 && rng.gen_bool(0.55) {
            let coeff = R::pair_coefficient(rng);
            let a = gens.len();
            gens.push(Generator::new(format!("{prefix}{a}"), degree));
            gens.push(Generator::new(format!("{prefix}{}", a + 1), degree - 1));
            pairs.push((a, a + 1, coeff.clone()));
            pieces.push(Piece::Pair { degree, coeff });
        } else {
            gens.push(Generator::new(format!("{prefix}{}", gens.len()), degree));
            pieces.push(Piece::Free { degree });
        }
    }
    let n = gens.len();
    let mut diff = Matrix::zeros(n, n);
    for (a, b, c) in pairs {
        diff[(a, b)] = c;
    }
    let mut frame = Frame {
        gens,
        diff,
        endos: Vec::new(),
        incoming: Vec::new(),
    };
    frame.change_basis(rng, shape.basis_changes, |r| R::small(r));
    (frame, pieces)
}

pub fn random_complex<R: RandomRing, G: Rng + ?Sized>(rng: &mut G, shape: Shape) -> Result<RandomComplex<R>> {
    let (frame, pieces) = random_frame::<R, G>(rng, shape, "g");
    Ok(RandomComplex {
        complex: frame.complex()?,
        pieces,
    })
}

/// A basis of the module of chain maps `S → T` of the given degree, as
/// sparse matrices (rows indexed by `S`).
pub fn chain_map_basis<R: Ring>(s: &GradedComplex<R>, t: &GradedComplex<R>, degree: i64) -> Result<Vec<SparseMatrix<R>>> {
    let mut unknowns: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (x, gx) in s.gens().iter().enumerate() {
        for y in t.range(gx.degree + degree) {
            let k = unknowns.len();
            unknowns.insert((x, y), k);
        }
    }
    let mut equations: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (x, gx) in s.gens().iter().enumerate() {
        for z in t.range(gx.degree + degree - 1) {
            let k = equations.len();
            equations.insert((x, z), k);
        }
    }
    // D_S·F − F·D_T = 0
    let mut a = SparseMatrix::new(equations.len(), unknowns.len());
    for (&(x, y), &col) in &unknowns {
        for (z, v) in t.diff().row(y) {
            if let Some(&row) = equations.get(&(x, z)) {
                a.add_to(row, col, -v.clone());
            }
        }
    }
    for x in 0..s.len() {
        for (w, v) in s.diff().row(x) {
            for (&(_, z), &col) in unknowns.range((w, 0)..(w + 1, 0)) {
                if let Some(&row) = equations.get(&(x, z)) {
                    a.add_to(row, col, v.clone());
                }
            }
        }
    }
    let kernel = kernel_basis(&a)?;
    Ok(kernel
        .into_iter()
        .map(|v| {
            let mut m = SparseMatrix::new(s.len(), t.len());
            for (&(x, y), &k) in &unknowns {
                m.add_to(x, y, v[k].clone());
            }
            m
        })
        .collect())
}

/// A random commuting chain map of the given degree: a small random
/// combination of a basis of all such maps.
pub fn random_chain_map<R: RandomRing, G: Rng + ?Sized>(
    rng: &mut G,
    s: Arc<GradedComplex<R>>,
    t: Arc<GradedComplex<R>>,
    degree: i64,
) -> Result<ChainMap<R>> {
    let basis = chain_map_basis(&s, &t, degree)?;
    let mut m = SparseMatrix::new(s.len(), t.len());
    for b in &basis {
        let c = R::small(rng);
        if !c.is_zero() {
            m = m.add(&b.scale(&c));
        }
    }
    ChainMap::new(s, t, degree, MapSign::Commute, m)
}

pub fn random_ucomplex<R: RandomRing, G: Rng + ?Sized>(rng: &mut G, shape: Shape) -> Result<UComplex<R>> {
    let c = Arc::new(random_complex::<R, G>(rng, shape)?.complex);
    UComplex::new(random_chain_map(rng, c.clone(), c, -2)?)
}

/// The short exact sequence `0 → D → Cone(f) → C[1] → 0` of a random chain
/// map `f : C → D`, returned as the pair of maps `(i, p)`.
pub fn random_cone_ses<R: RandomRing, G: Rng + ?Sized>(rng: &mut G, shape: Shape) -> Result<(ChainMap<R>, ChainMap<R>)> {
    let c = Arc::new(random_complex::<R, G>(rng, shape)?.complex);
    let d = Arc::new(random_frame::<R, G>(rng, shape, "h").0.complex()?);
    let f = random_chain_map(rng, c.clone(), d.clone(), 0)?;
    let cone = Arc::new(mapping_cone(&f)?);
    let sub = Arc::new(d.relabel(|id| format!("tgt:{id}"))?);
    let quot = Arc::new(c.shift(1).relabel(|id| format!("src:{id}"))?);
    let same = |id: &str| vec![(id.to_string(), R::one())];
    let i = ChainMap::from_fn(sub, cone.clone(), 0, MapSign::Commute, same)?;
    let p = ChainMap::from_fn(cone, quot, 0, MapSign::Commute, same)?;
    Ok((i, p))
}

/// A strict quasi-isomorphism of U-complexes `f : C → C ⊕ A` with `A`
/// acyclic and `U` zero on `A`, followed by a change of basis of the target.
pub struct QuasiIso<R> {
    pub source: UComplex<R>,
    pub target: UComplex<R>,
    pub map: ChainMap<R>,
}

pub fn random_quasi_iso<R: RandomRing, G: Rng + ?Sized>(rng: &mut G, shape: Shape) -> Result<QuasiIso<R>> {
    let source = random_ucomplex::<R, G>(rng, shape)?;
    let c = source.base();
    let mut gens: Vec<Generator> = c.gens().to_vec();
    let n = gens.len();
    let extra = rng.gen_range(1..=3);
    for k in 0..extra {
        let degree = rng.gen_range(shape.min_degree..=shape.max_degree);
        gens.push(Generator::new(format!("a{}", 2 * k), degree));
        gens.push(Generator::new(format!("a{}", 2 * k + 1), degree - 1));
    }
    let m = gens.len();
    let mut diff = Matrix::zeros(m, m);
    let mut u = Matrix::zeros(m, m);
    let cd = c.diff().to_dense();
    let cu = source.u().matrix().to_dense();
    for i in 0..n {
        for j in 0..n {
            diff[(i, j)] = cd[(i, j)].clone();
            u[(i, j)] = cu[(i, j)].clone();
        }
    }
    for k in 0..extra {
        diff[(n + 2 * k, n + 2 * k + 1)] = R::unit(rng);
    }
    let mut incl = Matrix::zeros(n, m);
    for i in 0..n {
        incl[(i, i)] = R::one();
    }
    let mut frame = Frame {
        gens,
        diff,
        endos: vec![u],
        incoming: vec![incl],
    };
    frame.change_basis(rng, shape.basis_changes, |r| R::small(r));
    let target = UComplex::from_entries(frame.complex()?, dense_entries(&frame.gens, &frame.gens, &frame.endos[0]))?;
    let t = target.base_arc();
    let map = ChainMap::from_entries(
        source.base_arc(),
        t,
        0,
        MapSign::Commute,
        dense_entries(source.base().gens(), &frame.gens, &frame.incoming[0]),
    )?;
    Ok(QuasiIso { source, target, map })
}

/// A random semi-positive Laurent complex with monomial pieces `a → c·t^k·b`,
/// `k ≥ 0`, followed by changes of basis by `t^k`-multiples with `k ≥ 0`.
pub fn random_laurent<R: RandomRing, G: Rng + ?Sized>(rng: &mut G, shape: Shape, deg_t: i64) -> Result<LaurentComplex<R>> {
    let mut gens = Vec::new();
    let mut pairs = Vec::new();
    let target = rng.gen_range(1..=shape.max_generators.max(1));
    while gens.len() < target {
        let degree = rng.gen_range(shape.min_degree..=shape.max_degree);
        if target - gens.len() >= 2 && rng.gen_bool(0.55) {
            let k: i64 = if deg_t == 0 { 0 } else { rng.gen_range(0..=2) };
            let a = gens.len();
            gens.push(Generator::new(format!("g{a}"), degree));
            gens.push(Generator::new(format!("g{}", a + 1), degree - 1 - k * deg_t));
            pairs.push((a, a + 1, LaurentPoly::monomial(R::pair_coefficient(rng), k)));
        } else {
            gens.push(Generator::new(format!("g{}", gens.len()), degree));
        }
    }
    let n = gens.len();
    let mut diff: Matrix<LaurentPoly<R>> = Matrix::zeros(n, n);
    for (a, b, p) in pairs {
        diff[(a, b)] = p;
    }
    for _ in 0..shape.basis_changes {
        let i = rng.gen_range(0..n);
        // e_i + c t^k e_j needs |e_i| = |e_j| + k·deg_t with k ≥ 0
        let options: Vec<(usize, i64)> = (0..n)
            .filter(|&j| j != i)
            .flat_map(|j| (0..=2).map(move |k| (j, k)))
            .filter(|&(j, k)| gens[i].degree == gens[j].degree + k * deg_t && (deg_t != 0 || k == 0))
            .collect();
        let Some(&(j, k)) = options.choose(rng) else {
            continue;
        };
        let c = LaurentPoly::monomial(R::small(rng), k);
        diff.add_row_multiple(i, j, &c);
        diff.add_col_multiple(j, i, &-c.clone());
    }
    LaurentComplex::new(gens.clone(), dense_entries(&gens, &gens, &diff), deg_t)
}

/// A genus `g` diagram with up to `max_points` signed points per pair of curves.
pub fn random_diagram<G: Rng + ?Sized>(rng: &mut G, genus: usize, max_points: usize) -> HeegaardDiagram {
    let mut points = Vec::new();
    for i in 0..genus {
        for j in 0..genus {
            for _ in 0..rng.gen_range(0..=max_points) {
                let id = format!("x{}", points.len());
                points.push((i, j, id, if rng.gen() { 1 } else { -1 }));
            }
        }
    }
    HeegaardDiagram::new(genus, points).expect("random diagram is valid")
}

/// `|c|` for an integer, used to compare torsion orders.
pub fn torsion_order(factors: &[BigInt]) -> BigInt {
    factors.iter().fold(BigInt::one(), |acc, c| acc * c.abs())
}
