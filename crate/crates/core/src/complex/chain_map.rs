use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex::graded::{ComplexBuilder, GradedComplex};
use crate::complex::homology::HomologyModel;
use crate::error::{Error, Result};
use crate::linalg::{solve_linear, Matrix, SparseMatrix};
use crate::ring::Ring;

/// Whether a map satisfies `∂f = f∂` or `∂f = -f∂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapSign {
    Commute,
    Anticommute,
}

/// A graded map between complexes. Entry `(x, y)` of `matrix` is the
/// coefficient of `y` in `f(x)`, rows indexed by source generators.
#[derive(Clone, Debug)]
pub struct ChainMap<R> {
    source: Arc<GradedComplex<R>>,
    target: Arc<GradedComplex<R>>,
    degree: i64,
    sign: MapSign,
    matrix: SparseMatrix<R>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCheck {
    pub ok: bool,
    pub witness: Option<String>,
}

impl<R: Ring> ChainMap<R> {
    /// Checks that every entry shifts degree by `degree`; does not check the chain condition.
    pub fn new(
        source: impl Into<Arc<GradedComplex<R>>>,
        target: impl Into<Arc<GradedComplex<R>>>,
        degree: i64,
        sign: MapSign,
        matrix: SparseMatrix<R>,
    ) -> Result<Self> {
        let (source, target) = (source.into(), target.into());
        if matrix.rows() != source.len() || matrix.cols() != target.len() {
            return Err(Error::DimensionMismatch(format!(
                "map matrix is {}x{}, complexes have {} and {} generators",
                matrix.rows(),
                matrix.cols(),
                source.len(),
                target.len()
            )));
        }
        for (i, j, _) in matrix.iter() {
            let (a, b) = (source.generator(i), target.generator(j));
            if b.degree != a.degree + degree {
                return Err(Error::DegreeViolation {
                    from: a.id.clone(),
                    to: b.id.clone(),
                    detail: format!("map of degree {degree} sends {} to {}", a.degree, b.degree),
                });
            }
        }
        Ok(ChainMap {
            source,
            target,
            degree,
            sign,
            matrix,
        })
    }

    pub fn from_entries<S: AsRef<str>>(
        source: impl Into<Arc<GradedComplex<R>>>,
        target: impl Into<Arc<GradedComplex<R>>>,
        degree: i64,
        sign: MapSign,
        entries: impl IntoIterator<Item = (S, S, R)>,
    ) -> Result<Self> {
        let (source, target) = (source.into(), target.into());
        let mut m = SparseMatrix::new(source.len(), target.len());
        for (a, b, c) in entries {
            let i = source
                .index_of(a.as_ref())
                .ok_or_else(|| Error::UnknownGenerator(a.as_ref().to_string()))?;
            let j = target
                .index_of(b.as_ref())
                .ok_or_else(|| Error::UnknownGenerator(b.as_ref().to_string()))?;
            m.add_to(i, j, c);
        }
        Self::new(source, target, degree, sign, m)
    }

    /// Builds a map by sending each source generator id to `(target id, coeff)` terms.
    pub fn from_fn(
        source: impl Into<Arc<GradedComplex<R>>>,
        target: impl Into<Arc<GradedComplex<R>>>,
        degree: i64,
        sign: MapSign,
        mut f: impl FnMut(&str) -> Vec<(String, R)>,
    ) -> Result<Self> {
        let (source, target) = (source.into(), target.into());
        let mut m = SparseMatrix::new(source.len(), target.len());
        for (i, g) in source.gens().iter().enumerate() {
            for (id, c) in f(&g.id) {
                if let Some(j) = target.index_of(&id) {
                    m.add_to(i, j, c);
                }
            }
        }
        Self::new(source, target, degree, sign, m)
    }

    pub fn identity(c: impl Into<Arc<GradedComplex<R>>>) -> Self {
        let c = c.into();
        let n = c.len();
        ChainMap {
            source: c.clone(),
            target: c,
            degree: 0,
            sign: MapSign::Commute,
            matrix: SparseMatrix::identity(n),
        }
    }

    pub fn zero(
        source: impl Into<Arc<GradedComplex<R>>>,
        target: impl Into<Arc<GradedComplex<R>>>,
        degree: i64,
        sign: MapSign,
    ) -> Self {
        let (source, target) = (source.into(), target.into());
        let matrix = SparseMatrix::new(source.len(), target.len());
        ChainMap {
            source,
            target,
            degree,
            sign,
            matrix,
        }
    }

    pub fn source(&self) -> &GradedComplex<R> {
        &self.source
    }

    pub fn target(&self) -> &GradedComplex<R> {
        &self.target
    }

    pub fn source_arc(&self) -> Arc<GradedComplex<R>> {
        self.source.clone()
    }

    pub fn target_arc(&self) -> Arc<GradedComplex<R>> {
        self.target.clone()
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn sign(&self) -> MapSign {
        self.sign
    }

    pub fn matrix(&self) -> &SparseMatrix<R> {
        &self.matrix
    }

    /// `f(v)` for a full coordinate vector on the source.
    pub fn apply(&self, v: &[R]) -> Vec<R> {
        self.matrix.vec_mul(v)
    }

    /// `f_n : S_n → T_{n+d}` as a matrix acting on column vectors.
    pub fn block(&self, n: i64) -> Matrix<R> {
        self.matrix
            .block(self.source.range(n), self.target.range(n + self.degree))
            .transpose()
    }

    /// Checks `∂f = ±f∂` and reports the first failing source generator.
    pub fn is_chain_map(&self) -> ChainCheck {
        let d_after = self.matrix.mul(self.target.diff());
        let d_before = self.source.diff().mul(&self.matrix);
        let defect = match self.sign {
            MapSign::Commute => d_after.sub(&d_before),
            MapSign::Anticommute => d_after.add(&d_before),
        };
        let witness = (0..self.source.len())
            .find(|&i| defect.row(i).next().is_some())
            .map(|i| self.source.generator(i).id.clone());
        ChainCheck {
            ok: witness.is_none(),
            witness,
        }
    }

    pub fn ensure_chain_map(&self) -> Result<()> {
        match self.is_chain_map().witness {
            Some(w) => Err(Error::NotChainMap(w)),
            None => Ok(()),
        }
    }

    /// `g ∘ self` (apply `self` first).
    pub fn then(&self, g: &ChainMap<R>) -> Result<ChainMap<R>> {
        if self.target.as_ref() != g.source.as_ref() {
            return Err(Error::DimensionMismatch("composition of incompatible maps".into()));
        }
        let sign = if self.sign == g.sign {
            MapSign::Commute
        } else {
            MapSign::Anticommute
        };
        ChainMap::new(
            self.source.clone(),
            g.target.clone(),
            self.degree + g.degree,
            sign,
            self.matrix.mul(&g.matrix),
        )
    }

    fn same_shape(&self, other: &ChainMap<R>) -> Result<()> {
        if self.source.as_ref() != other.source.as_ref()
            || self.target.as_ref() != other.target.as_ref()
            || self.degree != other.degree
        {
            return Err(Error::DimensionMismatch(
                "maps differ in source, target or degree".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &ChainMap<R>) -> Result<ChainMap<R>> {
        self.same_shape(other)?;
        Ok(ChainMap {
            matrix: self.matrix.add(&other.matrix),
            ..self.clone()
        })
    }

    pub fn neg(&self) -> ChainMap<R> {
        ChainMap {
            matrix: self.matrix.neg(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &ChainMap<R>) -> Result<ChainMap<R>> {
        self.add(&other.neg())
    }

    pub fn equals(&self, other: &ChainMap<R>) -> bool {
        self.same_shape(other).is_ok() && self.matrix == other.matrix
    }

    /// Induced maps `H_n(S) → H_{n+d}(T)`, one matrix per source degree,
    /// columns indexed by source homology generators.
    pub fn induced(
        &self,
        src: &HomologyModel<R>,
        tgt: &HomologyModel<R>,
    ) -> BTreeMap<i64, Matrix<R>> {
        let mut out = BTreeMap::new();
        for (&n, model) in &src.degrees {
            let m = n + self.degree;
            let rows = tgt.len(m);
            let cols: Vec<Vec<R>> = (0..model.len())
                .map(|i| {
                    let image = self.apply(&src.full_rep(n, i, self.source.len()));
                    if rows == 0 {
                        Vec::new()
                    } else {
                        tgt.coords_full(m, &image)
                    }
                })
                .collect();
            out.insert(n, Matrix::from_columns(rows, &cols));
        }
        out
    }

    /// Restriction of a degree-nonincreasing map to truncated source and target
    /// (matched by generator id).
    pub fn restrict_to(
        &self,
        source: impl Into<Arc<GradedComplex<R>>>,
        target: impl Into<Arc<GradedComplex<R>>>,
    ) -> Result<ChainMap<R>> {
        let (s, t) = (source.into(), target.into());
        let mut m = SparseMatrix::new(s.len(), t.len());
        for (i, g) in s.gens().iter().enumerate() {
            let Some(old) = self.source.index_of(&g.id) else {
                continue;
            };
            for (j, v) in self.matrix.row(old) {
                if let Some(nj) = t.index_of(&self.target.generator(j).id) {
                    m.add_to(i, nj, v.clone());
                }
            }
        }
        ChainMap::new(s, t, self.degree, self.sign, m)
    }
}

pub fn is_chain_map<R: Ring>(f: &ChainMap<R>) -> ChainCheck {
    f.is_chain_map()
}

/// `Cone(f)` for `f: C → D` of degree `d`: generators `tgt:y` (degree `|y|`) and
/// `src:x` (degree `|x| + d + 1`) with `∂(b, a) = (∂b + f(a), -∂a)`.
/// For anticommuting `f` the source part keeps `+∂a` so that `∂² = 0`.
pub fn mapping_cone<R: Ring>(f: &ChainMap<R>) -> Result<GradedComplex<R>> {
    f.ensure_chain_map()?;
    let (c, d) = (f.source(), f.target());
    let mut b = ComplexBuilder::new();
    for y in d.gens() {
        b.generator(format!("tgt:{}", y.id), y.degree);
    }
    for x in c.gens() {
        b.generator(format!("src:{}", x.id), x.degree + f.degree() + 1);
    }
    for (i, j, v) in d.diff().iter() {
        b.entry(
            format!("tgt:{}", d.generator(i).id),
            format!("tgt:{}", d.generator(j).id),
            v.clone(),
        );
    }
    let eps: R = match f.sign() {
        MapSign::Commute => -R::one(),
        MapSign::Anticommute => R::one(),
    };
    for (i, j, v) in c.diff().iter() {
        b.entry(
            format!("src:{}", c.generator(i).id),
            format!("src:{}", c.generator(j).id),
            eps.clone() * v.clone(),
        );
    }
    for (i, j, v) in f.matrix().iter() {
        b.entry(
            format!("src:{}", c.generator(i).id),
            format!("tgt:{}", d.generator(j).id),
            v.clone(),
        );
    }
    b.build()
}

/// Solves `∂H + H∂ = f - g` for `H` of degree `deg f + 1`, if possible over the ring.
pub fn find_chain_homotopy<R: Ring>(f: &ChainMap<R>, g: &ChainMap<R>) -> Result<Option<SparseMatrix<R>>> {
    if !R::spec().admits_snf() {
        return Err(Error::UnsupportedRing(R::spec()));
    }
    f.same_shape(g)?;
    if f.sign() != MapSign::Commute || g.sign() != MapSign::Commute {
        return Err(Error::NotChainMap("homotopy search needs commuting maps".into()));
    }
    f.ensure_chain_map()?;
    g.ensure_chain_map()?;
    let (s, t) = (f.source(), f.target());
    let hd = f.degree() + 1;
    // unknowns: H[x, y] with |y| = |x| + hd
    let mut unknowns: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (x, gx) in s.gens().iter().enumerate() {
        for y in t.range(gx.degree + hd) {
            let k = unknowns.len();
            unknowns.insert((x, y), k);
        }
    }
    // equations: (x, z) with |z| = |x| + deg f
    let mut equations: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (x, gx) in s.gens().iter().enumerate() {
        for z in t.range(gx.degree + f.degree()) {
            let k = equations.len();
            equations.insert((x, z), k);
        }
    }
    let mut a = SparseMatrix::new(equations.len(), unknowns.len());
    // (H·D_T)[x,z] = Σ_y H[x,y] D_T[y,z]
    for (&(x, y), &col) in &unknowns {
        for (z, v) in t.diff().row(y) {
            if let Some(&row) = equations.get(&(x, z)) {
                a.add_to(row, col, v.clone());
            }
        }
    }
    // (D_S·H)[x,z] = Σ_w D_S[x,w] H[w,z]
    for (x, _) in s.gens().iter().enumerate() {
        for (w, v) in s.diff().row(x) {
            for (&(_, z), &col) in unknowns.range((w, 0)..(w + 1, 0)) {
                if let Some(&row) = equations.get(&(x, z)) {
                    a.add_to(row, col, v.clone());
                }
            }
        }
    }
    let diff = f.matrix().sub(g.matrix());
    let mut rhs = vec![R::zero(); equations.len()];
    for (&(x, z), &row) in &equations {
        if let Some(v) = diff.get(x, z) {
            rhs[row] = v.clone();
        }
    }
    let Some(sol) = solve_linear(&a, &rhs)? else {
        return Ok(None);
    };
    let mut h = SparseMatrix::new(s.len(), t.len());
    for (&(x, y), &col) in &unknowns {
        h.add_to(x, y, sol[col].clone());
    }
    Ok(Some(h))
}

/// Whether `∂H + H∂ = f - g`.
pub fn verify_homotopy<R: Ring>(f: &ChainMap<R>, g: &ChainMap<R>, h: &SparseMatrix<R>) -> bool {
    if f.same_shape(g).is_err() {
        return false;
    }
    let lhs = h.mul(f.target().diff()).add(&f.source().diff().mul(h));
    lhs == f.matrix().sub(g.matrix())
}

pub(crate) fn matrices_equal<R: Ring>(a: &BTreeMap<i64, Matrix<R>>, b: &BTreeMap<i64, Matrix<R>>) -> bool {
    let keys: std::collections::BTreeSet<i64> = a.keys().chain(b.keys()).copied().collect();
    keys.into_iter().all(|k| match (a.get(&k), b.get(&k)) {
        (Some(x), Some(y)) => x == y,
        (Some(x), None) | (None, Some(x)) => x.is_zero(),
        (None, None) => true,
    })
}
