//! Truncated simplicial algebras: identity checks, Moore normalization, integer homology,
//! the zero-multiplication check on higher cycles, coproducts, and exact sequences.

mod les;
mod sets;
mod trace;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::dihomology::{DihomologyError, DimensionMatrix, ModuleEntry};
use crate::exactalg::snf::{integer_kernel, solve_integer};
use crate::exactalg::{
    AlgebraElement, AlgebraError, GradedAlgebra, GradedSubspace, IntMatrix, Morphism, Scalar, SnfReport,
};
use crate::precubical::PrecubicalError;
use crate::tracealg::TraceError;

pub use les::{
    disjoint_union_les_report, exactness_check, fold_map, fold_map_h, simplicial_coproduct, LesReport, LinearMap,
    PositionReport, SimplicialCoproduct,
};
pub use sets::{bar_algebra, free_module, random_simplicial_algebra, CyclicMonoid, SimplicialSet};
pub use trace::{trace_complex, trace_pair, TraceComplex};

/// Grade of a basis word by endpoint names, so grades can be matched across levels.
pub type GradeKey = (String, String);

#[derive(Debug, thiserror::Error)]
pub enum SimplicialError {
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    Dihomology(#[from] DihomologyError),
    #[error(transparent)]
    Precubical(#[from] PrecubicalError),
    #[error("{map} moves word `{word}` to another grade")]
    NotGradePreserving { map: String, word: String },
    #[error("{0} has non-integer coefficients")]
    NonIntegral(String),
    #[error("the Moore differential does not square to zero at level {0}")]
    BoundarySquare(usize),
    #[error("{0}")]
    NotSubcomplex(String),
}

/// Levels `0..=N` of algebras with faces `d_i` (level `n` to `n-1`) and degeneracies `s_i`
/// (level `n` to `n+1`). Without degeneracies the object is semi-simplicial.
#[derive(Clone, Debug)]
pub struct TruncatedSimplicialAlgebra {
    levels: Vec<Arc<GradedAlgebra>>,
    faces: Vec<Vec<Morphism>>,
    degeneracies: Vec<Vec<Morphism>>,
}

impl TruncatedSimplicialAlgebra {
    /// `faces[n]` holds `d_0..=d_n` for `n >= 1` and is empty for `n = 0`; `degeneracies`
    /// is either empty or holds `s_0..=s_n` at every `n < N`.
    pub fn new(
        levels: Vec<Arc<GradedAlgebra>>,
        faces: Vec<Vec<Morphism>>,
        degeneracies: Vec<Vec<Morphism>>,
    ) -> Result<Self, SimplicialError> {
        let top = levels.len().checked_sub(1).ok_or_else(|| SimplicialError::Shape("no levels".into()))?;
        if faces.len() != levels.len() || !faces[0].is_empty() {
            return Err(SimplicialError::Shape("faces must be listed per level, none on level 0".into()));
        }
        for n in 1..=top {
            if faces[n].len() != n + 1 {
                return Err(SimplicialError::Shape(format!("level {n} needs {} faces", n + 1)));
            }
            for (i, d) in faces[n].iter().enumerate() {
                if d.domain().dim() != levels[n].dim() || d.codomain().dim() != levels[n - 1].dim() {
                    return Err(SimplicialError::Shape(format!("d{i} on level {n} has the wrong shape")));
                }
            }
        }
        if !degeneracies.is_empty() {
            if degeneracies.len() != top {
                return Err(SimplicialError::Shape("degeneracies must be listed for levels 0..N-1".into()));
            }
            for (n, ss) in degeneracies.iter().enumerate() {
                if ss.len() != n + 1 {
                    return Err(SimplicialError::Shape(format!("level {n} needs {} degeneracies", n + 1)));
                }
                for (i, s) in ss.iter().enumerate() {
                    if s.domain().dim() != levels[n].dim() || s.codomain().dim() != levels[n + 1].dim() {
                        return Err(SimplicialError::Shape(format!("s{i} on level {n} has the wrong shape")));
                    }
                }
            }
        }
        Ok(TruncatedSimplicialAlgebra { levels, faces, degeneracies })
    }

    /// Every level `alg`, every structure map the identity.
    pub fn constant(alg: Arc<GradedAlgebra>, top: usize) -> Self {
        let id = Morphism::identity(alg.clone());
        TruncatedSimplicialAlgebra {
            levels: vec![alg; top + 1],
            faces: (0..=top).map(|n| if n == 0 { Vec::new() } else { vec![id.clone(); n + 1] }).collect(),
            degeneracies: (0..top).map(|n| vec![id.clone(); n + 1]).collect(),
        }
    }

    pub fn zero(top: usize) -> Self {
        Self::constant(Arc::new(GradedAlgebra::zero()), top)
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &Arc<GradedAlgebra> {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[Arc<GradedAlgebra>] {
        &self.levels
    }

    /// `d_i` on level `n`.
    pub fn face(&self, n: usize, i: usize) -> &Morphism {
        &self.faces[n][i]
    }

    /// `s_i` on level `n`.
    pub fn degeneracy(&self, n: usize, i: usize) -> Option<&Morphism> {
        self.degeneracies.get(n)?.get(i)
    }

    pub fn has_degeneracies(&self) -> bool {
        !self.degeneracies.is_empty()
    }

    /// Replaces one face map, keeping everything else; for building negative controls.
    pub fn with_face(mut self, n: usize, i: usize, d: Morphism) -> Self {
        self.faces[n][i] = d;
        self
    }

    fn structure_maps(&self) -> Vec<(String, &Morphism)> {
        let mut out = Vec::new();
        for (n, fs) in self.faces.iter().enumerate() {
            out.extend(fs.iter().enumerate().map(|(i, d)| (format!("d{i} on level {n}"), d)));
        }
        for (n, ss) in self.degeneracies.iter().enumerate() {
            out.extend(ss.iter().enumerate().map(|(i, s)| (format!("s{i} on level {n}"), s)));
        }
        out
    }
}

/// A simplicial identity or multiplicativity failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// `d_i d_j != d_{j-1} d_i` from `level`.
    FaceFace {
        level: usize,
        i: usize,
        j: usize,
    },
    /// `s_i s_j != s_{j+1} s_i` from `level`.
    DegeneracyDegeneracy {
        level: usize,
        i: usize,
        j: usize,
    },
    /// `d_i s_j` differs from its expected value on `level`.
    FaceDegeneracy {
        level: usize,
        i: usize,
        j: usize,
    },
    NotAlgebraMap {
        map: String,
        left: String,
        right: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::FaceFace { level, i, j } => {
                write!(f, "d{i}·d{j} != d{}·d{i} on level {level}", j - 1)
            }
            Violation::DegeneracyDegeneracy { level, i, j } => {
                write!(f, "s{i}·s{j} != s{}·s{i} on level {level}", j + 1)
            }
            Violation::FaceDegeneracy { level, i, j } => write!(f, "d{i}·s{j} is wrong on level {level}"),
            Violation::NotAlgebraMap { map, left, right } => {
                write!(f, "{map} is not multiplicative on ({left}, {right})")
            }
        }
    }
}

fn same_map(a: &Morphism, b: &Morphism) -> bool {
    a.images() == b.images()
}

/// `g ∘ f`; both come from the same object, so shapes always fit.
fn compose(f: &Morphism, g: &Morphism) -> Morphism {
    f.then(g).expect("structure maps compose")
}

/// Checks every simplicial identity within the truncation and multiplicativity of every
/// structure map on all basis pairs.
pub fn check_simplicial(s: &TruncatedSimplicialAlgebra) -> Vec<Violation> {
    let top = s.top();
    let mut out = Vec::new();
    for n in 2..=top {
        for j in 1..=n {
            for i in 0..j {
                let lhs = compose(s.face(n, j), s.face(n - 1, i));
                let rhs = compose(s.face(n, i), s.face(n - 1, j - 1));
                if !same_map(&lhs, &rhs) {
                    out.push(Violation::FaceFace { level: n, i, j });
                }
            }
        }
    }
    if s.has_degeneracies() {
        for n in 0..top.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = compose(s.degeneracy(n, j).unwrap(), s.degeneracy(n + 1, i).unwrap());
                    let rhs = compose(s.degeneracy(n, i).unwrap(), s.degeneracy(n + 1, j + 1).unwrap());
                    if !same_map(&lhs, &rhs) {
                        out.push(Violation::DegeneracyDegeneracy { level: n, i, j });
                    }
                }
            }
        }
        for n in 0..top {
            for j in 0..=n {
                let sj = s.degeneracy(n, j).unwrap();
                for i in 0..=n + 1 {
                    let lhs = compose(sj, s.face(n + 1, i));
                    let ok = if i < j {
                        same_map(&lhs, &compose(s.face(n, i), s.degeneracy(n - 1, j - 1).unwrap()))
                    } else if i == j || i == j + 1 {
                        same_map(&lhs, &Morphism::identity(s.level(n).clone()))
                    } else {
                        same_map(&lhs, &compose(s.face(n, i - 1), s.degeneracy(n - 1, j).unwrap()))
                    };
                    if !ok {
                        out.push(Violation::FaceDegeneracy { level: n, i, j });
                    }
                }
            }
        }
    }
    let maps = s.structure_maps();
    let failures: Vec<Violation> = maps
        .par_iter()
        .filter_map(|(name, m)| {
            let check = m.algebra_map_check();
            check.witness.clone().map(|(left, right)| Violation::NotAlgebraMap { map: name.clone(), left, right })
        })
        .collect();
    out.extend(failures);
    out
}

fn grade_key(alg: &GradedAlgebra, w: usize) -> GradeKey {
    let word = alg.word(w);
    (alg.objects()[word.source].clone(), alg.objects()[word.target].clone())
}

/// Words of each level grouped by grade key, with their position inside the block.
#[derive(Clone, Debug)]
struct Blocks {
    words: BTreeMap<GradeKey, Vec<usize>>,
    position: HashMap<usize, (GradeKey, usize)>,
}

impl Blocks {
    fn of(alg: &GradedAlgebra) -> Self {
        let mut words: BTreeMap<GradeKey, Vec<usize>> = BTreeMap::new();
        for w in 0..alg.dim() {
            words.entry(grade_key(alg, w)).or_default().push(w);
        }
        let position =
            words.iter().flat_map(|(g, ws)| ws.iter().enumerate().map(move |(k, &w)| (w, (g.clone(), k)))).collect();
        Blocks { words, position }
    }

    fn dim(&self, g: &GradeKey) -> usize {
        self.words.get(g).map_or(0, Vec::len)
    }
}

fn integer_of(c: &Scalar, what: &str) -> Result<BigInt, SimplicialError> {
    if c.is_integer() {
        Ok(c.to_integer())
    } else {
        Err(SimplicialError::NonIntegral(what.to_string()))
    }
}

/// Matrix of `m` from the `g` block of its domain to the `g` block of its codomain.
fn block_matrix(
    m: &Morphism,
    name: &str,
    from: &Blocks,
    to: &Blocks,
    g: &GradeKey,
) -> Result<IntMatrix, SimplicialError> {
    let words = &from.words[g];
    let mut out = IntMatrix::zeros(to.dim(g), words.len());
    for (j, &w) in words.iter().enumerate() {
        for (t, c) in m.image_of(w).terms() {
            let (h, k) = &to.position[&t];
            if h != g {
                return Err(SimplicialError::NotGradePreserving {
                    map: name.to_string(),
                    word: m.domain().word(w).name.clone(),
                });
            }
            out.set(*k, j, integer_of(c, name)?);
        }
    }
    Ok(out)
}

fn columns(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.cols()).map(|j| m.column(j)).collect()
}

fn from_dense_columns(rows: usize, cols: &[Vec<BigInt>]) -> IntMatrix {
    let sparse: Vec<BTreeMap<usize, BigInt>> = cols
        .iter()
        .map(|c| c.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect())
        .collect();
    IntMatrix::from_columns(rows, &sparse)
}

fn is_zero_matrix(m: &IntMatrix) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| m.get(i, j).is_zero()))
}

/// Normalized chains `N_n = ∩_{i<n} ker d_i` with differential `(-1)^n d_n`, per grade and
/// over the integers.
#[derive(Clone, Debug)]
pub struct MooreComplex {
    levels: Vec<Arc<GradedAlgebra>>,
    blocks: Vec<Blocks>,
    /// Columns form a lattice basis of `N_n(g)` in block coordinates.
    chains: Vec<BTreeMap<GradeKey, IntMatrix>>,
    /// `∂_n` from `N_n(g)` to `N_{n-1}(g)` in lattice coordinates; empty at `n = 0`.
    diffs: Vec<BTreeMap<GradeKey, IntMatrix>>,
}

/// Normalizes `s`, asserting `∂∘∂ = 0`.
pub fn moore_normalize(s: &TruncatedSimplicialAlgebra) -> Result<MooreComplex, SimplicialError> {
    let top = s.top();
    let blocks: Vec<Blocks> = s.levels.iter().map(|a| Blocks::of(a)).collect();
    let mut chains: Vec<BTreeMap<GradeKey, IntMatrix>> = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let per: Vec<(GradeKey, IntMatrix)> = blocks[n]
            .words
            .par_iter()
            .map(|(g, ws)| {
                if n == 0 {
                    return Ok((g.clone(), IntMatrix::identity(ws.len())));
                }
                let mut rows = Vec::new();
                for i in 0..n {
                    let m = block_matrix(s.face(n, i), &format!("d{i} on level {n}"), &blocks[n], &blocks[n - 1], g)?;
                    rows.extend((0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c).clone()).collect::<Vec<_>>()));
                }
                let stacked = IntMatrix::from_rows(ws.len(), rows);
                Ok((g.clone(), IntMatrix::from_columns(ws.len(), &integer_kernel(&stacked))))
            })
            .collect::<Result<_, SimplicialError>>()?;
        chains.push(per.into_iter().collect());
    }
    let mut diffs: Vec<BTreeMap<GradeKey, IntMatrix>> = vec![BTreeMap::new()];
    for n in 1..=top {
        let sign = if n % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
        let per: Vec<(GradeKey, IntMatrix)> = chains[n]
            .par_iter()
            .map(|(g, k)| {
                let name = format!("d{n} on level {n}");
                let d = block_matrix(s.face(n, n), &name, &blocks[n], &blocks[n - 1], g)?.mul(k);
                let target = chains[n - 1].get(g).cloned().unwrap_or_else(|| IntMatrix::zeros(0, 0));
                let mut cols = Vec::with_capacity(d.cols());
                for col in columns(&d) {
                    if target.rows() == 0 {
                        if col.iter().any(|x| !x.is_zero()) {
                            return Err(SimplicialError::NotGradePreserving { map: name, word: format!("{g:?}") });
                        }
                        cols.push(Vec::new());
                        continue;
                    }
                    let x = solve_integer(&target, &col).ok_or(SimplicialError::BoundarySquare(n))?;
                    cols.push(x.into_iter().map(|v| v * &sign).collect());
                }
                Ok((g.clone(), from_dense_columns(target.cols(), &cols)))
            })
            .collect::<Result<_, SimplicialError>>()?;
        diffs.push(per.into_iter().collect());
    }
    for n in 2..=top {
        for (g, d) in &diffs[n] {
            if let Some(prev) = diffs[n - 1].get(g) {
                if prev.cols() == d.rows() && !is_zero_matrix(&prev.mul(d)) {
                    return Err(SimplicialError::BoundarySquare(n));
                }
            }
        }
    }
    Ok(MooreComplex { levels: s.levels.clone(), blocks, chains, diffs })
}

impl MooreComplex {
    pub fn top(&self) -> usize {
        self.chains.len() - 1
    }

    /// Rank of `N_n`, summed over grades.
    pub fn chain_rank(&self, n: usize) -> usize {
        self.chains[n].values().map(IntMatrix::cols).sum()
    }

    /// `∂_{n-1} ∘ ∂_n` vanishes in every grade.
    pub fn boundary_squares_vanish(&self) -> bool {
        (2..=self.top()).all(|n| {
            self.diffs[n].iter().all(|(g, d)| match self.diffs[n - 1].get(g) {
                Some(prev) if prev.cols() == d.rows() => is_zero_matrix(&prev.mul(d)),
                _ => true,
            })
        })
    }

    fn ambient(&self, n: usize, g: &GradeKey, coords: &IntMatrix) -> Vec<AlgebraElement> {
        let words = &self.blocks[n].words[g];
        let k = &self.chains[n][g];
        columns(&k.mul(coords))
            .into_iter()
            .map(|col| {
                AlgebraElement::from_terms(
                    col.into_iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(i, x)| (words[i], Scalar::from_integer(x))),
                )
            })
            .collect()
    }

    /// Basis of `N_n` as elements of level `n`.
    pub fn chains(&self, n: usize) -> Vec<AlgebraElement> {
        self.chains[n].iter().flat_map(|(g, k)| self.ambient(n, g, &IntMatrix::identity(k.cols()))).collect()
    }

    fn cycle_coords(&self, n: usize, g: &GradeKey) -> IntMatrix {
        let r = self.chains[n][g].cols();
        match self.diffs[n].get(g) {
            Some(d) if n > 0 => IntMatrix::from_columns(r, &integer_kernel(d)),
            _ => IntMatrix::identity(r),
        }
    }

    /// Basis of the cycles `ker ∂_n`, as elements of level `n`.
    pub fn cycles(&self, n: usize) -> Vec<AlgebraElement> {
        self.chains[n].keys().flat_map(|g| self.ambient(n, g, &self.cycle_coords(n, g))).collect()
    }

    /// Spanning set of the boundaries `im ∂_{n+1}`, as elements of level `n`.
    pub fn boundaries(&self, n: usize) -> Vec<AlgebraElement> {
        if n >= self.top() {
            return Vec::new();
        }
        self.diffs[n + 1]
            .iter()
            .filter(|(g, d)| d.rows() > 0 && self.chains[n].contains_key(*g))
            .flat_map(|(g, d)| self.ambient(n, g, d))
            .collect()
    }

    pub fn boundary_subspace(&self, n: usize) -> GradedSubspace {
        GradedSubspace::span(&self.levels[n], &self.boundaries(n))
    }

    /// `H_n = ker ∂_n / im ∂_{n+1}` per grade. At the top level nothing is divided out.
    pub fn homology(&self, n: usize) -> BTreeMap<GradeKey, SnfReport> {
        self.chains[n]
            .par_iter()
            .map(|(g, k)| {
                let z = self.cycle_coords(n, g);
                let b = match self.diffs.get(n + 1).and_then(|d| d.get(g)) {
                    Some(d) if d.rows() == k.cols() => d.clone(),
                    _ => IntMatrix::zeros(k.cols(), 0),
                };
                let cols: Vec<Vec<BigInt>> =
                    columns(&b).iter().map(|c| solve_integer(&z, c).expect("boundaries are cycles")).collect();
                let snf = crate::exactalg::smith_normal_form(&from_dense_columns(z.cols(), &cols));
                (g.clone(), SnfReport { rank: z.cols() - snf.rank, invariant_factors: snf.invariant_factors })
            })
            .collect()
    }

    /// Total rank and torsion of `H_n`.
    pub fn homology_total(&self, n: usize) -> ModuleEntry {
        let mut out = ModuleEntry::default();
        for r in self.homology(n).into_values() {
            out.rank += r.rank;
            out.torsion.extend(r.invariant_factors);
        }
        out.torsion.sort();
        out
    }

    /// `H_n` laid out as a matrix over `order` (missing grades are zero).
    pub fn homology_matrix(&self, n: usize, order: &[String]) -> DimensionMatrix {
        let h = self.homology(n);
        DimensionMatrix::from_fn(order.to_vec(), |i, j| {
            h.get(&(order[i].clone(), order[j].clone())).cloned().map(Into::into).unwrap_or_default()
        })
    }
}

/// Result of a pairwise product check on cycles or chains.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ProductCheck {
    pub holds: bool,
    pub pairs_checked: usize,
    /// Products beyond a truncation.
    pub pairs_skipped: usize,
    pub witness: Option<(String, String)>,
}

fn product_check(
    alg: &GradedAlgebra,
    xs: &[AlgebraElement],
    ys: &[AlgebraElement],
    target: &GradedSubspace,
    both_sides: bool,
) -> ProductCheck {
    let pairs: Vec<(usize, usize)> = (0..xs.len()).flat_map(|i| (0..ys.len()).map(move |j| (i, j))).collect();
    let results: Vec<(usize, usize, Option<bool>)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut ok = Some(true);
            let mut sides = vec![(&xs[i], &ys[j])];
            if both_sides {
                sides.push((&ys[j], &xs[i]));
            }
            for (a, b) in sides {
                match alg.multiply(a, b) {
                    Ok(p) => {
                        if !target.contains(alg, &p) {
                            ok = Some(false);
                        }
                    }
                    Err(_) => ok = ok.and(None),
                }
            }
            (i, j, ok)
        })
        .collect();
    let mut report = ProductCheck { holds: true, ..Default::default() };
    for (i, j, r) in results {
        match r {
            Some(true) => report.pairs_checked += 1,
            Some(false) => {
                report.pairs_checked += 1;
                if report.holds {
                    report.holds = false;
                    report.witness = Some((alg.format_element(&xs[i]), alg.format_element(&ys[j])));
                }
            }
            None => report.pairs_skipped += 1,
        }
    }
    report
}

/// For cycles `x, y` in `N_n` with `n >= 1`, checks `x × y ∈ im ∂_{n+1}`. Needs level `n + 1`.
pub fn eckmann_hilton_check(
    s: &TruncatedSimplicialAlgebra,
    m: &MooreComplex,
    n: usize,
) -> Result<ProductCheck, SimplicialError> {
    if n == 0 || n >= s.top() {
        return Err(SimplicialError::Shape(format!("the check needs 1 <= n < {}", s.top())));
    }
    let cycles = m.cycles(n);
    Ok(product_check(s.level(n), &cycles, &cycles, &m.boundary_subspace(n), false))
}

/// Checks that `im ∂_{n+1}` absorbs products with `N_n` on both sides.
pub fn properness_check(s: &TruncatedSimplicialAlgebra, m: &MooreComplex, n: usize) -> ProductCheck {
    let target = m.boundary_subspace(n);
    let b = target.basis_elements(s.level(n));
    product_check(s.level(n), &b, &m.chains(n), &target, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_object_has_trivial_normalization() {
        let alg = Arc::new(crate::tracealg::r0_algebra(&crate::precubical::filled_square()).unwrap());
        let s = TruncatedSimplicialAlgebra::constant(alg.clone(), 2);
        assert!(check_simplicial(&s).is_empty());
        let m = moore_normalize(&s).unwrap();
        assert_eq!(m.chain_rank(0), alg.dim());
        assert_eq!(m.chain_rank(1), 0);
        assert_eq!(m.chain_rank(2), 0);
        assert_eq!(m.homology_total(0).rank, alg.dim());
    }

    #[test]
    fn zero_object() {
        let s = TruncatedSimplicialAlgebra::zero(2);
        assert!(check_simplicial(&s).is_empty());
        let m = moore_normalize(&s).unwrap();
        assert!(m.homology(0).is_empty());
        assert!(TruncatedSimplicialAlgebra::zero(0).top() == 0);
    }

    #[test]
    fn shape_errors() {
        let alg = Arc::new(GradedAlgebra::zero());
        assert!(TruncatedSimplicialAlgebra::new(vec![alg.clone(), alg.clone()], vec![vec![], vec![]], vec![]).is_err());
        assert!(TruncatedSimplicialAlgebra::new(vec![], vec![], vec![]).is_err());
    }
}
