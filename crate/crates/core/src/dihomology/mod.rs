//! Directed homology algebras `HA_0` and `HA_1` of precubical sets, presented per grade.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::exactalg::{
    quotient, two_sided_ideal, AlgebraElement, AlgebraError, Grade, GradedAlgebra, GradedSubspace, QuotientAlgebra,
    SnfReport,
};
use crate::precubical::{PathWord, PrecubicalSet};
use crate::tracealg::{
    boundary_maps, cell_relation, path_algebra, r0_algebra, two_path_algebra, PathAlgebra, TraceError,
};

#[derive(Debug, thiserror::Error)]
pub enum DihomologyError {
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("class multiplication needs ideal mode, not {0}")]
    NotAnIdeal(QuotientMode),
    #[error("paths {0} and {1} have different endpoints")]
    GradeMismatch(String, String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("path {0} is not a word of the path algebra")]
    UnknownPath(String),
}

/// Which relations are divided out of the path algebra.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuotientMode {
    /// Two-sided ideal generated by the cell relations.
    #[default]
    Ideal,
    /// Span of `(δ_0 - δ_1)(z)` over chained 2-cell sequences `z`.
    Image,
    /// Span of the cell relations alone.
    Local,
}

impl QuotientMode {
    pub const ALL: [QuotientMode; 3] = [QuotientMode::Ideal, QuotientMode::Image, QuotientMode::Local];
}

impl fmt::Display for QuotientMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuotientMode::Ideal => "ideal",
            QuotientMode::Image => "image",
            QuotientMode::Local => "local",
        })
    }
}

impl FromStr for QuotientMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ideal" => Ok(QuotientMode::Ideal),
            "image" => Ok(QuotientMode::Image),
            "local" => Ok(QuotientMode::Local),
            other => Err(format!("unknown quotient mode `{other}` (expected ideal, image or local)")),
        }
    }
}

/// `HA_0`, the reachability algebra.
pub fn ha0(c: &PrecubicalSet) -> Result<GradedAlgebra, DihomologyError> {
    Ok(r0_algebra(c)?)
}

/// One entry of a dimension matrix: a finitely generated abelian group `Z^rank ⊕ torsion`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModuleEntry {
    pub rank: usize,
    pub torsion: Vec<BigUint>,
}

impl ModuleEntry {
    pub fn free(rank: usize) -> Self {
        ModuleEntry { rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl From<SnfReport> for ModuleEntry {
    fn from(r: SnfReport) -> Self {
        ModuleEntry { rank: r.rank, torsion: r.invariant_factors }
    }
}

impl fmt::Display for ModuleEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("R".to_string()),
            k => parts.push(format!("R^{k}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("⊕"))
        }
    }
}

/// Square array of grade modules; rows are sources, columns targets, in vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionMatrix {
    pub order: Vec<String>,
    pub entries: Vec<Vec<ModuleEntry>>,
}

impl DimensionMatrix {
    pub fn from_fn(order: Vec<String>, mut f: impl FnMut(usize, usize) -> ModuleEntry) -> Self {
        let n = order.len();
        let entries = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        DimensionMatrix { order, entries }
    }

    /// Grade dimensions of an algebra whose objects are the matrix order.
    pub fn of_algebra(alg: &GradedAlgebra) -> Self {
        Self::from_fn(alg.objects().to_vec(), |i, j| ModuleEntry::free(alg.grade_dim((i, j))))
    }

    pub fn size(&self) -> usize {
        self.order.len()
    }

    pub fn ranks(&self) -> Vec<Vec<usize>> {
        self.entries.iter().map(|r| r.iter().map(|e| e.rank).collect()).collect()
    }

    pub fn index(&self, v: &str) -> Option<usize> {
        self.order.iter().position(|o| o == v)
    }

    /// Entry for the grade `source → target`, by vertex label.
    pub fn get(&self, source: &str, target: &str) -> Option<&ModuleEntry> {
        Some(&self.entries[self.index(source)?][self.index(target)?])
    }

    pub fn rank(&self, source: &str, target: &str) -> usize {
        self.get(source, target).map_or(0, |e| e.rank)
    }

    pub fn is_free(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.torsion.is_empty())
    }

    /// Rows and columns restricted to `vertices`, kept in matrix order.
    pub fn restrict(&self, vertices: &[&str]) -> Result<DimensionMatrix, DihomologyError> {
        for v in vertices {
            if self.index(v).is_none() {
                return Err(DihomologyError::UnknownVertex(v.to_string()));
            }
        }
        let keep: Vec<usize> = (0..self.size()).filter(|&i| vertices.contains(&self.order[i].as_str())).collect();
        Ok(DimensionMatrix {
            order: keep.iter().map(|&i| self.order[i].clone()).collect(),
            entries: keep.iter().map(|&i| keep.iter().map(|&j| self.entries[i][j].clone()).collect()).collect(),
        })
    }

    /// Same matrix with vertices listed in `order`.
    pub fn reordered(&self, order: &[String]) -> Result<DimensionMatrix, DihomologyError> {
        let idx = order
            .iter()
            .map(|v| self.index(v).ok_or_else(|| DihomologyError::UnknownVertex(v.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DimensionMatrix::from_fn(order.to_vec(), |i, j| self.entries[idx[i]][idx[j]].clone()))
    }

    /// Block sum; vertices of `other` must not occur in `self`.
    pub fn block_sum(&self, other: &DimensionMatrix) -> DimensionMatrix {
        let n = self.size();
        let order = self.order.iter().chain(&other.order).cloned().collect();
        DimensionMatrix::from_fn(order, |i, j| match (i < n, j < n) {
            (true, true) => self.entries[i][j].clone(),
            (false, false) => other.entries[i - n][j - n].clone(),
            _ => ModuleEntry::default(),
        })
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Vec<Value>> = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| {
                        let torsion: Vec<Value> = e
                            .torsion
                            .iter()
                            .map(|t| match u64::try_from(t) {
                                Ok(x) => json!(x),
                                Err(_) => json!(t.to_string()),
                            })
                            .collect();
                        json!({"rank": e.rank, "torsion": torsion})
                    })
                    .collect()
            })
            .collect();
        json!({"order": self.order, "entries": entries})
    }

    /// Text grid with a header row of vertex labels and a label column.
    pub fn to_pretty(&self) -> String {
        let cells: Vec<Vec<String>> =
            self.entries.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        let width = |s: &str| s.chars().count();
        let label_w = self.order.iter().map(|v| width(v)).max().unwrap_or(0);
        let col_w: Vec<usize> = (0..self.size())
            .map(|j| cells.iter().map(|r| width(&r[j])).chain([width(&self.order[j])]).max().unwrap_or(1))
            .collect();
        let pad = |s: &str, w: usize| format!("{}{}", " ".repeat(w - width(s)), s);
        let mut out = String::new();
        out.push_str(&" ".repeat(label_w));
        out.push_str(" |");
        for (j, v) in self.order.iter().enumerate() {
            out.push(' ');
            out.push_str(&pad(v, col_w[j]));
        }
        out.push('\n');
        for (i, row) in cells.iter().enumerate() {
            out.push_str(&pad(&self.order[i], label_w));
            out.push_str(" |");
            for (j, c) in row.iter().enumerate() {
                out.push(' ');
                out.push_str(&pad(c, col_w[j]));
            }
            out.push('\n');
        }
        out
    }
}

/// `HA_1` as the path algebra modulo grade-wise relation subspaces.
#[derive(Clone, Debug)]
pub struct HomologyPresentation {
    mode: QuotientMode,
    base: PathAlgebra,
    relations: GradedSubspace,
    reps: BTreeMap<Grade, Vec<usize>>,
    modules: BTreeMap<Grade, ModuleEntry>,
    quotient: Option<QuotientAlgebra>,
}

/// Relation span for `mode` inside the path algebra of `c`.
pub fn relation_subspace(
    c: &PrecubicalSet,
    base: &PathAlgebra,
    mode: QuotientMode,
) -> Result<GradedSubspace, DihomologyError> {
    let alg = base.algebra();
    let cells = c.squares().iter().map(|a| cell_relation(c, base, a)).collect::<Result<Vec<_>, _>>()?;
    Ok(match mode {
        QuotientMode::Local => GradedSubspace::span(alg, &cells),
        QuotientMode::Ideal => two_sided_ideal(alg, &cells)?,
        QuotientMode::Image => {
            let two = two_path_algebra(c, Some(base.max_len() / 2))?;
            let (d0, d1) = boundary_maps(c, &two, base)?;
            let diff = d0.difference(&d1)?;
            GradedSubspace::span(alg, diff.images())
        }
    })
}

/// Computes `HA_1(C)` under `mode`, with paths capped at `max_len` edges.
pub fn ha1(
    c: &PrecubicalSet,
    mode: QuotientMode,
    max_len: Option<usize>,
) -> Result<HomologyPresentation, DihomologyError> {
    let base = path_algebra(c, max_len)?;
    let relations = relation_subspace(c, &base, mode)?;
    HomologyPresentation::new(mode, base, relations)
}

impl HomologyPresentation {
    pub fn new(mode: QuotientMode, base: PathAlgebra, relations: GradedSubspace) -> Result<Self, DihomologyError> {
        let alg = base.algebra().clone();
        let grades: Vec<(Grade, Vec<usize>)> = alg.grades().map(|(g, w)| (g, w.to_vec())).collect();
        let per_grade: Vec<(Grade, Vec<usize>, ModuleEntry)> = grades
            .par_iter()
            .map(|(g, words)| {
                let (reps, module) = match relations.grade(*g) {
                    Some(s) => (
                        s.non_pivots().into_iter().map(|k| words[k]).collect(),
                        relations.quotient_structure(*g, words.len()).into(),
                    ),
                    None => (words.clone(), ModuleEntry::free(words.len())),
                };
                (*g, reps, module)
            })
            .collect();
        let mut reps = BTreeMap::new();
        let mut modules = BTreeMap::new();
        for (g, r, m) in per_grade {
            reps.insert(g, r);
            modules.insert(g, m);
        }
        let quotient = match mode {
            QuotientMode::Ideal => Some(quotient(alg, relations.clone())?),
            _ => None,
        };
        Ok(HomologyPresentation { mode, base, relations, reps, modules, quotient })
    }

    pub fn mode(&self) -> QuotientMode {
        self.mode
    }

    pub fn base(&self) -> &PathAlgebra {
        &self.base
    }

    pub fn relations(&self) -> &GradedSubspace {
        &self.relations
    }

    /// Path words representing a basis of each grade's quotient.
    pub fn representatives(&self, g: Grade) -> &[usize] {
        self.reps.get(&g).map_or(&[], Vec::as_slice)
    }

    pub fn module(&self, g: Grade) -> ModuleEntry {
        self.modules.get(&g).cloned().unwrap_or_default()
    }

    pub fn max_len(&self) -> usize {
        self.base.max_len()
    }

    /// True when longer paths were cut off, so the result is only the length-filtered part.
    pub fn is_length_filtered(&self) -> bool {
        self.base.is_truncated()
    }

    /// Quotient algebra; present in ideal mode only.
    pub fn quotient_algebra(&self) -> Option<&QuotientAlgebra> {
        self.quotient.as_ref()
    }

    pub fn dimension_matrix(&self) -> DimensionMatrix {
        let order = self.base.algebra().objects().to_vec();
        DimensionMatrix::from_fn(order, |i, j| self.module((i, j)))
    }

    /// Dimension matrix on grades with both endpoints in `vertices`.
    pub fn restricted(&self, vertices: &[&str]) -> Result<DimensionMatrix, DihomologyError> {
        self.dimension_matrix().restrict(vertices)
    }

    fn path_element(&self, p: &PathWord) -> Result<AlgebraElement, DihomologyError> {
        self.base.word_of(p).map(AlgebraElement::basis).ok_or_else(|| DihomologyError::UnknownPath(p.name()))
    }

    /// Whether `p - q` lies in the relation span.
    pub fn class_equal(&self, p: &PathWord, q: &PathWord) -> Result<bool, DihomologyError> {
        let (x, y) = (self.path_element(p)?, self.path_element(q)?);
        self.elements_equal(&x, &y).ok_or_else(|| DihomologyError::GradeMismatch(p.name(), q.name()))
    }

    /// Class equality of homogeneous elements of one grade; `None` on a grade mismatch.
    pub fn elements_equal(&self, x: &AlgebraElement, y: &AlgebraElement) -> Option<bool> {
        let alg = self.base.algebra();
        let gx = alg.homogeneous_grade(x).ok()?;
        let gy = alg.homogeneous_grade(y).ok()?;
        if gx.is_some() && gy.is_some() && gx != gy {
            return None;
        }
        Some(self.relations.contains(alg, &(x - y)))
    }

    /// Normal form of the class of `x`, written in representative path words.
    pub fn normal_form(&self, x: &AlgebraElement) -> AlgebraElement {
        let alg = self.base.algebra();
        let mut out = AlgebraElement::zero();
        for (g, part) in alg.split_by_grade(x) {
            let local = alg.to_local(&part);
            let reduced = match self.relations.grade(g) {
                Some(s) => s.reduce(&local),
                None => local,
            };
            out = &out + &alg.from_local(g, &reduced);
        }
        out
    }

    /// Product of two classes, as a normal form in the path algebra.
    pub fn multiply_classes(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, DihomologyError> {
        if self.quotient.is_none() {
            return Err(DihomologyError::NotAnIdeal(self.mode));
        }
        let p = self.base.algebra().multiply(x, y)?;
        Ok(self.normal_form(&p))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "mode": self.mode.to_string(),
            "max_len": self.max_len(),
            "length_filtered": self.is_length_filtered(),
            "matrix": self.dimension_matrix().to_json(),
        })
    }
}

/// Path-count matrix of a complex.
pub fn path_dimension_matrix(c: &PrecubicalSet, max_len: Option<usize>) -> Result<DimensionMatrix, DihomologyError> {
    Ok(DimensionMatrix::of_algebra(path_algebra(c, max_len)?.algebra()))
}

/// `HA_1` matrices in all three modes.
pub fn compare_modes(
    c: &PrecubicalSet,
    max_len: Option<usize>,
) -> Result<BTreeMap<QuotientMode, DimensionMatrix>, DihomologyError> {
    QuotientMode::ALL.par_iter().map(|&m| Ok((m, ha1(c, m, max_len)?.dimension_matrix()))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precubical::{empty_square, filled_square, loop_graph};

    fn pw(start: &str, edges: &[&str]) -> PathWord {
        PathWord { start: start.into(), edges: edges.iter().map(|s| s.to_string()).collect() }
    }

    #[test]
    fn entry_rendering() {
        assert_eq!(ModuleEntry::free(0).to_string(), "0");
        assert_eq!(ModuleEntry::free(1).to_string(), "R");
        assert_eq!(ModuleEntry::free(6).to_string(), "R^6");
        let t = ModuleEntry { rank: 2, torsion: vec![BigUint::from(3u8)] };
        assert_eq!(t.to_string(), "R^2⊕Z/3");
    }

    #[test]
    fn filled_square_classes() {
        let h = ha1(&filled_square(), QuotientMode::Ideal, None).unwrap();
        assert!(h.class_equal(&pw("4", &["a", "c"]), &pw("4", &["b", "d"])).unwrap());
        assert!(h.class_equal(&pw("4", &["a"]), &pw("4", &["b"])).is_err());
        let e = ha1(&empty_square(), QuotientMode::Ideal, None).unwrap();
        assert!(!e.class_equal(&pw("4", &["a", "c"]), &pw("4", &["b", "d"])).unwrap());
    }

    #[test]
    fn non_ideal_modes_refuse_products() {
        let h = ha1(&filled_square(), QuotientMode::Local, None).unwrap();
        let x = AlgebraElement::basis(0);
        assert!(matches!(h.multiply_classes(&x, &x), Err(DihomologyError::NotAnIdeal(_))));
    }

    #[test]
    fn loop_classes_add_exponents() {
        let h = ha1(&loop_graph(), QuotientMode::Ideal, Some(6)).unwrap();
        assert!(h.is_length_filtered());
        let t = |k: usize| h.base().element("u", &vec!["t"; k]).unwrap();
        assert_eq!(h.multiply_classes(&t(2), &t(4)).unwrap(), t(6));
        assert_eq!(h.dimension_matrix().rank("u", "u"), 7);
    }

    #[test]
    fn json_shape() {
        let m = path_dimension_matrix(&empty_square(), None).unwrap();
        let v = m.to_json();
        assert_eq!(v["order"], json!(["1", "2", "3", "4"]));
        assert_eq!(v["entries"][3][0], json!({"rank": 2, "torsion": []}));
        assert!(m.to_pretty().lines().count() == 5);
    }

    #[test]
    fn block_sum_and_restrict() {
        let a = path_dimension_matrix(&empty_square(), None).unwrap();
        let b = DimensionMatrix::from_fn(vec!["x".into()], |_, _| ModuleEntry::free(1));
        let s = a.block_sum(&b);
        assert_eq!(s.size(), 5);
        assert_eq!(s.rank("x", "1"), 0);
        assert_eq!(s.restrict(&["4", "1"]).unwrap().ranks(), vec![vec![1, 0], vec![2, 1]]);
    }
}
