//! Graded submodules and two-sided ideal closure.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::algebra::{Grade, GradedAlgebra, Grading};
use super::element::AlgebraElement;
use super::linalg::SubspaceBasis;
use super::scalar::{is_integral, primitive, to_integers, SparseVec};
use super::snf::{smith_normal_form, IntMatrix, SnfReport};
use super::AlgebraError;

/// A submodule of a graded algebra, stored grade by grade in local coordinates.
///
/// Besides the echelon basis, each grade keeps the integer spanning vectors it was built
/// from so that the quotient can be described over `Z`, torsion included.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedSubspace {
    spaces: BTreeMap<Grade, SubspaceBasis>,
    spanning: BTreeMap<Grade, BTreeSet<SparseVec>>,
}

impl GradedSubspace {
    pub fn zero() -> Self {
        GradedSubspace::default()
    }

    /// Span of a list of elements; each element is split into homogeneous components.
    pub fn span(alg: &GradedAlgebra, elements: &[AlgebraElement]) -> Self {
        let mut s = GradedSubspace::zero();
        for e in elements {
            for (_, part) in alg.split_by_grade(e) {
                s.insert(alg, &part);
            }
        }
        s
    }

    /// Adds a homogeneous element. Returns `true` if the rank of its grade grew.
    pub fn insert(&mut self, alg: &GradedAlgebra, x: &AlgebraElement) -> bool {
        let Ok(Some(g)) = alg.homogeneous_grade(x) else {
            return false;
        };
        let local = alg.to_local(x);
        self.insert_local(g, alg.grade_dim(g), local)
    }

    pub(crate) fn insert_local(&mut self, g: Grade, dim: usize, local: SparseVec) -> bool {
        if local.is_empty() {
            return false;
        }
        let v = if is_integral(&local) { local } else { primitive(&local) };
        self.spanning.entry(g).or_default().insert(v.clone());
        self.spaces.entry(g).or_insert_with(|| SubspaceBasis::new(dim)).insert(v)
    }

    pub fn grade(&self, g: Grade) -> Option<&SubspaceBasis> {
        self.spaces.get(&g)
    }

    pub fn rank(&self, g: Grade) -> usize {
        self.spaces.get(&g).map_or(0, SubspaceBasis::rank)
    }

    pub fn total_rank(&self) -> usize {
        self.spaces.values().map(SubspaceBasis::rank).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_rank() == 0
    }

    pub fn grades(&self) -> impl Iterator<Item = (Grade, &SubspaceBasis)> {
        self.spaces.iter().filter(|(_, s)| !s.is_zero()).map(|(g, s)| (*g, s))
    }

    pub fn contains(&self, alg: &GradedAlgebra, x: &AlgebraElement) -> bool {
        alg.split_by_grade(x).into_iter().all(|(g, part)| {
            let local = alg.to_local(&part);
            self.spaces.get(&g).is_some_and(|s| s.contains(&local))
        })
    }

    /// Elements of the echelon basis, as algebra elements.
    pub fn basis_elements(&self, alg: &GradedAlgebra) -> Vec<AlgebraElement> {
        self.spaces.iter().flat_map(|(g, s)| s.rows().iter().map(move |r| alg.from_local(*g, r))).collect()
    }

    pub fn is_subspace_of(&self, other: &GradedSubspace) -> bool {
        self.spaces.iter().all(|(g, s)| match other.spaces.get(g) {
            Some(o) => s.is_subspace_of(o),
            None => s.is_zero(),
        })
    }

    /// Integer structure of `A(g) / (this ∩ lattice spanned by the generators)`.
    ///
    /// The free rank is `dim - rank`; invariant factors greater than one are torsion.
    pub fn quotient_structure(&self, g: Grade, dim: usize) -> SnfReport {
        let cols: Vec<_> = self.spanning.get(&g).map(|vs| vs.iter().map(to_integers).collect()).unwrap_or_default();
        let snf = smith_normal_form(&IntMatrix::from_columns(dim, &cols));
        SnfReport { rank: dim - snf.rank, invariant_factors: snf.invariant_factors }
    }

    /// Whether left and right multiplication by every basis word preserves the subspace.
    /// Products beyond a truncation are skipped.
    pub fn is_two_sided(&self, alg: &GradedAlgebra) -> bool {
        missing_products(alg, self).is_empty()
    }
}

fn multipliers(alg: &GradedAlgebra, g: Grade) -> (Vec<usize>, Vec<usize>) {
    match alg.grading() {
        Grading::Composable => {
            let left = (0..alg.dim()).filter(|&w| alg.word(w).target == g.0).collect();
            let right = (0..alg.dim()).filter(|&w| alg.word(w).source == g.1).collect();
            (left, right)
        }
        Grading::Free => ((0..alg.dim()).collect(), (0..alg.dim()).collect()),
    }
}

/// One-sided products of basis rows that fall outside the subspace.
fn missing_products(alg: &GradedAlgebra, s: &GradedSubspace) -> Vec<AlgebraElement> {
    let rows: Vec<(Grade, AlgebraElement)> =
        s.spaces.iter().flat_map(|(g, b)| b.rows().iter().map(move |r| (*g, alg.from_local(*g, r)))).collect();
    rows.par_iter()
        .flat_map_iter(|(g, x)| {
            let (left, right) = multipliers(alg, *g);
            let mut out = Vec::new();
            for u in left {
                if let Ok(p) = alg.multiply(&AlgebraElement::basis(u), x) {
                    if !p.is_zero() && !s.contains(alg, &p) {
                        out.push(p);
                    }
                }
            }
            for v in right {
                if let Ok(p) = alg.multiply(x, &AlgebraElement::basis(v)) {
                    if !p.is_zero() && !s.contains(alg, &p) {
                        out.push(p);
                    }
                }
            }
            out
        })
        .collect()
}

/// Two-sided ideal generated by homogeneous elements.
///
/// Seeds the span with every `u·g`, `g·v`, `u·g·v` and `g` itself, then saturates until
/// one-sided products by basis words add nothing new. Products that overflow a truncation
/// are left out, which gives the length-filtered ideal on truncated algebras.
pub fn two_sided_ideal(alg: &GradedAlgebra, gens: &[AlgebraElement]) -> Result<GradedSubspace, AlgebraError> {
    let mut grades = Vec::with_capacity(gens.len());
    for g in gens {
        grades.push(alg.homogeneous_grade(g)?);
    }
    let seeds: Vec<AlgebraElement> = gens
        .par_iter()
        .zip(&grades)
        .filter_map(|(g, gr)| gr.map(|gr| (g, gr)))
        .flat_map_iter(|(g, gr)| {
            let (left, right) = multipliers(alg, gr);
            let mut out = vec![g.clone()];
            let mut lefts = vec![g.clone()];
            for &u in &left {
                if let Ok(p) = alg.multiply(&AlgebraElement::basis(u), g) {
                    if !p.is_zero() {
                        lefts.push(p.clone());
                        out.push(p);
                    }
                }
            }
            for l in &lefts {
                for &v in &right {
                    if let Ok(p) = alg.multiply(l, &AlgebraElement::basis(v)) {
                        if !p.is_zero() {
                            out.push(p);
                        }
                    }
                }
            }
            out
        })
        .collect();
    let mut ideal = GradedSubspace::zero();
    for s in &seeds {
        ideal.insert(alg, s);
    }
    loop {
        let missing = missing_products(alg, &ideal);
        if missing.is_empty() {
            return Ok(ideal);
        }
        for m in missing {
            for (_, part) in alg.split_by_grade(&m) {
                ideal.insert(alg, &part);
            }
        }
    }
}
