//! Coproducts of simplicial algebras, the fold map into a common ambient complex, and the
//! exactness checks for disjoint unions.

use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use super::{SimplicialError, TruncatedSimplicialAlgebra};
use crate::dihomology::{ha1, DimensionMatrix, QuotientMode};
use crate::exactalg::linalg::{kernel_of_columns, rank_of};
use crate::exactalg::scalar::axpy;
use crate::exactalg::{coproduct, Coproduct, GradedAlgebra, Morphism, SparseVec};
use crate::precubical::PrecubicalSet;
use crate::tracealg::path_algebra;

/// Levelwise coproduct with factorwise structure maps.
#[derive(Clone, Debug)]
pub struct SimplicialCoproduct {
    pub simplicial: TruncatedSimplicialAlgebra,
    pub levels: Vec<Coproduct>,
}

pub fn simplicial_coproduct(
    a: &TruncatedSimplicialAlgebra,
    b: &TruncatedSimplicialAlgebra,
    word_cap: usize,
) -> Result<SimplicialCoproduct, SimplicialError> {
    if a.top() != b.top() || a.has_degeneracies() != b.has_degeneracies() {
        return Err(SimplicialError::Shape("coproduct factors must have the same shape".into()));
    }
    let levels = (0..=a.top())
        .map(|n| coproduct(a.level(n).clone(), b.level(n).clone(), word_cap))
        .collect::<Result<Vec<_>, _>>()?;
    let mut faces = vec![Vec::new()];
    for n in 1..=a.top() {
        faces.push(
            (0..=n)
                .map(|i| levels[n].factorwise(a.face(n, i), b.face(n, i), &levels[n - 1]))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    let mut degeneracies = Vec::new();
    if a.has_degeneracies() {
        for n in 0..a.top() {
            degeneracies.push(
                (0..=n)
                    .map(|i| {
                        levels[n].factorwise(a.degeneracy(n, i).unwrap(), b.degeneracy(n, i).unwrap(), &levels[n + 1])
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
    }
    let simplicial =
        TruncatedSimplicialAlgebra::new(levels.iter().map(|c| c.algebra().clone()).collect(), faces, degeneracies)?;
    Ok(SimplicialCoproduct { simplicial, levels })
}

/// `x_1 ⊗ … ⊗ x_n ↦ x_1 × … × x_n` into `target`, with factor words matched by name.
pub fn fold_map(cop: &Coproduct, target: &Arc<GradedAlgebra>) -> Result<Morphism, SimplicialError> {
    let incl = |side: &Arc<GradedAlgebra>| {
        Morphism::inclusion_by_name(side.clone(), target.clone())
            .map_err(|e| SimplicialError::NotSubcomplex(format!("factor is not contained in the ambient algebra: {e}")))
    };
    Ok(cop.fold(&incl(cop.left())?, &incl(cop.right())?)?)
}

/// The fold map on every level.
pub fn fold_map_h(
    cop: &SimplicialCoproduct,
    target: &TruncatedSimplicialAlgebra,
) -> Result<Vec<Morphism>, SimplicialError> {
    if cop.levels.len() != target.levels().len() {
        return Err(SimplicialError::Shape("fold target has a different truncation".into()));
    }
    cop.levels.iter().zip(target.levels()).map(|(c, t)| fold_map(c, t)).collect()
}

/// A linear map given by its columns.
#[derive(Clone, Debug)]
pub struct LinearMap {
    pub name: String,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub columns: Vec<SparseVec>,
}

impl LinearMap {
    pub fn from_morphism(name: &str, m: &Morphism) -> Self {
        LinearMap {
            name: name.to_string(),
            domain_dim: m.domain().dim(),
            codomain_dim: m.codomain().dim(),
            columns: m.images().iter().map(|x| x.as_sparse().clone()).collect(),
        }
    }

    /// Inclusion of the span of `basis` (assumed independent) into its ambient space.
    pub fn inclusion(name: &str, ambient: usize, basis: Vec<SparseVec>) -> Self {
        LinearMap { name: name.to_string(), domain_dim: basis.len(), codomain_dim: ambient, columns: basis }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&k, c) in v {
            axpy(&mut out, c, &self.columns[k]);
        }
        out
    }

    pub fn rank(&self) -> usize {
        rank_of(self.codomain_dim, &self.columns)
    }
}

/// Exactness at one position of `0 → V_0 → … → V_k → 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositionReport {
    pub position: usize,
    pub dim: usize,
    pub image_rank: usize,
    pub kernel_dim: usize,
    pub image_in_kernel: bool,
    pub exact: bool,
}

/// Checks `im(incoming) = ker(outgoing)` at every position of the sequence
/// `0 → V_0 → … → V_k → 0` given by `maps`, with exact ranks over the rationals.
pub fn exactness_check(maps: &[LinearMap]) -> Result<Vec<PositionReport>, SimplicialError> {
    for w in maps.windows(2) {
        if w[0].codomain_dim != w[1].domain_dim {
            return Err(SimplicialError::Shape(format!("{} and {} do not compose", w[0].name, w[1].name)));
        }
    }
    let mut dims: Vec<usize> = maps.iter().map(|m| m.domain_dim).collect();
    if let Some(last) = maps.last() {
        dims.push(last.codomain_dim);
    }
    let mut out = Vec::with_capacity(dims.len());
    for (p, &dim) in dims.iter().enumerate() {
        let incoming = p.checked_sub(1).map(|k| &maps[k]);
        let outgoing = maps.get(p);
        let image_rank = incoming.map_or(0, LinearMap::rank);
        let kernel_dim = dim - outgoing.map_or(0, LinearMap::rank);
        let image_in_kernel = match (incoming, outgoing) {
            (Some(f), Some(g)) => f.columns.iter().all(|c| g.apply(c).is_empty()),
            _ => true,
        };
        out.push(PositionReport {
            position: p,
            dim,
            image_rank,
            kernel_dim,
            image_in_kernel,
            exact: image_in_kernel && image_rank == kernel_dim,
        });
    }
    Ok(out)
}

/// `HA_1` of two disjoint complexes versus their union, and the degree-one sequence
/// `0 → Ker h → R_1[C1] ∐ R_1[C2] → R_1[C1 ⊔ C2] → 0`.
#[derive(Clone, Debug)]
pub struct LesReport {
    pub left: DimensionMatrix,
    pub right: DimensionMatrix,
    pub union: DimensionMatrix,
    pub block_sum_matches: bool,
    pub word_cap: usize,
    pub coproduct_dim: usize,
    pub kernel_dim: usize,
    pub positions: Vec<PositionReport>,
}

impl LesReport {
    pub fn exact(&self) -> bool {
        self.positions.iter().all(|p| p.exact)
    }

    pub fn holds(&self) -> bool {
        self.block_sum_matches && self.exact()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ha1_left": self.left.to_json(),
            "ha1_right": self.right.to_json(),
            "ha1_union": self.union.to_json(),
            "block_sum_matches": self.block_sum_matches,
            "word_cap": self.word_cap,
            "coproduct_dim": self.coproduct_dim,
            "kernel_dim": self.kernel_dim,
            "positions": self.positions,
            "exact": self.exact(),
        })
    }
}

pub fn disjoint_union_les_report(
    c1: &PrecubicalSet,
    c2: &PrecubicalSet,
    mode: QuotientMode,
    max_len: Option<usize>,
    word_cap: usize,
) -> Result<LesReport, SimplicialError> {
    let union = c1.disjoint_union(c2)?;
    let left = ha1(c1, mode, max_len)?.dimension_matrix();
    let right = ha1(c2, mode, max_len)?.dimension_matrix();
    let whole = ha1(&union, mode, max_len)?.dimension_matrix();
    let combined = left.block_sum(&right);
    let block_sum_matches = whole.reordered(&combined.order)? == combined;

    let p1 = path_algebra(c1, max_len)?;
    let p2 = path_algebra(c2, max_len)?;
    let pu = path_algebra(&union, max_len)?;
    let cop = coproduct(p1.algebra().clone(), p2.algebra().clone(), word_cap)?;
    let h = fold_map(&cop, pu.algebra())?;
    let cols: Vec<SparseVec> = h.images().iter().map(|x| x.as_sparse().clone()).collect();
    let ker = kernel_of_columns(&cols);
    let kernel_dim = ker.len();
    let maps = [LinearMap::inclusion("Ker h → coproduct", cop.algebra().dim(), ker), LinearMap::from_morphism("h", &h)];
    let positions = exactness_check(&maps)?;
    Ok(LesReport {
        left,
        right,
        union: whole,
        block_sum_matches,
        word_cap,
        coproduct_dim: cop.algebra().dim(),
        kernel_dim,
        positions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::int;
    use crate::precubical::{empty_square, filled_square};

    #[test]
    fn identity_sequence_is_exact() {
        let id = LinearMap {
            name: "id".into(),
            domain_dim: 2,
            codomain_dim: 2,
            columns: vec![[(0, int(1))].into(), [(1, int(1))].into()],
        };
        assert!(exactness_check(&[id]).unwrap().iter().all(|p| p.exact));
    }

    #[test]
    fn broken_map_is_caught() {
        let f = LinearMap { name: "f".into(), domain_dim: 1, codomain_dim: 1, columns: vec![SparseVec::new()] };
        let r = exactness_check(&[f]).unwrap();
        assert!(!r[0].exact);
        assert!(!r[1].exact);
    }

    #[test]
    fn squares_report() {
        let r =
            disjoint_union_les_report(&filled_square(), &empty_square().prefixed("e"), QuotientMode::Ideal, None, 2)
                .unwrap();
        assert!(r.holds(), "{:?}", r.positions);
        assert_eq!(r.union.size(), 8);
    }
}
