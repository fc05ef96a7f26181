//! Trace data of a precubical set as truncated simplicial algebras.

use std::sync::Arc;

use super::{SimplicialError, TruncatedSimplicialAlgebra};
use crate::precubical::PrecubicalSet;
use crate::tracealg::{
    boundary_map, boundary_maps, edge_inclusion, mixed_sequence_algebra, path_algebra, two_path_algebra, PathAlgebra,
    SequenceAlgebra,
};

/// Paths on level 0 and mixed edge/2-cell sequences on level 1, with `d_0`, `d_1`
/// replacing each 2-cell by one of its boundary paths and `s_0` including paths.
#[derive(Clone, Debug)]
pub struct TraceComplex {
    pub simplicial: TruncatedSimplicialAlgebra,
    pub paths: PathAlgebra,
    pub mixed: SequenceAlgebra,
}

pub fn trace_complex(c: &PrecubicalSet, max_len: Option<usize>) -> Result<TraceComplex, SimplicialError> {
    let paths = path_algebra(c, max_len)?;
    let mixed = mixed_sequence_algebra(c, paths.max_len())?;
    let d0 = boundary_map(c, &mixed, &paths, 0)?;
    let d1 = boundary_map(c, &mixed, &paths, 1)?;
    let s0 = edge_inclusion(c, &paths, &mixed)?;
    let simplicial = TruncatedSimplicialAlgebra::new(
        vec![paths.algebra().clone(), mixed.algebra().clone()],
        vec![vec![], vec![d0, d1]],
        vec![vec![s0]],
    )?;
    Ok(TraceComplex { simplicial, paths, mixed })
}

/// Semi-simplicial pair: paths on level 0, chained 2-cell sequences on level 1, faces
/// `δ_0`, `δ_1`.
pub fn trace_pair(c: &PrecubicalSet, max_len: Option<usize>) -> Result<TruncatedSimplicialAlgebra, SimplicialError> {
    let paths = path_algebra(c, max_len)?;
    let two = two_path_algebra(c, Some(paths.max_len() / 2))?;
    let (d0, d1) = boundary_maps(c, &two, &paths)?;
    let levels: Vec<Arc<_>> = vec![paths.algebra().clone(), two.algebra().clone()];
    TruncatedSimplicialAlgebra::new(levels, vec![vec![], vec![d0, d1]], vec![])
}

#[cfg(test)]
mod tests {
    use super::super::{check_simplicial, moore_normalize, properness_check};
    use super::*;
    use crate::dihomology::{ha1, QuotientMode};
    use crate::precubical::{empty_square, filled_square, two_holes_left};

    #[test]
    fn moore_h0_is_ideal_quotient() {
        for c in [filled_square(), empty_square(), two_holes_left()] {
            let t = trace_complex(&c, None).unwrap();
            assert!(check_simplicial(&t.simplicial).is_empty());
            let m = moore_normalize(&t.simplicial).unwrap();
            let h = ha1(&c, QuotientMode::Ideal, None).unwrap().dimension_matrix();
            assert_eq!(m.homology_matrix(0, &h.order), h);
            assert!(properness_check(&t.simplicial, &m, 0).holds);
        }
    }

    #[test]
    fn pair_has_no_violations() {
        let s = trace_pair(&filled_square(), None).unwrap();
        assert!(check_simplicial(&s).is_empty());
        assert!(!s.has_degeneracies());
    }
}
