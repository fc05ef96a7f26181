//! Directed homology algebras of finite precubical sets, computed exactly.
//!
//! The crate builds the reachability, path and 2-cell-sequence algebras of a precubical
//! set, quotients the path algebra by 2-cell boundary relations to obtain `HA_1`, and
//! provides the surrounding algebra toolkit (ideals, quotients, kernels, coproducts,
//! Moore normalization, Smith normal form).

pub mod dihomology;
pub mod exactalg;
pub mod precubical;
pub mod simplicial;
pub mod tracealg;
