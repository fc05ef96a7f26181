//! Exact arithmetic for bigraded non-unital algebras: elements, products, ideals,
//! quotients, kernels and cokernels, coproducts, convolution algebras, and integer
//! linear algebra.

pub mod algebra;
pub mod category;
pub mod construct;
pub mod element;
pub mod ideal;
pub mod linalg;
pub mod morphism;
pub mod quotient;
pub mod scalar;
pub mod snf;

pub use algebra::{AlgebraBuilder, AssociativityReport, BasisProduct, BasisWord, Grade, GradedAlgebra, Grading};
pub use category::{convolution_algebra, linearize_functor, FiniteCategory, Functor};
pub use construct::{coproduct, direct_product, Coproduct, DirectProduct};
pub use element::AlgebraElement;
pub use ideal::{two_sided_ideal, GradedSubspace};
pub use linalg::SubspaceBasis;
pub use morphism::{cokernel, image, kernel, AlgebraMapCheck, Kernel, Morphism};
pub use quotient::{quotient, QuotientAlgebra};
pub use scalar::{Scalar, SparseVec};
pub use snf::{smith_normal_form, IntLattice, IntMatrix, SnfReport};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("word index {0} is not in the algebra's basis")]
    UnknownWord(usize),
    #[error("unknown basis word `{0}`")]
    UnknownWordName(String),
    #[error("unknown object: {0}")]
    UnknownObject(String),
    #[error("duplicate basis word `{0}`")]
    DuplicateWord(String),
    #[error("duplicate object `{0}`")]
    DuplicateObject(String),
    #[error("product {left} * {right} exceeds the truncation; raise the cap")]
    Truncated { left: String, right: String },
    #[error("element is not homogeneous; split it by grade first")]
    NonHomogeneous,
    #[error("product {left} * {right} leaves the grade (source(left), target(right))")]
    ProductOutOfGrade { left: String, right: String },
    #[error("map mixes grades: {0}")]
    GradeMixing(String),
    #[error("subspace is not a two-sided ideal: {0}")]
    IdealNotClosed(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("not a functor: {0}")]
    NotAFunctor(String),
}
